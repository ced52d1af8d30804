//! Every verification suite on one configuration, with per-check residuals.

use conformal_dunkl::dunkl::DunklContext;
use conformal_dunkl::rootsys::{b_embedded, MultiplicityFunction};
use conformal_dunkl::sampling::rng;
use conformal_dunkl::scalar::Exact;
use conformal_dunkl::verify::{run_suites, SuiteSizes, Tolerances};

fn main() {
    let sys = b_embedded(3, 2);
    let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::uniform(&sys, Exact::frac(1, 2)));
    let sizes = SuiteSizes { degree: 4, polynomials: 40, pairs: 20, equivariance_polynomials: 10, points: 50, ..SuiteSizes::default() };
    let results = run_suites(&ctx, &mut rng(7), &sizes, &Tolerances::default());
    for r in &results {
        println!("{r}");
    }
    println!("{} of {} passed", results.iter().filter(|r| r.passed).count(), results.len());
}
