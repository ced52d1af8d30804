//! Group equivariance: exactly for the ambient Dunkl Laplacian on polynomials, and
//! numerically for the chart operator acting on densities.

use conformal_dunkl::chartcalc::{chart_var_names, parse_expr, ExprPool};
use conformal_dunkl::conformal::{chart_equivariance_residual, ConformalOperator};
use conformal_dunkl::dunkl::{equivariance_check, DunklContext};
use conformal_dunkl::rootsys::{build_b, generate_group, MultiplicityFunction, DEFAULT_GROUP_CAP};
use conformal_dunkl::sampling::{random_poly, rng};
use conformal_dunkl::scalar::Exact;

fn main() {
    let sys = build_b(1);
    let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::uniform(&sys, Exact::frac(2, 3)));
    let group = generate_group(&sys, DEFAULT_GROUP_CAP).unwrap();
    let p = random_poly(&mut rng(3), 3, 5, 4);
    let exact = group.elements().iter().all(|g| equivariance_check(&ctx, g, &p).unwrap().is_zero());
    println!("Laplacian commutes with all {} elements of G: {exact}", group.order());

    let op = ConformalOperator::critical(ctx.clone(), 1);
    let mut pool = ExprPool::new();
    let f = parse_expr(&mut pool, "sin(x1) + x1^2", &chart_var_names(1)).unwrap();
    for root in sys.positive_roots() {
        let r = chart_equivariance_residual(&op, &mut pool, f, root, &[0.45]).unwrap();
        println!("{} {root}: relative residual {r:.2e}", root.tag());
    }
}
