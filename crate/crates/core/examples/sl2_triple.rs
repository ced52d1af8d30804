//! E = ½⟨X,X⟩, F = −½Δ̃_k, H = Euler + (n+2)/2 + γ_k checked exactly on every
//! monomial up to a degree, listing which sign conventions hold.

use conformal_dunkl::dunkl::{sl2_commutators, DunklContext};
use conformal_dunkl::rootsys::{a1, b_embedded, b_euclidean, MultiplicityFunction};
use conformal_dunkl::scalar::Exact;

fn main() {
    for sys in [a1(2), b_euclidean(2, 2), b_embedded(3, 2)] {
        let k = MultiplicityFunction::uniform(&sys, Exact::frac(1, 2));
        let ctx = DunklContext::new(sys.clone(), k);
        let report = sl2_commutators(&ctx, 4).unwrap();
        println!("{} (gamma = {}):", sys.name(), ctx.gamma());
        print!("{report}");
    }
}
