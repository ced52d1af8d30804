//! Exact ambient Dunkl operators on polynomials with coefficients in Q(√2).

use conformal_dunkl::dunkl::{
    commutativity_check, dunkl, dunkl_laplacian_direct, dunkl_laplacian_sum, DunklContext, QuotientMethod,
};
use conformal_dunkl::poly::{Monomial, MultiPoly};
use conformal_dunkl::rootsys::{b_embedded, MultiplicityFunction};
use conformal_dunkl::scalar::Exact;

fn main() {
    let n = 2;
    let sys = b_embedded(3, n);
    let k = MultiplicityFunction::per_orbit(&sys, vec![Exact::int(1), Exact::frac(1, 2)]).unwrap();
    let ctx = DunklContext::new(sys, k);
    println!("gamma_k = {}", ctx.gamma());

    // p = X0 X1^2 + Xinf^3 in the variables (X0, X1, X2, Xinf)
    let p = MultiPoly::from_terms(
        n + 2,
        [(Monomial::from_exponents(&[1, 2, 0, 0]), Exact::int(1)), (Monomial::from_exponents(&[0, 0, 0, 3]), Exact::int(1))],
    );
    let xi = [Exact::int(1), Exact::int(0), Exact::int(2), Exact::int(0)];
    let t = dunkl(&ctx, &xi, &p).unwrap();
    println!("T_xi p has {} terms, degree {:?}", t.len(), t.degree());

    let taylor = dunkl_laplacian_sum(&ctx, &p).unwrap();
    let division = dunkl_laplacian_sum(&ctx.clone().with_method(QuotientMethod::Division), &p).unwrap();
    let direct = dunkl_laplacian_direct(&ctx, &p).unwrap();
    println!("Laplacian: Taylor = division {}, sum = direct {}", taylor == division, taylor == direct);

    let eta = [Exact::int(0), Exact::int(1), Exact::int(-1), Exact::int(3)];
    println!("[T_xi, T_eta] p = 0: {}", commutativity_check(&ctx, &xi, &eta, &p).unwrap().is_zero());

    let flipped = ctx.with_opposite_positive();
    println!("independent of the positive system: {}", dunkl_laplacian_sum(&flipped, &p).unwrap() == taylor);
}
