//! At the critical weight the ambient route ignores how the density is extended
//! off the cone; half a unit away it does not.

use conformal_dunkl::chartcalc::{chart_var_names, parse_expr, ExprPool};
use conformal_dunkl::conformal::{extension_independence_residual, ConformalOperator};
use conformal_dunkl::dunkl::DunklContext;
use conformal_dunkl::rootsys::{b_euclidean, MultiplicityFunction};
use conformal_dunkl::sampling::{regular_points, rng};
use conformal_dunkl::scalar::Exact;

fn main() {
    let sys = b_euclidean(2, 2);
    let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::uniform(&sys, Exact::frac(1, 2)));
    let points = regular_points(&mut rng(1), &ctx, 50, 1.5, 0.1, 2);
    let names = chart_var_names(2);
    let mut pool = ExprPool::new();
    let f = parse_expr(&mut pool, "sin(x1 + 2*x2) + x1^2*x2", &names).unwrap();
    let g = parse_expr(&mut pool, "exp(-x1^2) + x2", &names).unwrap();

    for j in [1, 2] {
        let op = ConformalOperator::critical(ctx.clone(), j);
        let off = op.shifted(&Exact::frac(1, 2));
        let at = extension_independence_residual(&op, &mut pool, f, g, &points).unwrap();
        let away = extension_independence_residual(&off, &mut pool, f, g, &points).unwrap();
        println!("j = {j}: w = {:<5} residual {at:.2e};  w = {:<5} residual {away:.2e}", op.weight(), off.weight());
    }
}
