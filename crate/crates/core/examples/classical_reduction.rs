//! With only Euclidean roots the chart formula is the classical Dunkl Laplacian on
//! R^n, and with k = 0 it is the flat Laplacian.

use conformal_dunkl::chartcalc::{chart_var_names, parse_expr, ExprPool};
use conformal_dunkl::conformal::{chart_operator, classical_dunkl_chart, euclidean_roots, ConformalOperator};
use conformal_dunkl::dunkl::DunklContext;
use conformal_dunkl::rootsys::{b_euclidean, MultiplicityFunction};
use conformal_dunkl::scalar::Exact;

fn main() {
    let sys = b_euclidean(2, 2);
    let k = MultiplicityFunction::per_orbit(&sys, vec![Exact::int(1), Exact::int(2)]).unwrap();
    let ctx = DunklContext::new(sys, k);
    let roots = euclidean_roots(&ctx).expect("all roots Euclidean");
    let op = ConformalOperator::critical(ctx, 1);

    let mut pool = ExprPool::new();
    let f = parse_expr(&mut pool, "x1^3*x2 + exp(x2/2)", &chart_var_names(2)).unwrap();
    let chart = chart_operator(&op, &mut pool, f).unwrap();
    for x in [[0.3, 0.8], [1.2, -0.4]] {
        let a = chart.eval(&pool, &x).unwrap();
        let b = classical_dunkl_chart(&mut pool, &roots, f, &x).unwrap();
        println!("x = {x:?}: chart formula {a:.14}, classical {b:.14}");
    }
}
