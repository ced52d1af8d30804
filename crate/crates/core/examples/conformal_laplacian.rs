//! The conformal Dunkl-Laplace operator on the chart by the closed formula and by
//! extending to the ambient space, applying Δ̃_k and restricting to the cone.

use conformal_dunkl::chartcalc::{chart_var_names, parse_expr, ExprPool};
use conformal_dunkl::conformal::{ambient_route, chart_operator, domain_check, ConformalOperator};
use conformal_dunkl::dunkl::DunklContext;
use conformal_dunkl::rootsys::{build_b, MultiplicityFunction};
use conformal_dunkl::scalar::Exact;

fn main() {
    let sys = build_b(2);
    let k = MultiplicityFunction::per_orbit(&sys, vec![Exact::frac(1, 2), Exact::int(1)]).unwrap();
    let op = ConformalOperator::critical(DunklContext::new(sys, k), 1);
    println!("critical weight w = {}", op.weight());

    let mut pool = ExprPool::new();
    let f = parse_expr(&mut pool, "cos(x1) * x2 + 1/(1 + x1^2)", &chart_var_names(2)).unwrap();
    let chart = chart_operator(&op, &mut pool, f).unwrap();
    let ambient = ambient_route(&op, &mut pool, f, None).unwrap();
    println!("ambient expression: {} nodes reachable", pool.reachable(ambient.expr()));

    for x in [[0.35, 0.55], [-0.2, 0.9], [0.0, 0.0], [0.7, 0.7]] {
        match (domain_check(op.ctx(), &x, 1), chart.eval(&pool, &x), ambient.eval(&pool, &x)) {
            (Ok(d), Ok(a), Ok(b)) => {
                println!("x = {x:?}: chart {a:.12}, ambient {b:.12}, min |D| {:.3}, min J {:.3}", d.min_abs_d, d.min_j)
            }
            (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => println!("x = {x:?}: {e}"),
        }
    }
}
