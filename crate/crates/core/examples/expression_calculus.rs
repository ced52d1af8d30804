//! Parsing, symbolic differentiation, substitution and evaluation of chart expressions.

use conformal_dunkl::chartcalc::{chart_var_names, eval, eval_f64, parse_expr, ExprPool};
use conformal_dunkl::scalar::Exact;

fn main() {
    let names = chart_var_names(2);
    let mut pool = ExprPool::new();
    let f = parse_expr(&mut pool, "x1^3*exp(-x2) + sqrt(1 + x1^2)/x2", &names).unwrap();
    let fx = pool.derivative(f, 0);
    let fxy = pool.derivative(fx, 1);
    println!("f        = {}", pool.display(f, &names));
    println!("d1 f     = {}", pool.display(fx, &names));
    println!("d2 d1 f  = {}", pool.display(fxy, &names));
    println!("d2 d1 f(0.5, 2) = {}", eval_f64(&pool, fxy, &[0.5, 2.0]).unwrap());

    // substitution x ↦ (x2, x1) and a directional derivative
    let (a, b) = (pool.var(1), pool.var(0));
    let swapped = pool.apply(f, &[a, b]);
    let along = pool.directional(swapped, &[Exact::int(1), Exact::int(1)]);
    println!("(1,1)·grad f(x2, x1) at (2, 0.5) = {}", eval_f64(&pool, along, &[2.0, 0.5]).unwrap());

    // rational expressions evaluate exactly
    let g = parse_expr(&mut pool, "(x1^2 - 2)/(x1 + sqrt2) + 1/3", &names).unwrap();
    let exact = eval(&pool, g, &[Exact::sqrt2(), Exact::int(0)]).unwrap();
    println!("g(sqrt2) = {exact}; pool holds {} nodes", pool.len());
}
