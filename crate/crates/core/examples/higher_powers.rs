//! Powers j ≥ 2 through the ambient route: the flat limit is Δ^j, and with k ≠ 0
//! the operator still has symbol |ξ|^{2j}.

use conformal_dunkl::chartcalc::{chart_var_names, eval_f64, parse_expr, ExprPool};
use conformal_dunkl::conformal::{higher_power, ConformalOperator};
use conformal_dunkl::dunkl::DunklContext;
use conformal_dunkl::rootsys::{a1, MultiplicityFunction};
use conformal_dunkl::scalar::Exact;

fn main() {
    let sys = a1(2);
    let names = chart_var_names(2);
    let mut pool = ExprPool::new();
    let f = parse_expr(&mut pool, "x1^4", &names).unwrap();
    let flat = ConformalOperator::critical(DunklContext::new(sys.clone(), MultiplicityFunction::zero(&sys)), 2);
    println!("k = 0, j = 2: P(x1^4) = {}", higher_power(&flat, &mut pool, f, &[0.3, 0.2]).unwrap());

    let harmonic = parse_expr(&mut pool, "x1^3 - 3*x1*x2^2", &names).unwrap();
    println!("k = 0, j = 2: P(harmonic cubic) = {}", higher_power(&flat, &mut pool, harmonic, &[0.3, 0.2]).unwrap());

    let k = MultiplicityFunction::uniform(&sys, Exact::frac(1, 3));
    for j in [1, 2, 3] {
        let op = ConformalOperator::critical(DunklContext::new(sys.clone(), k.clone()), j);
        let g = parse_expr(&mut pool, "x1^2 * x2^4 + x2", &names).unwrap();
        let v = higher_power(&op, &mut pool, g, &[0.6, -0.4]).unwrap();
        println!("k = 1/3, j = {j}: w = {}, value {v:.10}", op.weight());
    }
    let lap = {
        let d = pool.derivative(f, 0);
        pool.derivative(d, 0)
    };
    println!("for comparison, d1^2 x1^4 at x1 = 0.3: {}", eval_f64(&pool, lap, &[0.3, 0.2]).unwrap());
}
