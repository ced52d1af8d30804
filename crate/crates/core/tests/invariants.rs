use conformal_dunkl::ambient::{pair, AmbientVector};
use conformal_dunkl::chartcalc::{chart_var_names, eval_f64, parse_expr, ExprPool};
use conformal_dunkl::conformal::{higher_power, ConformalOperator};
use conformal_dunkl::dunkl::{dunkl_laplacian_direct, dunkl_laplacian_sum, DunklContext};
use conformal_dunkl::rootsys::{a1, build_b, chart_reflection, MultiplicityFunction};
use conformal_dunkl::sampling::{random_poly, rng};
use conformal_dunkl::scalar::Exact;
use proptest::prelude::*;

fn exact() -> impl Strategy<Value = Exact> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6)
        .prop_map(|(a, b, c, d)| Exact::frac(a, b) + Exact::frac(c, d) * Exact::sqrt2())
}

fn vector(n: usize) -> impl Strategy<Value = AmbientVector<Exact>> {
    prop::collection::vec(exact(), n + 2).prop_map(|c| AmbientVector::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse(a in exact()) {
        prop_assume!(!a.is_zero());
        prop_assert!((a.clone() * a.inv().unwrap()).is_one());
    }

    #[test]
    fn form_is_symmetric_and_bilinear(u in vector(2), v in vector(2), w in vector(2), c in exact()) {
        prop_assert_eq!(pair(&u, &v).unwrap(), pair(&v, &u).unwrap());
        let lhs = pair(&u.scale(&c).add(&w), &v).unwrap();
        let rhs = c * pair(&u, &v).unwrap() + pair(&w, &v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflections_are_isometric_involutions(v in vector(2), i in 0usize..18) {
        let sys = build_b(2);
        let r = &sys.roots()[i];
        let image = r.reflect(&v);
        prop_assert_eq!(r.reflect(&image), v.clone());
        prop_assert_eq!(pair(&image, &image).unwrap(), pair(&v, &v).unwrap());
    }

    #[test]
    fn chart_reflection_is_involutive(x in prop::collection::vec(-2.0f64..2.0, 2), i in 0usize..18) {
        let sys = build_b(2);
        let r = &sys.roots()[i];
        if let Ok(y) = chart_reflection(r, &x) {
            if let Ok(z) = chart_reflection(r, &y) {
                let scale = 1.0 + y.iter().map(|c| c.abs()).fold(0.0, f64::max);
                for (a, b) in x.iter().zip(&z) {
                    prop_assert!((a - b).abs() <= 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn cone_points_are_null(x in prop::collection::vec(exact(), 3)) {
        let p = AmbientVector::cone_point(&x);
        prop_assert!(pair(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn laplacians_agree(seed in 0u64..1000, k in exact()) {
        let sys = build_b(1);
        let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::uniform(&sys, k));
        let p = random_poly(&mut rng(seed), 3, 4, 3);
        prop_assert_eq!(dunkl_laplacian_sum(&ctx, &p).unwrap(), dunkl_laplacian_direct(&ctx, &p).unwrap());
    }

    #[test]
    fn derivative_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let names = chart_var_names(2);
        let mut pool = ExprPool::new();
        let f = parse_expr(&mut pool, "sin(x1)*x2 + exp(x1 - x2)", &names).unwrap();
        let g = parse_expr(&mut pool, "x1^3 + cos(x2)", &names).unwrap();
        let s = pool.add(f, g);
        let ds = pool.derivative(s, 0);
        let df = pool.derivative(f, 0);
        let dg = pool.derivative(g, 0);
        let x = [a, b];
        let lhs = eval_f64(&pool, ds, &x).unwrap();
        let rhs = eval_f64(&pool, df, &x).unwrap() + eval_f64(&pool, dg, &x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }
}

#[test]
fn flat_bilaplacian_of_quartic() {
    let sys = a1(2);
    let op = ConformalOperator::critical(DunklContext::new(sys.clone(), MultiplicityFunction::zero(&sys)), 2);
    let mut pool = ExprPool::new();
    let f = parse_expr(&mut pool, "x1^4", &chart_var_names(2)).unwrap();
    let v = higher_power(&op, &mut pool, f, &[0.3, -0.7]).unwrap();
    assert!((v - 24.0).abs() < 1e-9, "{v}");
}
