//! Seeded random inputs: small exact scalars, polynomials, directions,
//! smooth test functions and regular chart points.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chartcalc::{ExprId, ExprPool};
use crate::conformal::domain_check;
use crate::dunkl::DunklContext;
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::{ElemFn, Exact};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn random_rational(rng: &mut SampleRng, max_num: i64, max_den: i64) -> Exact {
    Exact::frac(rng.random_range(-max_num..=max_num), rng.random_range(1..=max_den))
}

/// Nonzero integer vector with entries in `[-range, range]`.
pub fn random_direction(rng: &mut SampleRng, d: usize, range: i64) -> Vec<Exact> {
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.random_range(-range..=range)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(Exact::int).collect();
        }
    }
}

/// Up to `terms` monomials of degree `≤ max_degree` with small rational coefficients.
pub fn random_poly(rng: &mut SampleRng, nvars: usize, max_degree: u32, terms: usize) -> MultiPoly {
    let basis = Monomial::up_to_degree(nvars, max_degree);
    let mut p = MultiPoly::zero(nvars);
    for _ in 0..terms {
        let m = *basis.choose(rng).expect("nonempty basis");
        p.add_term(m, &random_rational(rng, 5, 4));
    }
    p
}

/// Uniform point in `[-radius, radius]ⁿ`.
pub fn random_point(rng: &mut SampleRng, n: usize, radius: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-radius..=radius)).collect()
}

/// Points whose reflection words of length `≤ depth` all keep `|D_α| > margin` and `J_α > margin`.
///
/// Gives up after `100·count` draws and returns what it found.
pub fn regular_points(
    rng: &mut SampleRng,
    ctx: &DunklContext,
    count: usize,
    radius: f64,
    margin: f64,
    depth: u32,
) -> Vec<Vec<f64>> {
    let n = ctx.root_system().n();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count.saturating_mul(100) {
        if out.len() == count {
            break;
        }
        let x = random_point(rng, n, radius);
        if domain_check(ctx, &x, depth).is_ok_and(|r| r.clear_of(margin)) {
            out.push(x);
        }
    }
    out
}

fn small_coef(rng: &mut SampleRng) -> Exact {
    let mut c = random_rational(rng, 4, 4);
    if c.is_zero() {
        c = Exact::int(1);
    }
    c
}

/// A random affine combination `c₀ + Σ cᵢxᵢ` with small rational coefficients.
fn random_affine(pool: &mut ExprPool, rng: &mut SampleRng, n: usize) -> ExprId {
    let mut acc = pool.constant(random_rational(rng, 3, 4));
    for i in 0..n {
        let c = random_rational(rng, 3, 4);
        let x = pool.var(i);
        let t = pool.scale(&c, x);
        acc = pool.add(acc, t);
    }
    acc
}

/// A bounded smooth function on all of `Rⁿ`, plus a low-degree polynomial part.
///
/// Built from `sin`, `cos`, `1/(1 + a²)` and monomials of degree `≤ 3`, so it
/// stays moderate at far-away reflected points.
pub fn random_test_function(pool: &mut ExprPool, rng: &mut SampleRng, n: usize) -> ExprId {
    let mut terms = Vec::new();
    for _ in 0..3 {
        let a = random_affine(pool, rng, n);
        let c = small_coef(rng);
        let t = match rng.random_range(0..3) {
            0 => pool.func(ElemFn::Sin, a),
            1 => pool.func(ElemFn::Cos, a),
            _ => {
                let one = pool.one();
                let sq = pool.powi(a, 2);
                let den = pool.add(one, sq);
                pool.div(one, den)
            }
        };
        terms.push(pool.scale(&c, t));
    }
    for _ in 0..2 {
        let mut e = vec![0u32; n];
        for _ in 0..rng.random_range(1..=3) {
            e[rng.random_range(0..n)] += 1;
        }
        let factors: Vec<ExprId> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let x = pool.var(i);
                pool.powi(x, k as i32)
            })
            .collect();
        let m = pool.product(factors);
        let c = Exact::frac(rng.random_range(-3..=3), 8);
        terms.push(pool.scale(&c, m));
    }
    pool.sum(terms)
}

/// A random expression tree of the given depth that is smooth and finite on
/// `[-1, 1]ⁿ`: divisions, logarithms and real powers only see bases `≥ 1`,
/// and integer powers only see bounded bases.
pub fn random_smooth_expr(pool: &mut ExprPool, rng: &mut SampleRng, n: usize, depth: u32) -> ExprId {
    if depth == 0 || rng.random_bool(0.2) {
        return if rng.random_bool(0.75) {
            let x = pool.var(rng.random_range(0..n));
            let mut c = random_rational(rng, 2, 2);
            if c.is_zero() {
                c = Exact::int(1);
            }
            pool.scale(&c, x)
        } else {
            pool.constant(random_rational(rng, 3, 2))
        };
    }
    let a = random_smooth_expr(pool, rng, n, depth - 1);
    let one = pool.one();
    match rng.random_range(0..10) {
        0 | 1 => {
            let b = random_smooth_expr(pool, rng, n, depth - 1);
            pool.add(a, b)
        }
        2 | 3 => {
            let b = random_smooth_expr(pool, rng, n, depth - 1);
            pool.mul(a, b)
        }
        4 => {
            let b = random_smooth_expr(pool, rng, n, depth - 1);
            let sq = pool.powi(b, 2);
            let den = pool.add(one, sq);
            pool.div(a, den)
        }
        5 => pool.func(ElemFn::Sin, a),
        6 => pool.func(ElemFn::Cos, a),
        7 => {
            // exp of a bounded argument
            let s = pool.func(ElemFn::Sin, a);
            pool.func(ElemFn::Exp, s)
        }
        8 => {
            let sq = pool.powi(a, 2);
            let base = pool.add(one, sq);
            if rng.random_bool(0.5) {
                pool.func(ElemFn::Ln, base)
            } else {
                pool.powr(base, Exact::frac(rng.random_range(-3..=3), 3))
            }
        }
        _ => {
            // a bounded base keeps nested powers from compounding
            let t = pool.func(ElemFn::Sin, a);
            pool.powi(t, rng.random_range(2..=3))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartcalc::eval_f64;
    use crate::rootsys::{build_b, MultiplicityFunction};

    #[test]
    fn deterministic() {
        let a = random_poly(&mut rng(7), 4, 6, 5);
        let b = random_poly(&mut rng(7), 4, 6, 5);
        assert_eq!(a, b);
        assert!(a.degree().unwrap_or(0) <= 6);
    }

    #[test]
    fn regular_points_respect_margin() {
        let sys = build_b(2);
        let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::uniform(&sys, Exact::int(1)));
        let pts = regular_points(&mut rng(3), &ctx, 20, 1.5, 0.1, 2);
        assert_eq!(pts.len(), 20);
        for x in &pts {
            assert!(domain_check(&ctx, x, 2).unwrap().clear_of(0.1));
        }
    }

    #[test]
    fn smooth_expressions_are_finite() {
        let mut r = rng(11);
        let mut pool = ExprPool::new();
        for _ in 0..200 {
            let e = random_smooth_expr(&mut pool, &mut r, 3, 4);
            let x = random_point(&mut r, 3, 1.0);
            assert!(eval_f64(&pool, e, &x).unwrap().is_finite());
        }
    }
}
