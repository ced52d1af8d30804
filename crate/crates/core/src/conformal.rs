//! The conformal Dunkl-Laplace operator on the chart `U ⊂ Sⁿ`.
//!
//! Two independent constructions are provided. The chart formula (first
//! power only) evaluates derivatives of `f` at `x` and `f` at the reflected
//! points. The ambient route lifts `f` to a homogeneous function on
//! `R^{n+1,1}`, applies the Dunkl Laplacian `j` times symbolically and
//! restricts to the null cone.

use thiserror::Error;

use crate::ambient::{norm_sq, AmbientVector};
use crate::chartcalc::{
    ambient_dunkl_laplacian_expr, density_to_ambient, perturb_extension, restrict_to_cone, Density, EvalError,
    EvalErrorKind, Evaluator, ExprError, ExprId, ExprPool,
};
use crate::dunkl::DunklContext;
use crate::rootsys::{quadric_value, Root};
use crate::scalar::{ElemFn, Exact};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConformalError {
    #[error("point lies on the reflecting subsphere of root {root}: {denominator} = 0")]
    Singular { root: String, denominator: &'static str },
    #[error("reflection in root {root} sends the point to infinity (J = 0)")]
    AtInfinity { root: String },
    #[error("reflection in root {root} leaves the chart domain (J < 0)")]
    OutsideDomain { root: String },
    #[error("the chart formula covers the first power only, got j = {0}")]
    ChartFormulaPower(u32),
    #[error("expected a point with {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
}

/// `w = −n/2 + j − γ_k`.
pub fn critical_weight(n: usize, j: u32, gamma: &Exact) -> Exact {
    &(&Exact::frac(-(n as i64), 2) + &Exact::int(j as i64)) - gamma
}

/// The power `j`, the density weight `w` and the Dunkl data.
#[derive(Clone, Debug)]
pub struct ConformalOperator {
    ctx: DunklContext,
    j: u32,
    w: Exact,
}

impl ConformalOperator {
    pub fn critical(ctx: DunklContext, j: u32) -> Self {
        assert!(j >= 1, "power must be positive");
        let w = critical_weight(ctx.root_system().n(), j, ctx.gamma());
        ConformalOperator { ctx, j, w }
    }

    pub fn with_weight(ctx: DunklContext, j: u32, w: Exact) -> Self {
        assert!(j >= 1, "power must be positive");
        ConformalOperator { ctx, j, w }
    }

    /// Same operator at weight `w + δ`.
    pub fn shifted(&self, delta: &Exact) -> Self {
        ConformalOperator { ctx: self.ctx.clone(), j: self.j, w: &self.w + delta }
    }

    pub fn ctx(&self) -> &DunklContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.root_system().n()
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn weight(&self) -> &Exact {
        &self.w
    }

    pub fn is_critical(&self) -> bool {
        self.w == critical_weight(self.n(), self.j, self.ctx.gamma())
    }

    pub fn density(&self, f: ExprId) -> Density {
        Density { f, n: self.n(), w: self.w.clone() }
    }

    fn check_point(&self, x: &[f64]) -> Result<(), ConformalError> {
        if x.len() != self.n() {
            return Err(ConformalError::Dimension { expected: self.n(), got: x.len() });
        }
        Ok(())
    }
}

/// Denominators below this size count as vanishing.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Smallest `|D_α|` and `J_α` met along every reflection word of the checked length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainReport {
    pub min_abs_d: f64,
    pub min_j: f64,
}

impl DomainReport {
    pub fn clear_of(&self, margin: f64) -> bool {
        self.min_abs_d > margin && self.min_j > margin
    }
}

/// Walks reflection words of length `≤ depth` from the lift of `x` and reports
/// the first root whose hyperplane or chart image is hit.
///
/// Every point visited is a positive multiple `J·(1, y, −½‖y‖²)` of a cone
/// point, so `⟨α,Q⟩/Q⁰ = D_α(y)` and `(R_α Q)⁰/Q⁰ = J_α(y)`.
pub fn domain_check(ctx: &DunklContext, x: &[f64], depth: u32) -> Result<DomainReport, ConformalError> {
    let mut report = DomainReport { min_abs_d: f64::INFINITY, min_j: f64::INFINITY };
    let roots: Vec<&Root> = ctx.weighted_roots().map(|(r, _)| r).collect();
    let mut frontier = vec![AmbientVector::cone_point(x)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * roots.len());
        for q in &frontier {
            let q0 = *q.x0();
            for root in &roots {
                let ell = root.pair_with(&q.coords);
                if (ell / q0).abs() <= SINGULAR_TOL {
                    return Err(ConformalError::Singular { root: root.to_string(), denominator: "<alpha,X>" });
                }
                let image = root.reflect(q);
                let jr = image.x0() / q0;
                if jr.abs() <= SINGULAR_TOL {
                    return Err(ConformalError::AtInfinity { root: root.to_string() });
                }
                if jr < 0.0 {
                    return Err(ConformalError::OutsideDomain { root: root.to_string() });
                }
                report.min_abs_d = report.min_abs_d.min((ell / q0).abs());
                report.min_j = report.min_j.min(jr);
                next.push(image);
            }
        }
        frontier = next;
    }
    Ok(report)
}

fn label_eval_error(ctx: &DunklContext, x: &[f64], depth: u32, e: EvalError) -> ConformalError {
    match e.kind {
        EvalErrorKind::DivisionByZero | EvalErrorKind::NonPositiveBase => match domain_check(ctx, x, depth) {
            Err(labelled) => labelled,
            Ok(_) => ConformalError::Eval(e),
        },
        _ => ConformalError::Eval(e),
    }
}

/// The closed chart formula for `j = 1`:
///
/// `Δf + 2Σ k(α)[(α₀(w − Σxⱼ∂ⱼ) + Σαᵢ∂ᵢ)f / D − ½⟨α,α⟩(f − J^w f∘r_α) / D²]`.
#[derive(Clone, Debug)]
pub struct ChartOperator<'a> {
    op: &'a ConformalOperator,
    f: ExprId,
    grad: Vec<ExprId>,
    lap: ExprId,
}

pub fn chart_operator<'a>(
    op: &'a ConformalOperator,
    pool: &mut ExprPool,
    f: ExprId,
) -> Result<ChartOperator<'a>, ConformalError> {
    if op.j != 1 {
        return Err(ConformalError::ChartFormulaPower(op.j));
    }
    let n = op.n();
    let grad: Vec<ExprId> = (0..n).map(|i| pool.derivative(f, i)).collect();
    let second: Vec<ExprId> = grad.iter().enumerate().map(|(i, &g)| pool.derivative(g, i)).collect();
    let lap = pool.sum(second);
    Ok(ChartOperator { op, f, grad, lap })
}

impl ChartOperator<'_> {
    pub fn eval(&self, pool: &ExprPool, x: &[f64]) -> Result<f64, ConformalError> {
        self.op.check_point(x)?;
        let ctx = &self.op.ctx;
        let w = self.op.w.to_f64();
        let mut ev = Evaluator::new(pool, x);
        let fx = ev.eval(self.f)?;
        let grad = self.grad.iter().map(|&g| ev.eval(g)).collect::<Result<Vec<f64>, _>>()?;
        let mut acc = ev.eval(self.lap)?;
        let x_dot_grad: f64 = x.iter().zip(&grad).map(|(a, b)| a * b).sum();
        for (root, k) in ctx.weighted_roots() {
            let d = quadric_value(root, x);
            if d.abs() <= SINGULAR_TOL {
                return Err(ConformalError::Singular { root: root.to_string(), denominator: "D_alpha" });
            }
            let norm = root.norm().to_f64();
            let a0 = root.alpha0().to_f64();
            let j = 1.0 - 2.0 * a0 * d / norm;
            if j.abs() <= SINGULAR_TOL {
                return Err(ConformalError::AtInfinity { root: root.to_string() });
            }
            if j < 0.0 {
                return Err(ConformalError::OutsideDomain { root: root.to_string() });
            }
            let image: Vec<f64> = x
                .iter()
                .zip(root.euclidean())
                .map(|(xi, ai)| (xi - 2.0 * ai.to_f64() * d / norm) / j)
                .collect();
            let f_image = Evaluator::new(pool, &image).eval(self.f)?;
            let along: f64 = root.euclidean().iter().zip(&grad).map(|(a, g)| a.to_f64() * g).sum();
            let first = (a0 * (w * fx - x_dot_grad) + along) / d;
            let second = 0.5 * norm * (fx - j.powf(w) * f_image) / (d * d);
            acc += 2.0 * k.to_f64() * (first - second);
        }
        Ok(acc)
    }
}

/// `f ↦ (Δ̃_k^j ι(f))|_cone` as a chart expression, optionally with the
/// extension perturbed by `⟨X,X⟩·ι(g)`, `g` of weight `w − 2`.
#[derive(Clone, Debug)]
pub struct AmbientRoute<'a> {
    op: &'a ConformalOperator,
    expr: ExprId,
}

pub fn ambient_route<'a>(
    op: &'a ConformalOperator,
    pool: &mut ExprPool,
    f: ExprId,
    perturbation: Option<ExprId>,
) -> Result<AmbientRoute<'a>, ConformalError> {
    let mut e = density_to_ambient(pool, &op.density(f));
    if let Some(g) = perturbation {
        let gd = Density { f: g, n: op.n(), w: &op.w - &Exact::int(2) };
        e = perturb_extension(pool, e, &gd);
    }
    for _ in 0..op.j {
        e = ambient_dunkl_laplacian_expr(pool, &op.ctx, e)?;
    }
    let expr = restrict_to_cone(pool, e, op.n());
    Ok(AmbientRoute { op, expr })
}

impl AmbientRoute<'_> {
    pub fn expr(&self) -> ExprId {
        self.expr
    }

    pub fn eval(&self, pool: &ExprPool, x: &[f64]) -> Result<f64, ConformalError> {
        self.op.check_point(x)?;
        domain_check(&self.op.ctx, x, self.op.j)?;
        Evaluator::new(pool, x).eval(self.expr).map_err(|e| label_eval_error(&self.op.ctx, x, self.op.j, e))
    }
}

/// Relative difference with scale `max(|reference|, 1)`.
pub fn relative_error(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(1.0)
}

/// The larger residual; NaN wins so that a failed evaluation cannot pass.
pub fn worse(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Largest relative change of the ambient route when the extension is perturbed by `⟨X,X⟩·ι(g)`.
pub fn extension_independence_residual(
    op: &ConformalOperator,
    pool: &mut ExprPool,
    f: ExprId,
    g: ExprId,
    points: &[Vec<f64>],
) -> Result<f64, ConformalError> {
    let base = ambient_route(op, pool, f, None)?;
    let perturbed = ambient_route(op, pool, f, Some(g))?;
    let mut worst = 0.0f64;
    for x in points {
        let a = base.eval(pool, x)?;
        let b = perturbed.eval(pool, x)?;
        worst = worse(worst, relative_error(b, a));
    }
    Ok(worst)
}

/// Largest relative difference between the chart formula and the ambient route.
pub fn cross_validate(
    op: &ConformalOperator,
    pool: &mut ExprPool,
    f: ExprId,
    points: &[Vec<f64>],
) -> Result<f64, ConformalError> {
    let a = chart_operator(op, pool, f)?;
    let b = ambient_route(op, pool, f, None)?;
    let mut worst = 0.0f64;
    for x in points {
        worst = worse(worst, relative_error(a.eval(pool, x)?, b.eval(pool, x)?));
    }
    Ok(worst)
}

/// The ambient route evaluated at one point; the only construction for `j ≥ 2`.
pub fn higher_power(op: &ConformalOperator, pool: &mut ExprPool, f: ExprId, x: &[f64]) -> Result<f64, ConformalError> {
    ambient_route(op, pool, f, None)?.eval(pool, x)
}

/// Euclidean roots `ᾱ ∈ Rⁿ` with multiplicities, when every root has `α₀ = 0`.
pub fn euclidean_roots(ctx: &DunklContext) -> Option<Vec<(Vec<Exact>, Exact)>> {
    ctx.weighted_roots()
        .map(|(r, k)| r.is_euclidean().then(|| (r.euclidean().to_vec(), k.clone())))
        .collect()
}

/// `Σᵢ Tᵢ Tᵢ f` on `Rⁿ` with `Tᵢ = ∂ᵢ + Σ k(ᾱ) ᾱᵢ (1 − r_ᾱ)/⟨ᾱ,x⟩`, built as an expression.
pub fn classical_dunkl_expr(pool: &mut ExprPool, roots: &[(Vec<Exact>, Exact)], f: ExprId, n: usize) -> ExprId {
    let apply_t = |pool: &mut ExprPool, e: ExprId, i: usize| -> ExprId {
        let mut acc = pool.derivative(e, i);
        for (alpha, k) in roots {
            if alpha[i].is_zero() {
                continue;
            }
            let norm = norm_sq(alpha);
            let ell = {
                let terms: Vec<ExprId> = alpha
                    .iter()
                    .enumerate()
                    .map(|(j, a)| {
                        let xj = pool.var(j);
                        pool.scale(a, xj)
                    })
                    .collect();
                pool.sum(terms)
            };
            let factor = -&(&Exact::int(2) / &norm);
            let args: Vec<ExprId> = (0..n)
                .map(|j| {
                    let xj = pool.var(j);
                    let shift = pool.scale(&(&factor * &alpha[j]), ell);
                    pool.add(xj, shift)
                })
                .collect();
            let reflected = pool.apply(e, &args);
            let diff = pool.sub(e, reflected);
            let q = pool.div(diff, ell);
            let term = pool.scale(&(k * &alpha[i]), q);
            acc = pool.add(acc, term);
        }
        acc
    };
    let squares: Vec<ExprId> = (0..n)
        .map(|i| {
            let t = apply_t(pool, f, i);
            apply_t(pool, t, i)
        })
        .collect();
    pool.sum(squares)
}

/// The classical Dunkl Laplacian of `f` at `x`.
pub fn classical_dunkl_chart(
    pool: &mut ExprPool,
    roots: &[(Vec<Exact>, Exact)],
    f: ExprId,
    x: &[f64],
) -> Result<f64, ConformalError> {
    let e = classical_dunkl_expr(pool, roots, f, x.len());
    Ok(Evaluator::new(pool, x).eval(e)?)
}

/// `J_α(x)` and `r_α(x)` as chart expressions.
fn chart_reflection_exprs(pool: &mut ExprPool, root: &Root) -> (ExprId, Vec<ExprId>) {
    let n = root.n();
    let xs: Vec<ExprId> = (0..n).map(|i| pool.var(i)).collect();
    let squares: Vec<ExprId> = xs.iter().map(|&x| pool.powi(x, 2)).collect();
    let sq = pool.sum(squares);
    let a0 = root.alpha0().clone();
    let one = pool.one();
    let half_sq = pool.scale(&Exact::frac(1, 2), sq);
    let cap = pool.sub(one, half_sq);
    let mut d = pool.scale(&a0, cap);
    for (x, a) in xs.iter().zip(root.euclidean()) {
        let t = pool.scale(a, *x);
        d = pool.add(d, t);
    }
    let two_over = &Exact::int(2) / root.norm();
    let s = pool.scale(&(&two_over * &a0), d);
    let j = pool.sub(one, s);
    let image = xs
        .iter()
        .zip(root.euclidean())
        .map(|(&x, a)| {
            let shift = pool.scale(&(&two_over * a), d);
            let num = pool.sub(x, shift);
            pool.div(num, j)
        })
        .collect();
    (j, image)
}

/// `J_α(x)^w f(r_α(x))`, the action of `R_α` on `w`-densities.
pub fn pullback_density(pool: &mut ExprPool, root: &Root, f: ExprId, w: &Exact) -> ExprId {
    let (j, image) = chart_reflection_exprs(pool, root);
    let moved = pool.apply(f, &image);
    let factor = pool.powr(j, w.clone());
    pool.mul(factor, moved)
}

/// `|P(R_α^* f)(x) − J_α(x)^{w−2j} (Pf)(r_α x)|`, relative, for the operator `P`.
///
/// The chart formula is used for `j = 1`, the ambient route otherwise.
pub fn chart_equivariance_residual(
    op: &ConformalOperator,
    pool: &mut ExprPool,
    f: ExprId,
    root: &Root,
    x: &[f64],
) -> Result<f64, ConformalError> {
    let cr = crate::rootsys::ChartReflection::compute(root, x)
        .map_err(|_| ConformalError::AtInfinity { root: root.to_string() })?;
    if cr.j < 0.0 {
        return Err(ConformalError::OutsideDomain { root: root.to_string() });
    }
    let g = pullback_density(pool, root, f, &op.w);
    let out_w = (&op.w - &Exact::int(2 * op.j as i64)).to_f64();
    let (lhs, at_image) = if op.j == 1 {
        let lhs = chart_operator(op, pool, g)?.eval(pool, x)?;
        (lhs, chart_operator(op, pool, f)?.eval(pool, &cr.image)?)
    } else {
        let lhs = ambient_route(op, pool, g, None)?.eval(pool, x)?;
        (lhs, ambient_route(op, pool, f, None)?.eval(pool, &cr.image)?)
    };
    Ok(relative_error(lhs, cr.j.powf(out_w) * at_image))
}

/// Bound on the size of the first- and zeroth-order coefficients of the chart formula at `x`.
pub fn lower_order_bound(op: &ConformalOperator, x: &[f64]) -> Result<f64, ConformalError> {
    op.check_point(x)?;
    let w = op.w.to_f64();
    let radius = crate::ambient::norm_sq(x).sqrt();
    let mut bound = 1.0;
    for (root, k) in op.ctx.weighted_roots() {
        let d = quadric_value(root, x).abs();
        let norm = root.norm().to_f64();
        let a0 = root.alpha0().to_f64();
        let j = (1.0 - 2.0 * a0 * quadric_value(root, x) / norm).abs();
        let along = crate::ambient::norm_sq(&root.euclidean().iter().map(Exact::to_f64).collect::<Vec<_>>()).sqrt();
        let first = (a0.abs() * (w.abs() + radius) + along) / d;
        let zeroth = 0.5 * norm.abs() * (1.0 + j.powf(w)) / (d * d);
        bound += 2.0 * k.to_f64().abs() * (first + zeroth);
    }
    Ok(bound)
}

/// Estimates the principal symbol at `x` in direction `ξ` from plane waves
/// `cos(λ⟨ξ,x⟩)`, `sin(λ⟨ξ,x⟩)`: least-squares intercept of
/// `σ(λ) = −(P(cos)·cos + P(sin)·sin)/λ²` against `1/λ²` over `λ, 2λ, 4λ`.
///
/// The reflected terms oscillate in `λ` instead of following `1/λ²`, so the base
/// frequency is `lambda·√B` with `B` from [`lower_order_bound`], which keeps them
/// near `1/lambda²`.
pub fn leading_symbol(
    op: &ConformalOperator,
    pool: &mut ExprPool,
    x: &[f64],
    xi: &[f64],
    lambda: f64,
) -> Result<f64, ConformalError> {
    let base = lambda * lower_order_bound(op, x)?.sqrt();
    let mut samples = Vec::new();
    for scale in [1.0, 2.0, 4.0] {
        let lam = base * scale;
        let terms: Vec<ExprId> = xi
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v = pool.var(i);
                pool.scale(&Exact::rational(float_to_rational(lam * c)), v)
            })
            .collect();
        let phase = pool.sum(terms);
        let c = pool.func(ElemFn::Cos, phase);
        let s = pool.func(ElemFn::Sin, phase);
        let pc = chart_operator(op, pool, c)?.eval(pool, x)?;
        let ps = chart_operator(op, pool, s)?.eval(pool, x)?;
        let mut ev = Evaluator::new(pool, x);
        let (cv, sv) = (ev.eval(c)?, ev.eval(s)?);
        samples.push((1.0 / (lam * lam), -(pc * cv + ps * sv) / (lam * lam)));
    }
    let m = samples.len() as f64;
    let (sx, sy) = samples.iter().fold((0.0, 0.0), |(a, b), (u, v)| (a + u, b + v));
    let (mx, my) = (sx / m, sy / m);
    let (sxy, sxx) = samples.iter().fold((0.0, 0.0), |(a, b), (u, v)| (a + (u - mx) * (v - my), b + (u - mx) * (u - mx)));
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    Ok(my - slope * mx)
}

/// Exact rational with the same value as a finite double.
pub fn float_to_rational(v: f64) -> crate::scalar::Rational {
    crate::scalar::Rational::from_float(v).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartcalc::{chart_var_names, eval_f64, parse_expr};
    use crate::rootsys::{a1, b_euclidean, build_b, MultiplicityFunction};

    fn op_for(sys: crate::rootsys::RootSystem, k: Vec<Exact>, j: u32) -> ConformalOperator {
        let k = MultiplicityFunction::per_orbit(&sys, k).unwrap();
        ConformalOperator::critical(DunklContext::new(sys, k), j)
    }

    #[test]
    fn critical_weights() {
        assert_eq!(critical_weight(2, 1, &Exact::int(0)), Exact::int(0));
        assert_eq!(critical_weight(3, 2, &Exact::int(2)), Exact::frac(-3, 2));
    }

    #[test]
    fn zero_multiplicity_is_the_laplacian() {
        let sys = build_b(2);
        let op = op_for(sys, vec![Exact::int(0), Exact::int(0)], 1);
        let mut pool = ExprPool::new();
        let f = parse_expr(&mut pool, "x1^2 + x2^2", &chart_var_names(2)).unwrap();
        let a = chart_operator(&op, &mut pool, f).unwrap();
        let b = ambient_route(&op, &mut pool, f, None).unwrap();
        for x in [[0.3, -0.4], [1.2, 0.7]] {
            assert!((a.eval(&pool, &x).unwrap() - 4.0).abs() < 1e-12);
            assert!((b.eval(&pool, &x).unwrap() - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn routes_agree_with_inversion_root() {
        let sys = build_b(2);
        let op = op_for(sys, vec![Exact::frac(1, 2), Exact::int(1)], 1);
        let mut pool = ExprPool::new();
        let f = parse_expr(&mut pool, "sin(x1) + x1*x2^2 + 1/(1 + x2^2)", &chart_var_names(2)).unwrap();
        let pts = vec![vec![0.35, 0.55], vec![-0.2, 0.9]];
        for x in &pts {
            domain_check(op.ctx(), x, 1).unwrap();
        }
        assert!(cross_validate(&op, &mut pool, f, &pts).unwrap() < 1e-9);
    }

    #[test]
    fn classical_rank_one_example() {
        let mut pool = ExprPool::new();
        let f = parse_expr(&mut pool, "x1^2", &chart_var_names(2)).unwrap();
        let c = Exact::frac(1, 3);
        let roots = vec![(vec![Exact::int(1), Exact::int(0)], c)];
        let v = classical_dunkl_chart(&mut pool, &roots, f, &[0.7, -0.2]).unwrap();
        assert!((v - (2.0 + 4.0 / 3.0)).abs() < 1e-13);
        let op = op_for(a1(2), vec![Exact::frac(1, 3)], 1);
        let a = chart_operator(&op, &mut pool, f).unwrap();
        assert!((a.eval(&pool, &[0.7, -0.2]).unwrap() - v).abs() < 1e-13);
    }

    #[test]
    fn singular_points_name_the_root() {
        let op = op_for(b_euclidean(2, 2), vec![Exact::int(1), Exact::int(1)], 1);
        let mut pool = ExprPool::new();
        let f = parse_expr(&mut pool, "x1", &chart_var_names(2)).unwrap();
        let a = chart_operator(&op, &mut pool, f).unwrap();
        let err = a.eval(&pool, &[0.0, 0.5]).unwrap_err();
        assert!(matches!(err, ConformalError::Singular { .. }), "{err}");
        let b = ambient_route(&op, &mut pool, f, None).unwrap();
        let ConformalError::Singular { root, .. } = b.eval(&pool, &[0.5, 0.5]).unwrap_err() else { panic!() };
        assert!(root.contains("-1") || root.contains("1"));
        let inv = op_for(build_b(2), vec![Exact::int(1), Exact::int(1)], 1);
        assert!(matches!(domain_check(inv.ctx(), &[0.0, 0.0], 1), Err(ConformalError::AtInfinity { .. })));
    }

    #[test]
    fn pullback_is_a_density_action() {
        let sys = build_b(1);
        let root = sys.roots().iter().find(|r| !r.is_euclidean()).unwrap().clone();
        let mut pool = ExprPool::new();
        let f = parse_expr(&mut pool, "cos(x1) + x1^3", &chart_var_names(1)).unwrap();
        let w = Exact::frac(-5, 2);
        let g = pullback_density(&mut pool, &root, f, &w);
        let gg = pullback_density(&mut pool, &root, g, &w);
        // reflecting twice is the identity on densities
        for x in [0.4, 0.9, -0.3] {
            let cr = crate::rootsys::ChartReflection::compute(&root, &[x]).unwrap();
            if cr.j > 0.1 {
                let back = eval_f64(&pool, gg, &[x]).unwrap();
                assert!((back - eval_f64(&pool, f, &[x]).unwrap()).abs() < 1e-12);
            }
        }
    }
}
