use super::{ExprError, ExprId, ExprPool};
use crate::dunkl::DunklContext;
use crate::poly::MultiPoly;
use crate::rootsys::Root;
use crate::scalar::Exact;

/// A `w`-density on the chart: a function `f` of `x₁…xₙ` and its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Density {
    pub f: ExprId,
    pub n: usize,
    pub w: Exact,
}

/// `Σ cₐ Xᵃ`.
pub fn linear_form(pool: &mut ExprPool, coeffs: &[Exact]) -> ExprId {
    let terms: Vec<ExprId> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| {
            let x = pool.var(a);
            pool.scale(c, x)
        })
        .collect();
    pool.sum(terms)
}

/// `⟨X,X⟩ = 2X⁰X^∞ + Σ(Xⁱ)²` in `nvars = n + 2` variables.
pub fn quadratic_form_expr(pool: &mut ExprPool, nvars: usize) -> ExprId {
    let x0 = pool.var(0);
    let xinf = pool.var(nvars - 1);
    let cross = pool.mul(x0, xinf);
    let mut acc = pool.scale(&Exact::int(2), cross);
    for i in 1..nvars - 1 {
        let xi = pool.var(i);
        let sq = pool.powi(xi, 2);
        acc = pool.add(acc, sq);
    }
    acc
}

/// `(X⁰)^w f(X¹/X⁰, …, Xⁿ/X⁰)`, the lift that does not depend on `ρ`.
pub fn density_to_ambient(pool: &mut ExprPool, d: &Density) -> ExprId {
    let x0 = pool.var(0);
    let args: Vec<ExprId> = (1..=d.n)
        .map(|i| {
            let xi = pool.var(i);
            pool.div(xi, x0)
        })
        .collect();
    let lifted = pool.apply(d.f, &args);
    let weight = pool.powr(x0, d.w.clone());
    pool.mul(weight, lifted)
}

/// `e + ⟨X,X⟩·ι(g)`; unchanged on the null cone.
pub fn perturb_extension(pool: &mut ExprPool, e: ExprId, g: &Density) -> ExprId {
    let q = quadratic_form_expr(pool, g.n + 2);
    let lg = density_to_ambient(pool, g);
    let t = pool.mul(q, lg);
    pool.add(e, t)
}

/// `x ↦ e(1, x, −½‖x‖²)`, a function of the `n` chart variables.
pub fn restrict_to_cone(pool: &mut ExprPool, e: ExprId, n: usize) -> ExprId {
    let mut args = Vec::with_capacity(n + 2);
    args.push(pool.one());
    let xs: Vec<ExprId> = (0..n).map(|i| pool.var(i)).collect();
    args.extend(&xs);
    let squares: Vec<ExprId> = xs.iter().map(|&x| pool.powi(x, 2)).collect();
    let s = pool.sum(squares);
    args.push(pool.scale(&Exact::frac(-1, 2), s));
    pool.apply(e, &args)
}

/// `e∘R_α` with `R_α X = X − 2(⟨α,X⟩/⟨α,α⟩)α`.
pub fn reflect_expr(pool: &mut ExprPool, e: ExprId, root: &Root) -> ExprId {
    let ell = linear_form(pool, root.covector());
    let factor = -&(&Exact::int(2) / root.norm());
    let args: Vec<ExprId> = root
        .coords()
        .iter()
        .enumerate()
        .map(|(a, alpha_a)| {
            let xa = pool.var(a);
            if alpha_a.is_zero() {
                xa
            } else {
                let shift = pool.scale(&(&factor * alpha_a), ell);
                pool.add(xa, shift)
            }
        })
        .collect();
    pool.apply(e, &args)
}

/// `2∂₀∂_∞e + Σ∂ᵢ²e`.
pub fn flat_laplacian_expr(pool: &mut ExprPool, e: ExprId, nvars: usize) -> ExprId {
    let d0 = pool.derivative(e, 0);
    let d0inf = pool.derivative(d0, nvars - 1);
    let mut acc = pool.scale(&Exact::int(2), d0inf);
    for i in 1..nvars - 1 {
        let di = pool.derivative(e, i);
        let dii = pool.derivative(di, i);
        acc = pool.add(acc, dii);
    }
    acc
}

/// `Δ̃e + 2Σ k(α)(∂_α e/⟨α,X⟩ − ½⟨α,α⟩(e − e∘R_α)/⟨α,X⟩²)`.
pub fn ambient_dunkl_laplacian_expr(pool: &mut ExprPool, ctx: &DunklContext, e: ExprId) -> Result<ExprId, ExprError> {
    let nvars = ctx.nvars();
    let mut acc = flat_laplacian_expr(pool, e, nvars);
    for (root, k) in ctx.weighted_roots() {
        let ell = linear_form(pool, root.covector());
        let da = pool.directional(e, root.coords());
        let first = pool.div(da, ell);
        let reflected = reflect_expr(pool, e, root);
        let diff = pool.sub(e, reflected);
        let ell2 = pool.powi(ell, 2);
        let q = pool.div(diff, ell2);
        let second = pool.scale(&(root.norm() / &Exact::int(2)), q);
        let term = pool.sub(first, second);
        let term = pool.scale(&(k * &Exact::int(2)), term);
        acc = pool.add(acc, term);
        pool.check_size()?;
    }
    Ok(acc)
}

/// The polynomial as an expression in the same variables.
pub fn poly_to_expr(pool: &mut ExprPool, p: &MultiPoly) -> ExprId {
    let n = p.nvars();
    let vars: Vec<ExprId> = (0..n).map(|i| pool.var(i)).collect();
    let terms: Vec<ExprId> = p
        .terms()
        .map(|(m, c)| {
            let factors: Vec<ExprId> =
                (0..n).filter(|&i| m.exp(i) > 0).map(|i| pool.powi(vars[i], m.exp(i) as i32)).collect();
            let prod = pool.product(factors);
            pool.scale(c, prod)
        })
        .collect();
    pool.sum(terms)
}
