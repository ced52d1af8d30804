//! Ambient Dunkl operators on exact polynomials, the Dunkl Laplacian and the
//! `sl(2)` triple it spans with `⟨X,X⟩` and the Euler operator.

use std::fmt;

use crate::ambient::{lower, BilinearForm};
use crate::linalg::Matrix;
use crate::poly::{Monomial, MultiPoly, PolyError};
use crate::rootsys::{gamma, MultiplicityFunction, Root, RootSystem};
use crate::scalar::Exact;

/// How `(p − p∘R_α)/⟨α,X⟩` is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QuotientMethod {
    /// Reflect, subtract, then divide by the linear form.
    Division,
    /// Read the quotient off the Taylor expansion of `p∘R_α` along `α`.
    #[default]
    Taylor,
}

#[derive(Clone, Debug)]
struct Term {
    root: Root,
    k: Exact,
}

/// Root system, multiplicities and the cached `γ_k`.
#[derive(Clone, Debug)]
pub struct DunklContext {
    sys: RootSystem,
    k: MultiplicityFunction,
    form: BilinearForm,
    gamma: Exact,
    terms: Vec<Term>,
    method: QuotientMethod,
}

impl DunklContext {
    pub fn new(sys: RootSystem, k: MultiplicityFunction) -> Self {
        let gamma = gamma(&sys, &k);
        let terms = sys
            .positive_indices()
            .iter()
            .map(|&i| Term { root: sys.roots()[i].clone(), k: k.of_root(&sys, i).clone() })
            .filter(|t| !t.k.is_zero())
            .collect();
        let form = BilinearForm::standard(sys.n());
        DunklContext { sys, k, form, gamma, terms, method: QuotientMethod::default() }
    }

    pub fn with_method(mut self, method: QuotientMethod) -> Self {
        self.method = method;
        self
    }

    /// The same operators built from `−R₊`.
    pub fn with_opposite_positive(&self) -> Self {
        DunklContext::new(self.sys.with_opposite_positive(), self.k.clone()).with_method(self.method)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn multiplicity(&self) -> &MultiplicityFunction {
        &self.k
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn gamma(&self) -> &Exact {
        &self.gamma
    }

    pub fn method(&self) -> QuotientMethod {
        self.method
    }

    /// Positive roots with nonzero multiplicity, paired with `k(α)`.
    pub fn weighted_roots(&self) -> impl Iterator<Item = (&Root, &Exact)> {
        self.terms.iter().map(|t| (&t.root, &t.k))
    }

    /// Number of ambient variables, `n + 2`.
    pub fn nvars(&self) -> usize {
        self.sys.n() + 2
    }

    /// `(p − p∘R_α)/⟨α,X⟩` for each positive root with `k(α) ≠ 0`.
    fn quotients(&self, p: &MultiPoly) -> Result<Vec<MultiPoly>, PolyError> {
        self.terms.iter().map(|t| difference_quotient(&t.root, p, self.method)).collect()
    }

    fn check_vars(&self, p: &MultiPoly) -> Result<(), PolyError> {
        if p.nvars() != self.nvars() {
            return Err(PolyError::VarCount { expected: self.nvars(), got: p.nvars() });
        }
        Ok(())
    }
}

/// `(p − p∘R_α)/⟨α,X⟩`, exact.
pub fn difference_quotient(root: &Root, p: &MultiPoly, method: QuotientMethod) -> Result<MultiPoly, PolyError> {
    match method {
        QuotientMethod::Division => {
            let diff = p.sub(&p.reflect(root.coords(), root.covector(), root.norm()));
            diff.divide_by_linear(root.covector())
        }
        QuotientMethod::Taylor => Ok(taylor_tail(root, p, 1)),
    }
}

/// `−Σ_{m≥s} cₘ ℓ^{m−s} ∂_αᵐ p` with `cₘ = (−2/⟨α,α⟩)ᵐ/m!`.
///
/// With `s = 1` this is `(p − p∘R_α)/ℓ`.
fn taylor_tail(root: &Root, p: &MultiPoly, s: i64) -> MultiPoly {
    let n = p.nvars();
    let ell = MultiPoly::linear(root.covector());
    let step = -(&Exact::int(2) / root.norm());
    let mut out = MultiPoly::zero(n);
    let mut deriv = p.clone();
    let mut coef = Exact::int(1);
    let mut ell_pow = MultiPoly::one(n);
    let mut m = 0i64;
    loop {
        deriv = deriv.directional(root.coords());
        if deriv.is_zero() {
            break;
        }
        m += 1;
        coef = &(&coef * &step) / &Exact::int(m);
        if m > s {
            ell_pow = ell_pow.mul(&ell);
        }
        if m >= s {
            out.add_scaled(&-&coef, &ell_pow.mul(&deriv));
        }
    }
    out
}

/// `T_ξ(k)p = ∂_ξ p + Σ_{α∈R₊} k(α)⟨α,ξ⟩(p − p∘R_α)/⟨α,X⟩`.
pub fn dunkl(ctx: &DunklContext, xi: &[Exact], p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    ctx.check_vars(p)?;
    let mut out = p.directional(xi);
    for (t, q) in ctx.terms.iter().zip(ctx.quotients(p)?) {
        let c = &t.k * &t.root.pair_with(xi);
        if !c.is_zero() {
            out.add_scaled(&c, &q);
        }
    }
    Ok(out)
}

/// `T_{e_a} p` for every standard basis vector, sharing the quotients.
pub fn dunkl_basis(ctx: &DunklContext, p: &MultiPoly) -> Result<Vec<MultiPoly>, PolyError> {
    ctx.check_vars(p)?;
    let qs = ctx.quotients(p)?;
    Ok((0..ctx.nvars())
        .map(|a| {
            let mut out = p.partial(a);
            for (t, q) in ctx.terms.iter().zip(&qs) {
                let c = &t.root.covector()[a];
                if !c.is_zero() {
                    out.add_scaled(&(&t.k * c), q);
                }
            }
            out
        })
        .collect())
}

/// `Σ_{a,b} G^{ab} T_a T_b p`; in standard coordinates `T₀T_∞ + T_∞T₀ + Σ Tᵢ²`.
pub fn dunkl_laplacian_sum(ctx: &DunklContext, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let first = dunkl_basis(ctx, p)?;
    let d = ctx.nvars();
    let mut out = MultiPoly::zero(d);
    for (a, ta) in first.iter().enumerate() {
        // G^{ab} is nonzero only for b = a*, with a* swapping 0 and ∞
        let mut dual = vec![Exact::int(0); d];
        dual[a] = Exact::int(1);
        let dual = lower(&dual);
        out.add_assign(&dunkl(ctx, &dual, ta)?);
    }
    Ok(out)
}

/// `2∂₀∂_∞ + Σ∂ᵢ²`.
pub fn flat_laplacian(p: &MultiPoly) -> MultiPoly {
    let d = p.nvars();
    let mut out = p.partial(0).partial(d - 1).scale(&Exact::int(2));
    for i in 1..d - 1 {
        out.add_assign(&p.partial(i).partial(i));
    }
    out
}

/// `Δ̃p + 2Σ k(α)(∂_α p/ℓ − ½⟨α,α⟩(p − p∘R_α)/ℓ²)` with `ℓ = ⟨α,X⟩`.
pub fn dunkl_laplacian_direct(ctx: &DunklContext, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    ctx.check_vars(p)?;
    let mut out = flat_laplacian(p);
    for t in &ctx.terms {
        let root = &t.root;
        let term = match ctx.method {
            QuotientMethod::Division => {
                let half_norm = root.norm() / &Exact::int(2);
                let diff = p.sub(&p.reflect(root.coords(), root.covector(), root.norm()));
                let mut num = p.directional(root.coords()).mul_linear(root.covector());
                num.add_scaled(&-&half_norm, &diff);
                num.divide_by_linear(root.covector())?.divide_by_linear(root.covector())?
            }
            QuotientMethod::Taylor => taylor_tail(root, p, 2).scale(&-&(root.norm() / &Exact::int(2))),
        };
        out.add_scaled(&(&t.k * &Exact::int(2)), &term);
    }
    Ok(out)
}

/// `⟨X,X⟩ = 2X⁰X^∞ + Σ(Xⁱ)²`.
pub fn quadratic_form(nvars: usize) -> MultiPoly {
    let mut q = MultiPoly::zero(nvars);
    let mut e = vec![0u32; nvars];
    e[0] = 1;
    e[nvars - 1] = 1;
    q.add_term(Monomial::from_exponents(&e), &Exact::int(2));
    for i in 1..nvars - 1 {
        let mut e = vec![0u32; nvars];
        e[i] = 2;
        q.add_term(Monomial::from_exponents(&e), &Exact::int(1));
    }
    q
}

/// `E = −¼⟨X,X⟩`.
pub fn sl2_e(p: &MultiPoly) -> MultiPoly {
    quadratic_form(p.nvars()).mul(p).scale(&Exact::frac(-1, 4))
}

/// `F = Δ̃_k`.
pub fn sl2_f(ctx: &DunklContext, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    dunkl_laplacian_sum(ctx, p)
}

/// `H = (n+2)/2 + γ_k + ⟨X,∂⟩`.
pub fn sl2_h(ctx: &DunklContext, p: &MultiPoly) -> MultiPoly {
    let shift = &Exact::frac(ctx.nvars() as i64, 2) + ctx.gamma();
    let mut out = p.euler();
    out.add_scaled(&shift, p);
    out
}

/// Outcome of one candidate commutation relation over the tested basis.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub holds: bool,
    /// Basis elements on which the residual was nonzero.
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Report {
    pub degree_bound: u32,
    pub basis_size: usize,
    pub relations: Vec<RelationCheck>,
}

impl Sl2Report {
    pub fn holds(&self, relation: &str) -> bool {
        self.relations.iter().any(|r| r.relation == relation && r.holds)
    }

    /// `[E,F] = H`, `[H,E] = 2E` and `[H,F] = −2F` together.
    pub fn is_sl2(&self) -> bool {
        self.holds("[E,F] = H") && self.holds("[H,E] = 2E") && self.holds("[H,F] = -2F")
    }
}

impl fmt::Display for Sl2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "monomials of degree <= {}: {}", self.degree_bound, self.basis_size)?;
        for r in &self.relations {
            writeln!(f, "  {:<12} {}", r.relation, if r.holds { "holds" } else { "fails" })?;
        }
        Ok(())
    }
}

const RELATIONS: [&str; 7] =
    ["[E,F] = H", "[H,E] = 2E", "[H,E] = -2E", "[E,H] = 2E", "[H,F] = -2F", "[H,F] = 2F", "[F,H] = 2F"];

/// Tests every candidate relation exactly on all monomials of degree `≤ degree_bound`.
pub fn sl2_commutators(ctx: &DunklContext, degree_bound: u32) -> Result<Sl2Report, PolyError> {
    let basis = Monomial::up_to_degree(ctx.nvars(), degree_bound);
    let mut failures = [0usize; RELATIONS.len()];
    for m in &basis {
        let p = MultiPoly::term(ctx.nvars(), *m, Exact::int(1));
        let e = sl2_e(&p);
        let f = sl2_f(ctx, &p)?;
        let h = sl2_h(ctx, &p);
        // [E,F]p
        let ef = sl2_e(&f).sub(&sl2_f(ctx, &e)?);
        // [H,E]p, [H,F]p
        let he = sl2_h(ctx, &e).sub(&sl2_e(&h));
        // p is homogeneous, so F(Hp) = (shift + deg p)·Fp by linearity
        let h_scalar = &(&Exact::frac(ctx.nvars() as i64, 2) + ctx.gamma()) + &Exact::int(m.degree() as i64);
        let hf = sl2_h(ctx, &f).sub(&f.scale(&h_scalar));
        let two = Exact::int(2);
        let residuals = [
            ef.sub(&h),
            he.sub(&e.scale(&two)),
            he.add(&e.scale(&two)),
            he.add(&e.scale(&two)),
            hf.add(&f.scale(&two)),
            hf.sub(&f.scale(&two)),
            hf.add(&f.scale(&two)),
        ];
        for (slot, r) in failures.iter_mut().zip(&residuals) {
            if !r.is_zero() {
                *slot += 1;
            }
        }
    }
    Ok(Sl2Report {
        degree_bound,
        basis_size: basis.len(),
        relations: RELATIONS
            .iter()
            .zip(failures)
            .map(|(&relation, failures)| RelationCheck { relation, holds: failures == 0, failures })
            .collect(),
    })
}

/// `Δ̃_k(p∘g) − (Δ̃_k p)∘g`.
pub fn equivariance_check(ctx: &DunklContext, g: &Matrix<Exact>, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let lhs = dunkl_laplacian_sum(ctx, &p.compose_linear(g))?;
    let rhs = dunkl_laplacian_sum(ctx, p)?.compose_linear(g);
    Ok(lhs.sub(&rhs))
}

/// Inverse of a form-preserving matrix: `g⁻¹ = G gᵀ G`.
pub fn isometry_inverse(g: &Matrix<Exact>) -> Matrix<Exact> {
    let d = g.len();
    let star = |a: usize| if a == 0 { d - 1 } else if a == d - 1 { 0 } else { a };
    (0..d).map(|a| (0..d).map(|b| g[star(b)][star(a)].clone()).collect()).collect()
}

/// `(T_{gξ}(p∘g⁻¹))∘g − T_ξ p`.
pub fn dunkl_equivariance_check(
    ctx: &DunklContext,
    g: &Matrix<Exact>,
    xi: &[Exact],
    p: &MultiPoly,
) -> Result<MultiPoly, PolyError> {
    let gxi = crate::linalg::mat_vec(g, xi);
    let moved = p.compose_linear(&isometry_inverse(g));
    let lhs = dunkl(ctx, &gxi, &moved)?.compose_linear(g);
    Ok(lhs.sub(&dunkl(ctx, xi, p)?))
}

/// `T_ξT_η p − T_ηT_ξ p`.
pub fn commutativity_check(
    ctx: &DunklContext,
    xi: &[Exact],
    eta: &[Exact],
    p: &MultiPoly,
) -> Result<MultiPoly, PolyError> {
    let a = dunkl(ctx, xi, &dunkl(ctx, eta, p)?)?;
    let b = dunkl(ctx, eta, &dunkl(ctx, xi, p)?)?;
    Ok(a.sub(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{a1, b_euclidean, build_b, generate_group, DEFAULT_GROUP_CAP};

    fn ints(v: &[i64]) -> Vec<Exact> {
        v.iter().map(|&k| Exact::int(k)).collect()
    }

    fn mono(e: &[u32]) -> MultiPoly {
        MultiPoly::term(e.len(), Monomial::from_exponents(e), Exact::int(1))
    }

    fn a1_ctx(c: Exact) -> DunklContext {
        let sys = a1(2);
        let k = MultiplicityFunction::uniform(&sys, c);
        DunklContext::new(sys, k)
    }

    #[test]
    fn rank_one_examples() {
        for method in [QuotientMethod::Division, QuotientMethod::Taylor] {
            let ctx = a1_ctx(Exact::frac(1, 3)).with_method(method);
            let e1 = ints(&[0, 1, 0, 0]);
            let x1 = mono(&[0, 1, 0, 0]);
            let even = mono(&[0, 2, 0, 0]);
            assert_eq!(dunkl(&ctx, &e1, &even).unwrap(), x1.scale(&Exact::int(2)));
            assert_eq!(dunkl(&ctx, &e1, &x1).unwrap(), MultiPoly::constant(4, Exact::frac(5, 3)));
        }
    }

    #[test]
    fn zero_multiplicity_is_classical() {
        let sys = build_b(2);
        let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::zero(&sys));
        let p = mono(&[1, 2, 0, 1]).add(&mono(&[0, 0, 3, 0]));
        let xi = ints(&[1, -2, 0, 3]);
        assert_eq!(dunkl(&ctx, &xi, &p).unwrap(), p.directional(&xi));
        // (X¹)² + 2X⁰X^∞ ↦ 6
        let q = mono(&[0, 2, 0, 0]).add(&mono(&[1, 0, 0, 1]).scale(&Exact::int(2)));
        assert_eq!(dunkl_laplacian_sum(&ctx, &q).unwrap(), MultiPoly::constant(4, Exact::int(6)));
        assert_eq!(dunkl_laplacian_direct(&ctx, &q).unwrap(), MultiPoly::constant(4, Exact::int(6)));
        assert!(dunkl_laplacian_direct(&ctx, &MultiPoly::one(4)).unwrap().is_zero());
    }

    #[test]
    fn quotient_methods_agree() {
        let sys = build_b(2);
        let p = mono(&[2, 1, 0, 1]).add(&mono(&[0, 3, 1, 0])).add(&mono(&[1, 0, 0, 0]));
        for r in sys.roots() {
            assert_eq!(
                difference_quotient(r, &p, QuotientMethod::Division).unwrap(),
                difference_quotient(r, &p, QuotientMethod::Taylor).unwrap()
            );
        }
    }

    #[test]
    fn laplacians_agree_on_b3() {
        let sys = build_b(2);
        let k = MultiplicityFunction::per_orbit(&sys, vec![Exact::frac(1, 2), Exact::int(2)]).unwrap();
        let p = mono(&[2, 1, 0, 1]).add(&mono(&[0, 3, 1, 0]).scale(&Exact::sqrt2())).add(&mono(&[0, 0, 2, 2]));
        for method in [QuotientMethod::Division, QuotientMethod::Taylor] {
            let ctx = DunklContext::new(sys.clone(), k.clone()).with_method(method);
            let s = dunkl_laplacian_sum(&ctx, &p).unwrap();
            assert_eq!(s, dunkl_laplacian_direct(&ctx, &p).unwrap());
            assert_eq!(s, dunkl_laplacian_sum(&ctx.with_opposite_positive(), &p).unwrap());
        }
    }

    #[test]
    fn sl2_relations_small() {
        let sys = b_euclidean(2, 2);
        let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::uniform(&sys, Exact::frac(1, 3)));
        let rep = sl2_commutators(&ctx, 3).unwrap();
        assert!(rep.is_sl2(), "{rep}");
        assert!(rep.holds("[F,H] = 2F"));
        assert!(!rep.holds("[E,H] = 2E"));
    }

    #[test]
    fn group_equivariance_and_commutativity() {
        let sys = build_b(1);
        let k = MultiplicityFunction::per_orbit(&sys, vec![Exact::int(1), Exact::frac(1, 2)]).unwrap();
        let ctx = DunklContext::new(sys.clone(), k);
        let grp = generate_group(&sys, DEFAULT_GROUP_CAP).unwrap();
        let p = mono(&[2, 1, 1]).add(&mono(&[0, 3, 0]));
        for g in grp.elements() {
            assert!(equivariance_check(&ctx, g, &p).unwrap().is_zero());
            assert!(dunkl_equivariance_check(&ctx, g, &ints(&[1, 2, -1]), &p).unwrap().is_zero());
        }
        assert!(commutativity_check(&ctx, &ints(&[1, 0, 0]), &ints(&[0, 1, 2]), &p).unwrap().is_zero());
    }
}
