//! Sparse multivariate polynomials with exact Q(√2) coefficients.
//!
//! Monomials pack up to [`MAX_VARS`] exponents of 7 bits each into a `u64`,
//! variable 0 in the most significant field, so the integer order is lex order
//! and multiplication is addition (guarded by a total-degree bound).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::scalar::{Exact, Scalar};

pub const MAX_VARS: usize = 9;
pub const MAX_DEGREE: u32 = 127;
const BITS: u32 = 7;
const MASK: u64 = (1 << BITS) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("not divisible by the linear form; remainder {remainder}")]
    NotDivisible { remainder: MultiPoly },
    #[error("division by the zero linear form")]
    ZeroDivisor,
    #[error("expected {expected} variables, got {got}")]
    VarCount { expected: usize, got: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    #[inline]
    fn shift(i: usize) -> u32 {
        (MAX_VARS - 1 - i) as u32 * BITS
    }

    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} exceeds {MAX_VARS}");
        Monomial(1 << Self::shift(i))
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS);
        assert!(e.iter().sum::<u32>() <= MAX_DEGREE, "total degree exceeds {MAX_DEGREE}");
        Monomial(e.iter().enumerate().fold(0, |acc, (i, &k)| acc | ((k as u64) << Self::shift(i))))
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & MASK) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    #[inline]
    pub fn times(self, other: Monomial) -> Monomial {
        debug_assert!(self.degree() + other.degree() <= MAX_DEGREE);
        Monomial(self.0 + other.0)
    }

    /// Lowers the exponent of variable `i` by one.
    #[inline]
    pub fn div_var(self, i: usize) -> Option<Monomial> {
        (self.exp(i) > 0).then(|| Monomial(self.0 - (1 << Self::shift(i))))
    }

    /// All monomials in `nvars` variables of total degree exactly `d`.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur.push(left);
                out.push(Monomial::from_exponents(cur));
                cur.pop();
                return;
            }
            for k in (0..=left).rev() {
                cur.push(k);
                rec(nvars, i + 1, left - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if nvars > 0 {
            rec(nvars, 0, d, &mut Vec::new(), &mut out);
        } else if d == 0 {
            out.push(Monomial::ONE);
        }
        out
    }

    /// All monomials of total degree `≤ d`.
    pub fn up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::of_degree(nvars, k)).collect()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

/// An exact polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Exact>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Exact) -> Self {
        MultiPoly::term(nvars, Monomial::ONE, c)
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Exact::int(1))
    }

    pub fn term(nvars: usize, m: Monomial, c: Exact) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(m, &c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        MultiPoly::term(nvars, Monomial::var(i), Exact::int(1))
    }

    /// `Σ coeffs[i] Xⁱ`.
    pub fn linear(coeffs: &[Exact]) -> Self {
        let mut p = MultiPoly::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Exact)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Exact)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Exact {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_insert_with(|| MultiPoly::zero(self.nvars)).add_term(*m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: &Exact) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable counts");
    }

    pub fn add_assign(&mut self, other: &MultiPoly) {
        self.check_vars(other);
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub_assign(&mut self, other: &MultiPoly) {
        self.check_vars(other);
        for (m, c) in &other.terms {
            self.add_term(*m, &-c);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Exact, other: &MultiPoly) {
        self.check_vars(other);
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(*m, &(c * a));
        }
    }

    /// `self += c · X^shift · other`.
    fn add_scaled_shifted(&mut self, c: &Exact, shift: Monomial, other: &MultiPoly) {
        for (m, a) in &other.terms {
            self.add_term(m.times(shift), &(c * a));
        }
    }

    pub fn scale(&self, c: &Exact) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (*m, c * a)).collect() }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (*m, -a)).collect() }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            assert!(a + b <= MAX_DEGREE, "product degree exceeds {MAX_DEGREE}");
        }
        let mut acc: HashMap<Monomial, Exact> = HashMap::with_capacity(small.len() * large.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let prod = c1 * c2;
                acc.entry(m1.times(*m2)).and_modify(|v| *v += &prod).or_insert(prod);
            }
        }
        MultiPoly { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂Xⁱ`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.exp(i);
            if let Some(dm) = m.div_var(i) {
                out.terms.insert(dm, c * &Exact::int(k as i64));
            }
        }
        out
    }

    /// Directional derivative `∂_ξ = Σ ξⁱ ∂/∂Xⁱ`.
    pub fn directional(&self, xi: &[Exact]) -> MultiPoly {
        assert_eq!(xi.len(), self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (i, c) in xi.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &self.partial(i));
            }
        }
        out
    }

    /// Euler operator `Σ Xⁱ ∂/∂Xⁱ`: multiplies each degree-`d` term by `d`.
    pub fn euler(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(*m, &(c * &Exact::int(m.degree() as i64)));
        }
        out
    }

    /// `(p∘M)(X) = p(MX)` for a square matrix `M` (row `a` gives the new `Xᵃ`).
    pub fn compose_linear(&self, m: &[Vec<Exact>]) -> MultiPoly {
        assert_eq!(m.len(), self.nvars);
        let forms: Vec<MultiPoly> = m.iter().map(|row| MultiPoly::linear(row)).collect();
        let mut powers: Vec<Vec<MultiPoly>> = forms.iter().map(|f| vec![MultiPoly::one(self.nvars), f.clone()]).collect();
        let mut out = MultiPoly::zero(self.nvars);
        for (mono, c) in &self.terms {
            let mut prod = MultiPoly::constant(self.nvars, c.clone());
            for (a, pw) in powers.iter_mut().enumerate() {
                let e = mono.exp(a) as usize;
                while pw.len() <= e {
                    let next = pw[pw.len() - 1].mul(&forms[a]);
                    pw.push(next);
                }
                if e > 0 {
                    prod = prod.mul(&pw[e]);
                }
            }
            out.add_assign(&prod);
        }
        out
    }

    /// `p(X − 2(⟨α,X⟩/⟨α,α⟩)α)` given the root `α` and its covector `ℓ = ⟨α,·⟩`.
    ///
    /// Exact Taylor expansion along `α`: `Σₘ (−2ℓ/⟨α,α⟩)ᵐ/m! ∂_αᵐ p`.
    pub fn reflect(&self, alpha: &[Exact], covector: &[Exact], norm: &Exact) -> MultiPoly {
        let ell = MultiPoly::linear(covector);
        let step = -(&Exact::int(2) / norm);
        let mut out = self.clone();
        let mut deriv = self.clone();
        let mut ell_pow = MultiPoly::one(self.nvars);
        let mut coef = Exact::int(1);
        let mut m = 0i64;
        loop {
            deriv = deriv.directional(alpha);
            if deriv.is_zero() {
                break;
            }
            m += 1;
            coef = &(&coef * &step) / &Exact::int(m);
            ell_pow = ell_pow.mul(&ell);
            out.add_scaled(&coef, &ell_pow.mul(&deriv));
        }
        out
    }

    /// Exact quotient `q` with `self = ℓ · q`; errors with the remainder otherwise.
    pub fn divide_by_linear(&self, ell: &[Exact]) -> Result<MultiPoly, PolyError> {
        if ell.len() != self.nvars {
            return Err(PolyError::VarCount { expected: self.nvars, got: ell.len() });
        }
        let Some(v) = ell.iter().position(|c| !c.is_zero()) else {
            return Err(PolyError::ZeroDivisor);
        };
        let lead_inv = ell[v].inv().expect("nonzero");
        let rest: Vec<(usize, Exact)> =
            ell.iter().enumerate().filter(|&(i, c)| i != v && !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some(top) = rem.terms.keys().map(|m| m.exp(v)).max().filter(|&d| d > 0) {
            let lead: Vec<(Monomial, Exact)> =
                rem.terms.iter().filter(|(m, _)| m.exp(v) == top).map(|(m, c)| (*m, c.clone())).collect();
            for (m, c) in lead {
                let qm = m.div_var(v).expect("positive exponent");
                let qc = &c * &lead_inv;
                rem.terms.remove(&m);
                for (i, li) in &rest {
                    rem.add_term(qm.times(Monomial::var(*i)), &-(&qc * li));
                }
                quot.add_term(qm, &qc);
            }
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(PolyError::NotDivisible { remainder: rem })
        }
    }

    /// Multiplies by the linear form `ℓ`.
    pub fn mul_linear(&self, ell: &[Exact]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (i, c) in ell.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_shifted(c, Monomial::var(i), self);
            }
        }
        out
    }

    pub fn eval<S: Scalar>(&self, x: &[S]) -> Result<S, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::VarCount { expected: self.nvars, got: x.len() });
        }
        let deg = self.terms.keys().map(|m| (0..self.nvars).map(|i| m.exp(i)).max().unwrap_or(0)).max().unwrap_or(0);
        let powers: Vec<Vec<S>> = x
            .iter()
            .map(|xi| {
                let mut v = vec![S::one()];
                for k in 1..=deg as usize {
                    let next = v[k - 1].clone() * xi.clone();
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::from_exact(c);
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = t * pw[e].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let cs = if c.is_rational() { cs } else { format!("({cs})") };
            if k > 0 {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = (0..self.nvars)
                .filter(|&i| m.exp(i) > 0)
                .map(|i| if m.exp(i) == 1 { format!("X{i}") } else { format!("X{i}^{}", m.exp(i)) })
                .collect();
            if vars.is_empty() {
                f.write_str(&cs)?;
            } else if c.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{}*{}", cs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, Exact::int(v))
    }

    fn ints(v: &[i64]) -> Vec<Exact> {
        v.iter().map(|&k| Exact::int(k)).collect()
    }

    #[test]
    fn monomial_packing() {
        let m = Monomial::from_exponents(&[1, 0, 3, 2]);
        assert_eq!(m.exponents(4), vec![1, 0, 3, 2]);
        assert_eq!(m.degree(), 6);
        assert_eq!(m.times(Monomial::var(1)).exponents(4), vec![1, 1, 3, 2]);
        assert!(Monomial::var(0) > Monomial::var(1));
        assert_eq!(Monomial::of_degree(4, 2).len(), 10);
        assert_eq!(Monomial::up_to_degree(5, 6).len(), 462);
    }

    #[test]
    fn difference_of_squares() {
        let n = 4;
        let p = x(n, 1).mul(&x(n, 1)).sub(&x(n, 2).mul(&x(n, 2)));
        let q = p.divide_by_linear(&ints(&[0, 1, -1, 0])).unwrap();
        assert_eq!(q, x(n, 1).add(&x(n, 2)));
    }

    #[test]
    fn reflection_difference_of_cube() {
        // f = (X¹)³, α = e₁: f − f∘R_α = 2(X¹)³, quotient by X¹ is 2(X¹)²
        let n = 4;
        let f = x(n, 1).pow(3);
        let alpha = ints(&[0, 1, 0, 0]);
        let reflected = f.reflect(&alpha, &alpha, &Exact::int(1));
        assert_eq!(reflected, f.neg());
        let diff = f.sub(&reflected);
        assert_eq!(diff, f.scale(&Exact::int(2)));
        assert_eq!(diff.divide_by_linear(&alpha).unwrap(), x(n, 1).pow(2).scale(&Exact::int(2)));
    }

    #[test]
    fn non_divisible_reports_remainder() {
        let n = 4;
        match x(n, 1).divide_by_linear(&ints(&[0, 0, 1, 0])) {
            Err(PolyError::NotDivisible { remainder }) => assert_eq!(remainder, x(n, 1)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(x(n, 1).divide_by_linear(&ints(&[0, 0, 0, 0])), Err(PolyError::ZeroDivisor));
    }

    #[test]
    fn euler_examples() {
        let n = 4;
        let p = x(n, 0).mul(&x(n, 3));
        assert_eq!(p.euler(), p.scale(&Exact::int(2)));
        assert!(c(n, 1).euler().is_zero());
        let q = x(n, 1).pow(3).mul(&x(n, 2));
        assert_eq!(q.euler(), q.scale(&Exact::int(4)));
    }

    #[test]
    fn compose_matches_reflect() {
        // reflection in α = (1,0,0,1) under the standard form, as a matrix
        let n = 4;
        let alpha = ints(&[1, 0, 0, 1]);
        let cov = ints(&[1, 0, 0, 1]); // lowered: swap first/last
        let norm = Exact::int(2);
        let mut m = vec![vec![Exact::int(0); n]; n];
        for a in 0..n {
            for b in 0..n {
                let id = if a == b { Exact::int(1) } else { Exact::int(0) };
                m[a][b] = &id - &(&(&Exact::int(2) * &alpha[a]) * &cov[b] / norm.clone());
            }
        }
        let p = x(n, 0).pow(2).mul(&x(n, 1)).add(&x(n, 3).mul(&x(n, 2)).scale(&Exact::frac(3, 2)));
        assert_eq!(p.compose_linear(&m), p.reflect(&alpha, &cov, &norm));
    }

    #[test]
    fn display_is_readable() {
        let n = 3;
        let p = x(n, 0).pow(2).scale(&Exact::frac(1, 2)).add(&c(n, -3));
        assert_eq!(p.to_string(), "1/2*X0^2 + -3");
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, n), -5i64..6, 1i64..4), 0..5).prop_map(move |ts| {
            MultiPoly::from_terms(n, ts.into_iter().map(|(e, p, q)| (Monomial::from_exponents(&e), Exact::frac(p, q))))
        })
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Exact>>> {
        prop::collection::vec(prop::collection::vec((-2i64..3).prop_map(Exact::int), n), n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(p in arb_poly(3), q in arb_poly(3), r in arb_poly(3)) {
            prop_assert_eq!(p.add(&q), q.add(&p));
            prop_assert_eq!(p.mul(&q), q.mul(&p));
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            prop_assert!(p.sub(&p).is_zero());
            prop_assert_eq!(p.mul(&MultiPoly::one(3)), p.clone());
        }

        #[test]
        fn leibniz(p in arb_poly(3), q in arb_poly(3), i in 0usize..3) {
            prop_assert_eq!(p.mul(&q).partial(i), p.partial(i).mul(&q).add(&p.mul(&q.partial(i))));
        }

        #[test]
        fn compose_is_functorial(p in arb_poly(3), a in arb_matrix(3), b in arb_matrix(3)) {
            let ab: Vec<Vec<Exact>> = (0..3)
                .map(|i| (0..3).map(|j| (0..3).fold(Exact::int(0), |s, k| &s + &(&a[i][k] * &b[k][j]))).collect())
                .collect();
            // p(ABX) = (p∘A)(BX)
            prop_assert_eq!(p.compose_linear(&ab), p.compose_linear(&a).compose_linear(&b));
        }

        #[test]
        fn divide_undoes_multiply(q in arb_poly(4), l in prop::collection::vec(-3i64..4, 4)) {
            let ell = ints(&l);
            prop_assume!(ell.iter().any(|c| !c.is_zero()));
            prop_assert_eq!(q.mul_linear(&ell).divide_by_linear(&ell).unwrap(), q);
        }

        #[test]
        fn eval_is_a_homomorphism(p in arb_poly(3), q in arb_poly(3), pt in prop::collection::vec(-4i64..5, 3)) {
            let pt = ints(&pt);
            let lhs = p.mul(&q).eval(&pt).unwrap();
            prop_assert_eq!(lhs, &p.eval(&pt).unwrap() * &q.eval(&pt).unwrap());
        }
    }
}
