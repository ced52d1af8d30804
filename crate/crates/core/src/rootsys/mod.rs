//! Roots in R^{n+1,1}, root-system validation, orbits and multiplicities.
//!
//! Roots live in the Euclidean subspace `X⁰ = X^∞`, so every root has the
//! shape `(α₀, α₁, …, αₙ, α₀)` and `⟨α,α⟩ = 2α₀² + Σαᵢ² > 0`. Roots are stored
//! unnormalized; every formula carries `⟨α,α⟩` explicitly.

mod builtin;
mod chart;
mod group;
mod io;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::ambient::{lower, pair_slices, AmbientVector};
use crate::linalg::Matrix;
use crate::scalar::{Exact, Scalar};

pub use builtin::{a1, b_embedded, b_euclidean, build_b, by_name};
pub use chart::{chart_reflection, hyperplane_basis, quadric_value, ChartReflection, SubsphereQuadric};
pub use group::{generate_group, ReflectionGroup, DEFAULT_GROUP_CAP};
pub use io::{parse_assignments, parse_roots, write_assignments, write_roots};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("root {0:?} is not in the Euclidean subspace (first and last coordinates differ)")]
    NotEuclidean(Vec<Exact>),
    #[error("null root")]
    NullRoot,
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("root system axioms violated: {0}")]
    Invalid(ValidationReport),
    #[error("group generation exceeded {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("multiplicity function needs {expected} orbit values, got {got}")]
    MultiplicityCount { expected: usize, got: usize },
    #[error("multiplicity is not constant on orbit {orbit}")]
    NotOrbitInvariant { orbit: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("chart reflection sends the point to infinity (J = 0) for root {root}")]
    PointAtInfinity { root: String },
}

/// Which half of the boundary-level B_{n+1} split a root belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootTag {
    /// `α₀ = 0`: a Euclidean reflection of the chart.
    Bn,
    /// `α₀ ≠ 0`: induces a rational (inversion-type) map on the chart.
    S,
}

impl fmt::Display for RootTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootTag::Bn => "B_n",
            RootTag::S => "S",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    vector: Vec<Exact>,
    covector: Vec<Exact>,
    norm: Exact,
}

impl Root {
    pub fn new(coords: Vec<Exact>) -> Result<Root, RootError> {
        if coords.len() < 3 {
            return Err(RootError::Dimension { expected: 3, got: coords.len() });
        }
        if coords[0] != coords[coords.len() - 1] {
            return Err(RootError::NotEuclidean(coords));
        }
        let norm = pair_slices(&coords, &coords);
        if norm.is_zero() {
            return Err(RootError::NullRoot);
        }
        debug_assert!(norm.signum() > 0);
        let covector = lower(&coords);
        Ok(Root { vector: coords, covector, norm })
    }

    /// Builds `(α₀, ᾱ, α₀)`.
    pub fn from_parts(alpha0: Exact, euclidean: &[Exact]) -> Result<Root, RootError> {
        let mut v = Vec::with_capacity(euclidean.len() + 2);
        v.push(alpha0.clone());
        v.extend_from_slice(euclidean);
        v.push(alpha0);
        Root::new(v)
    }

    pub fn n(&self) -> usize {
        self.vector.len() - 2
    }

    pub fn coords(&self) -> &[Exact] {
        &self.vector
    }

    /// Coefficients of the linear form `X ↦ ⟨α,X⟩`.
    pub fn covector(&self) -> &[Exact] {
        &self.covector
    }

    /// `⟨α,α⟩`.
    pub fn norm(&self) -> &Exact {
        &self.norm
    }

    pub fn alpha0(&self) -> &Exact {
        &self.vector[0]
    }

    pub fn euclidean(&self) -> &[Exact] {
        &self.vector[1..self.vector.len() - 1]
    }

    pub fn is_euclidean(&self) -> bool {
        self.alpha0().is_zero()
    }

    pub fn tag(&self) -> RootTag {
        if self.is_euclidean() {
            RootTag::Bn
        } else {
            RootTag::S
        }
    }

    pub fn as_vector<S: Scalar>(&self) -> AmbientVector<S> {
        AmbientVector { coords: self.vector.iter().map(S::from_exact).collect() }
    }

    pub fn neg(&self) -> Root {
        Root {
            vector: self.vector.iter().map(|c| -c).collect(),
            covector: self.covector.iter().map(|c| -c).collect(),
            norm: self.norm.clone(),
        }
    }

    /// `α₀ = √(½(⟨α,α⟩ − Σαᵢ²))`, up to sign.
    pub fn alpha0_from_length(&self) -> f64 {
        let eu: Exact = self.euclidean().iter().fold(Exact::int(0), |s, a| &s + &(a * a));
        (0.5 * (&self.norm - &eu).to_f64()).sqrt()
    }

    /// Exact form of the same relation: `α₀² = ½(⟨α,α⟩ − Σαᵢ²)`.
    pub fn alpha0_squared_from_length(&self) -> Exact {
        let eu: Exact = self.euclidean().iter().fold(Exact::int(0), |s, a| &s + &(a * a));
        &(&self.norm - &eu) / &Exact::int(2)
    }

    /// First nonzero coordinate is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.vector.iter().find(|c| !c.is_zero()).is_some_and(|c| c.signum() > 0)
    }

    /// `⟨α, x⟩` for a point in any scalar mode.
    pub fn pair_with<S: Scalar>(&self, x: &[S]) -> S {
        self.covector.iter().zip(x).fold(S::zero(), |acc, (c, xi)| {
            if c.is_zero() {
                acc
            } else {
                acc + S::from_exact(c) * xi.clone()
            }
        })
    }

    /// `R_α X = X − 2(⟨α,X⟩/⟨α,α⟩)α`.
    pub fn reflect<S: Scalar>(&self, x: &AmbientVector<S>) -> AmbientVector<S> {
        let f = S::from_i64(2) * self.pair_with(&x.coords) / S::from_exact(&self.norm);
        AmbientVector {
            coords: x.coords.iter().zip(&self.vector).map(|(xi, ai)| xi.clone() - f.clone() * S::from_exact(ai)).collect(),
        }
    }

    /// Matrix of `R_α` acting on column vectors.
    pub fn reflection_matrix(&self) -> Matrix<Exact> {
        let d = self.vector.len();
        let two_over = &Exact::int(2) / &self.norm;
        (0..d)
            .map(|a| {
                let s = &two_over * &self.vector[a];
                (0..d)
                    .map(|b| {
                        let off = &s * &self.covector[b];
                        if a == b {
                            &Exact::int(1) - &off
                        } else {
                            -off
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vector.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Reflection along an arbitrary vector; fails for null vectors.
pub fn reflect<S: Scalar>(alpha: &AmbientVector<S>, x: &AmbientVector<S>) -> Result<AmbientVector<S>, RootError> {
    if alpha.len() != x.len() {
        return Err(RootError::Dimension { expected: alpha.len(), got: x.len() });
    }
    let nn = pair_slices(&alpha.coords, &alpha.coords);
    if nn.is_zero() {
        return Err(RootError::NullRoot);
    }
    let f = S::from_i64(2) * pair_slices(&alpha.coords, &x.coords) / nn;
    Ok(x.sub(&alpha.scale(&f)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Duplicate { root: usize },
    /// `R ∩ Rα` contains a multiple other than `±α`.
    ExtraMultiple { root: usize, other: usize },
    MissingNegative { root: usize },
    /// `R_α(β) ∉ R`.
    NotClosed { mirror: usize, root: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("empty root set");
        }
        let shown: Vec<String> = self.violations.iter().take(8).map(|v| format!("{v:?}")).collect();
        write!(f, "{} violation(s): {}", self.violations.len(), shown.join("; "))
    }
}

/// A validated root system with its chosen positive half and group orbits.
#[derive(Clone, Debug)]
pub struct RootSystem {
    n: usize,
    roots: Vec<Root>,
    positive: Vec<usize>,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    name: String,
}

/// Checks both axioms and, on success, computes orbits and the lexicographic positive half.
pub fn validate_root_system(roots: Vec<Root>) -> Result<RootSystem, RootError> {
    let Some(first) = roots.first() else {
        return Err(RootError::Invalid(ValidationReport::default()));
    };
    let n = first.n();
    if let Some(bad) = roots.iter().find(|r| r.n() != n) {
        return Err(RootError::Dimension { expected: n + 2, got: bad.n() + 2 });
    }
    let index: HashMap<&[Exact], usize> = roots.iter().enumerate().map(|(i, r)| (r.coords(), i)).collect();
    let mut violations = Vec::new();
    if index.len() != roots.len() {
        for (i, r) in roots.iter().enumerate() {
            if index[r.coords()] != i {
                violations.push(Violation::Duplicate { root: i });
            }
        }
    }
    for (i, a) in roots.iter().enumerate() {
        if !index.contains_key(a.neg().coords()) {
            violations.push(Violation::MissingNegative { root: i });
        }
        for (j, b) in roots.iter().enumerate().skip(i + 1) {
            if let Some(c) = proportionality(a.coords(), b.coords()) {
                if c != Exact::int(1) && c != Exact::int(-1) {
                    violations.push(Violation::ExtraMultiple { root: i, other: j });
                }
            }
        }
    }
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            let img = a.reflect::<Exact>(&b.as_vector());
            if !index.contains_key(img.coords.as_slice()) {
                violations.push(Violation::NotClosed { mirror: i, root: j });
            }
        }
    }
    if !violations.is_empty() {
        return Err(RootError::Invalid(ValidationReport { violations }));
    }
    let orbit_of_raw = orbit_partition(&roots, &index);
    // orbits: longest roots first, then by first member
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &o) in orbit_of_raw.iter().enumerate() {
        groups.entry(o).or_default().push(i);
    }
    let mut orbits: Vec<Vec<usize>> = groups.into_values().collect();
    orbits.sort_by(|x, y| roots[y[0]].norm().cmp(roots[x[0]].norm()).then(x[0].cmp(&y[0])));
    let mut orbit_of = vec![0; roots.len()];
    for (k, members) in orbits.iter().enumerate() {
        for &i in members {
            orbit_of[i] = k;
        }
    }
    let positive = (0..roots.len()).filter(|&i| roots[i].is_lex_positive()).collect();
    Ok(RootSystem { n, roots, positive, orbit_of, orbits, name: "custom".into() })
}

/// `Some(c)` with `b = c·a`, if the vectors are proportional.
fn proportionality(a: &[Exact], b: &[Exact]) -> Option<Exact> {
    let p = a.iter().position(|x| !x.is_zero())?;
    let c = &b[p] / &a[p];
    a.iter().zip(b).all(|(x, y)| &(&c * x) == y).then_some(c)
}

fn orbit_partition(roots: &[Root], index: &HashMap<&[Exact], usize>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..roots.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for a in roots {
        for (j, b) in roots.iter().enumerate() {
            let img = a.reflect::<Exact>(&b.as_vector());
            let k = index[img.coords.as_slice()];
            let (rj, rk) = (find(&mut parent, j), find(&mut parent, k));
            if rj != rk {
                parent[rj.max(rk)] = rj.min(rk);
            }
        }
    }
    (0..roots.len()).map(|i| find(&mut parent, i)).collect()
}

impl RootSystem {
    /// Chart dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_indices(&self) -> &[usize] {
        &self.positive
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.positive.iter().map(|&i| &self.roots[i])
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive.binary_search(&i).is_ok()
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn index_of(&self, coords: &[Exact]) -> Option<usize> {
        self.roots.iter().position(|r| r.coords() == coords)
    }

    /// The same system with `R₊` replaced by `−R₊`.
    pub fn with_opposite_positive(&self) -> RootSystem {
        let mut out = self.clone();
        out.positive = (0..self.roots.len()).filter(|&i| !self.roots[i].is_lex_positive()).collect();
        out
    }

    pub fn generators(&self) -> Vec<Matrix<Exact>> {
        self.positive_roots().map(Root::reflection_matrix).collect()
    }
}

/// `k: [R] → Q(√2)`, one value per orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityFunction {
    values: Vec<Exact>,
}

impl MultiplicityFunction {
    pub fn per_orbit(sys: &RootSystem, values: Vec<Exact>) -> Result<Self, RootError> {
        if values.len() != sys.orbits().len() {
            return Err(RootError::MultiplicityCount { expected: sys.orbits().len(), got: values.len() });
        }
        Ok(MultiplicityFunction { values })
    }

    pub fn zero(sys: &RootSystem) -> Self {
        Self::uniform(sys, Exact::int(0))
    }

    pub fn uniform(sys: &RootSystem, k: Exact) -> Self {
        MultiplicityFunction { values: vec![k; sys.orbits().len()] }
    }

    /// Assigns per-root values, rejecting any that vary within an orbit.
    pub fn from_root_values(sys: &RootSystem, per_root: &[Exact]) -> Result<Self, RootError> {
        if per_root.len() != sys.len() {
            return Err(RootError::MultiplicityCount { expected: sys.len(), got: per_root.len() });
        }
        let mut values = Vec::with_capacity(sys.orbits().len());
        for (o, members) in sys.orbits().iter().enumerate() {
            let v = &per_root[members[0]];
            if members.iter().any(|&i| &per_root[i] != v) {
                return Err(RootError::NotOrbitInvariant { orbit: o });
            }
            values.push(v.clone());
        }
        Ok(MultiplicityFunction { values })
    }

    pub fn values(&self) -> &[Exact] {
        &self.values
    }

    pub fn on_orbit(&self, orbit: usize) -> &Exact {
        &self.values[orbit]
    }

    /// `k(α)` for the root with index `i`.
    pub fn of_root(&self, sys: &RootSystem, i: usize) -> &Exact {
        &self.values[sys.orbit_of(i)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// `γ_k = Σ_{α∈R₊} k(α)`.
pub fn gamma(sys: &RootSystem, k: &MultiplicityFunction) -> Exact {
    sys.positive_indices().iter().fold(Exact::int(0), |acc, &i| &acc + k.of_root(sys, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Exact> {
        v.iter().map(|&k| Exact::int(k)).collect()
    }

    fn root(v: &[i64]) -> Root {
        Root::new(ints(v)).unwrap()
    }

    #[test]
    fn root_construction_checks() {
        assert_eq!(Root::new(ints(&[1, 0, 0, 2])).unwrap_err(), RootError::NotEuclidean(ints(&[1, 0, 0, 2])));
        assert_eq!(Root::new(ints(&[0, 0, 0, 0])).unwrap_err(), RootError::NullRoot);
        let r = root(&[1, 2, -1, 1]);
        assert_eq!(r.norm(), &Exact::int(7));
        assert_eq!(r.alpha0_squared_from_length(), Exact::int(1));
        assert!((r.alpha0_from_length() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reflection_examples() {
        let a = root(&[0, 1, 0, 0]);
        let x: AmbientVector<Exact> = AmbientVector { coords: ints(&[0, 1, 0, 0]) };
        assert_eq!(a.reflect(&x).coords, ints(&[0, -1, 0, 0]));
        let b = root(&[1, 0, 0, 1]);
        let y: AmbientVector<Exact> = AmbientVector { coords: ints(&[1, 1, 1, -1]) };
        assert_eq!(b.pair_with(&y.coords), Exact::int(0));
        assert_eq!(b.reflect(&y), y);
        let null = AmbientVector { coords: ints(&[1, 0, 0, 0]) };
        assert_eq!(reflect(&null, &y).unwrap_err(), RootError::NullRoot);
    }

    #[test]
    fn axioms_are_checked() {
        let err = validate_root_system(vec![root(&[0, 1, 0, 0])]).unwrap_err();
        let RootError::Invalid(rep) = err else { panic!() };
        assert!(rep.violations.contains(&Violation::MissingNegative { root: 0 }));

        let err = validate_root_system(vec![root(&[0, 1, 0, 0]), root(&[0, -1, 0, 0]), root(&[0, 2, 0, 0]), root(&[0, -2, 0, 0])])
            .unwrap_err();
        let RootError::Invalid(rep) = err else { panic!() };
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::ExtraMultiple { .. })));

        // {±e₁, ±e₂, e₁+e₂} without e₁−e₂ is not closed
        let err = validate_root_system(vec![
            root(&[0, 1, 0, 0]),
            root(&[0, -1, 0, 0]),
            root(&[0, 0, 1, 0]),
            root(&[0, 0, -1, 0]),
            root(&[0, 1, 1, 0]),
            root(&[0, -1, -1, 0]),
        ])
        .unwrap_err();
        let RootError::Invalid(rep) = err else { panic!() };
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::NotClosed { .. })));
    }

    #[test]
    fn gamma_examples() {
        let b2 = b_euclidean(2, 2);
        assert_eq!(gamma(&b2, &MultiplicityFunction::zero(&b2)), Exact::int(0));
        assert_eq!(gamma(&b2, &MultiplicityFunction::uniform(&b2, Exact::frac(1, 2))), Exact::int(2));
        let k = MultiplicityFunction::per_orbit(&b2, ints(&[1, 2])).unwrap();
        assert_eq!(gamma(&b2, &k), Exact::int(6));
        // opposite positive half gives the same sum
        assert_eq!(gamma(&b2.with_opposite_positive(), &k), Exact::int(6));
    }

    #[test]
    fn orbits_put_long_roots_first() {
        let b2 = b_euclidean(2, 2);
        assert_eq!(b2.orbits().len(), 2);
        assert_eq!(b2.roots()[b2.orbits()[0][0]].norm(), &Exact::int(2));
        assert_eq!(b2.orbits()[0].len(), 4);
        assert_eq!(b2.positive_indices().len(), 4);
    }

    #[test]
    fn multiplicity_must_be_orbit_constant() {
        let b2 = b_euclidean(2, 2);
        let mut per_root = vec![Exact::int(1); b2.len()];
        per_root[b2.orbits()[1][0]] = Exact::int(3);
        assert!(matches!(MultiplicityFunction::from_root_values(&b2, &per_root), Err(RootError::NotOrbitInvariant { .. })));
        assert!(matches!(
            MultiplicityFunction::per_orbit(&b2, vec![Exact::int(1)]),
            Err(RootError::MultiplicityCount { expected: 2, got: 1 })
        ));
    }
}
