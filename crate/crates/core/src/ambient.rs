//! The flat ambient space R^{n+1,1} and its null-cone adapted coordinates.
//!
//! Coordinates are ordered `(X⁰, X¹, …, Xⁿ, X^∞)`. In the standard basis the
//! form is `⟨X,Y⟩ = X⁰Y^∞ + X^∞Y⁰ + Σ XⁱYⁱ`; in the tilde basis
//! `X̃⁰ = (X⁰+X^∞)/√2`, `X̃^∞ = (X⁰−X^∞)/√2` it is `diag(1,…,1,−1)`.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmbientError {
    #[error("dimension mismatch: {left} vs {right} coordinates")]
    DimensionMismatch { left: usize, right: usize },
    #[error("point outside the chart-adapted region (X⁰ = 0)")]
    OutsideChart,
    #[error("ambient vectors need at least 3 coordinates, got {0}")]
    TooShort(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisMode {
    Standard,
    Tilde,
}

/// The signature-(n+1,1) form, parameterized by the chart dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    pub n: usize,
    pub mode: BasisMode,
}

impl BilinearForm {
    pub fn standard(n: usize) -> Self {
        BilinearForm { n, mode: BasisMode::Standard }
    }

    pub fn tilde(n: usize) -> Self {
        BilinearForm { n, mode: BasisMode::Tilde }
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn gram<S: Scalar>(&self) -> Vec<Vec<S>> {
        let d = self.dim();
        let mut g = vec![vec![S::zero(); d]; d];
        match self.mode {
            BasisMode::Standard => {
                g[0][d - 1] = S::one();
                g[d - 1][0] = S::one();
                for (i, row) in g.iter_mut().enumerate().take(d - 1).skip(1) {
                    row[i] = S::one();
                }
            }
            BasisMode::Tilde => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = if i == d - 1 { -S::one() } else { S::one() };
                }
            }
        }
        g
    }

    /// `(positive, negative)` index of inertia; the hyperbolic `X⁰X^∞` block contributes one of each.
    pub fn signature(&self) -> (usize, usize) {
        (self.n + 1, 1)
    }

    pub fn pair<S: Scalar>(&self, u: &AmbientVector<S>, v: &AmbientVector<S>) -> Result<S, AmbientError> {
        let d = self.dim();
        if u.len() != d {
            return Err(AmbientError::DimensionMismatch { left: u.len(), right: d });
        }
        if v.len() != d {
            return Err(AmbientError::DimensionMismatch { left: v.len(), right: d });
        }
        Ok(match self.mode {
            BasisMode::Standard => pair_slices(&u.coords, &v.coords),
            BasisMode::Tilde => {
                let mut acc = -(u.coords[d - 1].clone() * v.coords[d - 1].clone());
                for i in 0..d - 1 {
                    acc = acc + u.coords[i].clone() * v.coords[i].clone();
                }
                acc
            }
        })
    }
}

/// Standard-basis pairing of raw coordinate slices of equal length.
pub(crate) fn pair_slices<S: Scalar>(u: &[S], v: &[S]) -> S {
    let d = u.len();
    let mut acc = u[0].clone() * v[d - 1].clone() + u[d - 1].clone() * v[0].clone();
    for i in 1..d - 1 {
        acc = acc + u[i].clone() * v[i].clone();
    }
    acc
}

/// Lowers an index: the covector `⟨u, ·⟩` in standard coordinates.
pub(crate) fn lower<S: Scalar>(u: &[S]) -> Vec<S> {
    let d = u.len();
    let mut out = u.to_vec();
    out.swap(0, d - 1);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientVector<S> {
    pub coords: Vec<S>,
}

impl<S: Scalar> AmbientVector<S> {
    pub fn new(coords: Vec<S>) -> Result<Self, AmbientError> {
        if coords.len() < 3 {
            return Err(AmbientError::TooShort(coords.len()));
        }
        Ok(AmbientVector { coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Chart dimension `n`.
    pub fn n(&self) -> usize {
        self.coords.len() - 2
    }

    pub fn x0(&self) -> &S {
        &self.coords[0]
    }

    pub fn xinf(&self) -> &S {
        &self.coords[self.coords.len() - 1]
    }

    pub fn euclidean(&self) -> &[S] {
        &self.coords[1..self.coords.len() - 1]
    }

    pub fn scale(&self, c: &S) -> Self {
        AmbientVector { coords: self.coords.iter().map(|x| c.clone() * x.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        AmbientVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AmbientVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    /// Coordinates in the tilde basis, where the form is `diag(1,…,1,−1)`.
    pub fn to_tilde(&self) -> Self {
        let d = self.len();
        let s = S::sqrt2();
        let mut c = self.coords.clone();
        c[0] = (self.coords[0].clone() + self.coords[d - 1].clone()) / s.clone();
        c[d - 1] = (self.coords[0].clone() - self.coords[d - 1].clone()) / s;
        AmbientVector { coords: c }
    }

    /// The tilde change of basis is an involution.
    pub fn from_tilde(&self) -> Self {
        self.to_tilde()
    }

    /// The null-cone representative `(1, x, −½‖x‖²)` of a chart point.
    pub fn cone_point(x: &[S]) -> Self {
        let mut coords = Vec::with_capacity(x.len() + 2);
        coords.push(S::one());
        coords.extend(x.iter().cloned());
        coords.push(-(norm_sq(x) / S::from_i64(2)));
        AmbientVector { coords }
    }
}

/// ⟨u,v⟩ in the standard basis.
pub fn pair<S: Scalar>(u: &AmbientVector<S>, v: &AmbientVector<S>) -> Result<S, AmbientError> {
    if u.len() != v.len() {
        return Err(AmbientError::DimensionMismatch { left: u.len(), right: v.len() });
    }
    BilinearForm::standard(u.n()).pair(u, v)
}

pub(crate) fn norm_sq<S: Scalar>(x: &[S]) -> S {
    x.iter().fold(S::zero(), |acc, v| acc + v.clone() * v.clone())
}

/// Null-cone adapted coordinates `(t, x, ρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeCoords<S> {
    pub t: S,
    pub x: Vec<S>,
    pub rho: S,
}

pub fn to_cone_coords<S: Scalar>(v: &AmbientVector<S>) -> Result<ConeCoords<S>, AmbientError> {
    let t = v.x0().clone();
    if t.is_zero() {
        return Err(AmbientError::OutsideChart);
    }
    let x: Vec<S> = v.euclidean().iter().map(|xi| xi.clone() / t.clone()).collect();
    let rho = v.xinf().clone() / t.clone() + norm_sq(&x) / S::from_i64(2);
    Ok(ConeCoords { t, x, rho })
}

pub fn from_cone_coords<S: Scalar>(c: &ConeCoords<S>) -> AmbientVector<S> {
    let mut coords = Vec::with_capacity(c.x.len() + 2);
    coords.push(c.t.clone());
    coords.extend(c.x.iter().map(|xi| c.t.clone() * xi.clone()));
    coords.push(c.t.clone() * (c.rho.clone() - norm_sq(&c.x) / S::from_i64(2)));
    AmbientVector { coords }
}

/// Row `a` expresses `∂/∂X^a` in the frame `(∂_t, ∂_{x_1}, …, ∂_{x_n}, ∂_ρ)`.
pub fn chart_jacobian<S: Scalar>(p: &ConeCoords<S>) -> Result<Vec<Vec<S>>, AmbientError> {
    if p.t.is_zero() {
        return Err(AmbientError::OutsideChart);
    }
    let n = p.x.len();
    let d = n + 2;
    let inv_t = S::one() / p.t.clone();
    let mut m = vec![vec![S::zero(); d]; d];
    // ∂/∂X⁰ = ∂_t − (1/t)Σ xᵢ∂_{xᵢ} − (1/t)(ρ + ½‖x‖²)∂_ρ
    m[0][0] = S::one();
    for i in 0..n {
        m[0][1 + i] = -(inv_t.clone() * p.x[i].clone());
    }
    m[0][d - 1] = -(inv_t.clone() * (p.rho.clone() + norm_sq(&p.x) / S::from_i64(2)));
    // ∂/∂Xⁱ = (1/t)∂_{xᵢ} + (xᵢ/t)∂_ρ
    for i in 0..n {
        m[1 + i][1 + i] = inv_t.clone();
        m[1 + i][d - 1] = inv_t.clone() * p.x[i].clone();
    }
    // ∂/∂X^∞ = (1/t)∂_ρ
    m[d - 1][d - 1] = inv_t;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use proptest::prelude::*;

    fn ev(v: &[i64]) -> AmbientVector<Exact> {
        AmbientVector::new(v.iter().map(|&x| Exact::int(x)).collect()).unwrap()
    }

    fn fv(v: &[f64]) -> AmbientVector<f64> {
        AmbientVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&ev(&[1, 0, 0, 1]), &ev(&[1, 0, 0, 1])).unwrap(), Exact::int(2));
        assert_eq!(pair(&ev(&[1, 2, 3, 4]), &ev(&[0, 1, 1, 1])).unwrap(), Exact::int(6));
        let cone = AmbientVector::cone_point(&[Exact::int(1), Exact::int(1)]);
        assert_eq!(cone.coords[3], Exact::int(-1));
        assert_eq!(pair(&cone, &cone).unwrap(), Exact::int(0));
        assert!(matches!(
            pair(&ev(&[1, 0, 0]), &ev(&[1, 0, 0, 1])),
            Err(AmbientError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tilde_pairing_agrees_for_example() {
        let (u, v) = (ev(&[1, 2, 3, 4]), ev(&[0, 1, 1, 1]));
        let t = BilinearForm::tilde(2);
        assert_eq!(t.pair(&u.to_tilde(), &v.to_tilde()).unwrap(), Exact::int(6));
        assert_eq!(u.to_tilde().from_tilde(), u);
    }

    #[test]
    fn gram_matrices() {
        let g: Vec<Vec<Exact>> = BilinearForm::standard(2).gram();
        assert_eq!(g[0][3], Exact::int(1));
        assert_eq!(g[0][0], Exact::int(0));
        assert_eq!(g[2][2], Exact::int(1));
        let t: Vec<Vec<f64>> = BilinearForm::tilde(2).gram();
        assert_eq!(t[3][3], -1.0);
        assert_eq!(BilinearForm::standard(3).signature(), (4, 1));
    }

    #[test]
    fn cone_coordinate_examples() {
        let c = to_cone_coords(&ev(&[2, 2, 4, 1])).unwrap();
        assert_eq!(c.t, Exact::int(2));
        assert_eq!(c.x, vec![Exact::int(1), Exact::int(2)]);
        assert_eq!(c.rho, Exact::int(3));
        assert_eq!(from_cone_coords(&c), ev(&[2, 2, 4, 1]));

        let c = to_cone_coords(&ev(&[1, 0, 0, 0])).unwrap();
        assert_eq!((c.t, c.rho), (Exact::int(1), Exact::int(0)));

        let x = vec![Exact::frac(1, 3), Exact::int(-2)];
        let back = from_cone_coords(&ConeCoords { t: Exact::int(1), x: x.clone(), rho: Exact::int(0) });
        assert_eq!(back, AmbientVector::cone_point(&x));

        assert_eq!(to_cone_coords(&ev(&[0, 1, 1, 1])), Err(AmbientError::OutsideChart));
    }

    #[test]
    fn jacobian_rows() {
        let p = ConeCoords { t: 1.0, x: vec![0.0, 0.0], rho: 0.0 };
        let m = chart_jacobian(&p).unwrap();
        assert_eq!(m[3], vec![0.0, 0.0, 0.0, 1.0]);
        let p = ConeCoords { t: 2.0, x: vec![0.3, -0.1], rho: 0.7 };
        assert_eq!(chart_jacobian(&p).unwrap()[3], vec![0.0, 0.0, 0.0, 0.5]);
        assert!(chart_jacobian(&ConeCoords { t: 0.0, x: vec![0.0], rho: 0.0 }).is_err());
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let x = fv(&[1.3, -0.4, 0.8, 0.25, -0.6]);
        let m = chart_jacobian(&to_cone_coords(&x).unwrap()).unwrap();
        let flat = |c: ConeCoords<f64>| {
            let mut v = vec![c.t];
            v.extend(c.x);
            v.push(c.rho);
            v
        };
        let h = 1e-6;
        let mut worst: f64 = 0.0;
        for (a, row) in m.iter().enumerate() {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp.coords[a] += h;
            xm.coords[a] -= h;
            let fp = flat(to_cone_coords(&xp).unwrap());
            let fm = flat(to_cone_coords(&xm).unwrap());
            for ((p, q), j) in fp.iter().zip(&fm).zip(row) {
                worst = worst.max(((p - q) / (2.0 * h) - j).abs());
            }
        }
        assert!(worst <= 1e-8, "max deviation {worst}");
    }

    fn small_exact() -> impl Strategy<Value = Exact> {
        (-20i64..20, 1i64..7).prop_map(|(p, q)| Exact::frac(p, q))
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric_bilinear(
            u in prop::collection::vec(small_exact(), 4),
            v in prop::collection::vec(small_exact(), 4),
            w in prop::collection::vec(small_exact(), 4),
            c in small_exact(),
        ) {
            let (u, v, w) = (AmbientVector { coords: u }, AmbientVector { coords: v }, AmbientVector { coords: w });
            prop_assert_eq!(pair(&u, &v).unwrap(), pair(&v, &u).unwrap());
            let lhs = pair(&u.scale(&c).add(&w), &v).unwrap();
            let rhs = &(&c * &pair(&u, &v).unwrap()) + &pair(&w, &v).unwrap();
            prop_assert_eq!(lhs, rhs);
            // tilde basis is an isometry, exactly, even with the 1/√2 entries
            prop_assert_eq!(BilinearForm::tilde(2).pair(&u.to_tilde(), &v.to_tilde()).unwrap(), pair(&u, &v).unwrap());
        }

        #[test]
        fn cone_round_trip_exact(t in small_exact(), x in prop::collection::vec(small_exact(), 3), rho in small_exact()) {
            prop_assume!(!t.is_zero());
            let c = ConeCoords { t: t.clone(), x, rho: rho.clone() };
            let v = from_cone_coords(&c);
            prop_assert_eq!(to_cone_coords(&v).unwrap(), c);
            // ⟨X,X⟩ = 2t²ρ
            prop_assert_eq!(pair(&v, &v).unwrap(), &Exact::int(2) * &(&(&t * &t) * &rho));
        }

        #[test]
        fn cone_round_trip_float(v in prop::collection::vec(-5.0f64..5.0, 5)) {
            prop_assume!(v[0].abs() > 0.1);
            let x = AmbientVector { coords: v };
            let scale = x.coords.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            let back = from_cone_coords(&to_cone_coords(&x).unwrap());
            for (a, b) in x.coords.iter().zip(&back.coords) {
                prop_assert!((a - b).abs() <= 1e-12 * scale);
            }
            let u = x.to_tilde();
            let d = BilinearForm::tilde(3).pair(&u, &u).unwrap() - pair(&x, &x).unwrap();
            prop_assert!(d.abs() <= 1e-12 * scale * scale);
        }
    }
}
