use super::{Root, RootError};
use crate::ambient::{norm_sq, AmbientVector};
use crate::scalar::{Exact, Scalar};

/// Basis of `α^⊥`, `n+1` vectors.
///
/// For `α₀ ≠ 0` this is `(−αᵢ e₀ + α₀ eᵢ)ᵢ` followed by
/// `(−α₀ − Σαᵢ²/α₀, α₁, …, αₙ, α₀)`. For `α₀ = 0` it is `e₀, e_∞` together
/// with a basis of the Euclidean complement of `(α₁…αₙ)`.
pub fn hyperplane_basis(alpha: &Root) -> Vec<AmbientVector<Exact>> {
    let n = alpha.n();
    let d = n + 2;
    let a = alpha.coords();
    let zero = || vec![Exact::int(0); d];
    let mut out = Vec::with_capacity(n + 1);
    if !alpha.is_euclidean() {
        let a0 = &a[0];
        for i in 1..=n {
            let mut v = zero();
            v[0] = -&a[i];
            v[i] = a0.clone();
            out.push(AmbientVector { coords: v });
        }
        let sq = alpha.euclidean().iter().fold(Exact::int(0), |s, x| &s + &(x * x));
        let mut v = a.to_vec();
        v[0] = -&(a0 + &(&sq / a0));
        out.push(AmbientVector { coords: v });
    } else {
        let mut e0 = zero();
        e0[0] = Exact::int(1);
        let mut einf = zero();
        einf[d - 1] = Exact::int(1);
        out.push(AmbientVector { coords: e0 });
        out.push(AmbientVector { coords: einf });
        let p = (1..=n).find(|&i| !a[i].is_zero()).expect("non-null root");
        for k in (1..=n).filter(|&k| k != p) {
            let mut v = zero();
            v[k] = a[p].clone();
            v[p] = -&a[k];
            out.push(AmbientVector { coords: v });
        }
    }
    out
}

/// `c₂‖x‖² + Σcᵢxᵢ + c₀`, the reflecting subsphere of a root in the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsphereQuadric {
    pub c2: Exact,
    pub linear: Vec<Exact>,
    pub c0: Exact,
}

impl SubsphereQuadric {
    pub fn of(alpha: &Root) -> Self {
        let a0 = alpha.alpha0();
        SubsphereQuadric { c2: -&(a0 / &Exact::int(2)), linear: alpha.euclidean().to_vec(), c0: a0.clone() }
    }

    pub fn eval<S: Scalar>(&self, x: &[S]) -> S {
        let lin = self.linear.iter().zip(x).fold(S::zero(), |acc, (c, xi)| acc + S::from_exact(c) * xi.clone());
        S::from_exact(&self.c2) * norm_sq(x) + lin + S::from_exact(&self.c0)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.eval(x).abs() <= tol
    }

    /// A sphere when `c₂ ≠ 0`, otherwise a hyperplane.
    pub fn is_sphere(&self) -> bool {
        !self.c2.is_zero()
    }

    /// Center and squared radius of the sphere.
    pub fn sphere(&self) -> Option<(Vec<f64>, f64)> {
        if !self.is_sphere() {
            return None;
        }
        let c2 = self.c2.to_f64();
        let center: Vec<f64> = self.linear.iter().map(|c| -c.to_f64() / (2.0 * c2)).collect();
        let r2 = norm_sq(&center) - self.c0.to_f64() / c2;
        Some((center, r2))
    }
}

/// `D_α(x) = ⟨α, (1, x, −½‖x‖²)⟩ = α₀(1 − ½‖x‖²) + Σαᵢxᵢ`.
pub fn quadric_value<S: Scalar>(alpha: &Root, x: &[S]) -> S {
    let a0 = S::from_exact(alpha.alpha0());
    let lin = alpha.euclidean().iter().zip(x).fold(S::zero(), |acc, (c, xi)| {
        if c.is_zero() {
            acc
        } else {
            acc + S::from_exact(c) * xi.clone()
        }
    });
    if alpha.is_euclidean() {
        lin
    } else {
        a0 * (S::one() - norm_sq(x) / S::from_i64(2)) + lin
    }
}

/// The data of one chart reflection: `D_α(x)`, `J_α(x)` and the image point.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartReflection<S> {
    pub d: S,
    pub j: S,
    pub image: Vec<S>,
}

impl<S: Scalar> ChartReflection<S> {
    pub fn compute(alpha: &Root, x: &[S]) -> Result<Self, RootError> {
        let d = quadric_value(alpha, x);
        let two_over = S::from_i64(2) / S::from_exact(alpha.norm());
        let s = two_over * d.clone();
        let j = S::one() - s.clone() * S::from_exact(alpha.alpha0());
        if j.is_zero() {
            return Err(RootError::PointAtInfinity { root: alpha.to_string() });
        }
        let image = x
            .iter()
            .zip(alpha.euclidean())
            .map(|(xi, ai)| (xi.clone() - s.clone() * S::from_exact(ai)) / j.clone())
            .collect();
        Ok(ChartReflection { d, j, image })
    }
}

/// `xᵢ ↦ (xᵢ − 2αᵢD_α(x)/⟨α,α⟩) / J_α(x)`.
pub fn chart_reflection<S: Scalar>(alpha: &Root, x: &[S]) -> Result<Vec<S>, RootError> {
    ChartReflection::compute(alpha, x).map(|c| c.image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::pair;
    use crate::linalg::rank;
    use crate::rootsys::build_b;
    use proptest::prelude::*;

    fn root(v: &[i64]) -> Root {
        Root::new(v.iter().map(|&k| Exact::int(k)).collect()).unwrap()
    }

    #[test]
    fn basis_example() {
        let basis = hyperplane_basis(&root(&[1, 0, 0, 1]));
        let got: Vec<Vec<Exact>> = basis.into_iter().map(|v| v.coords).collect();
        let want: Vec<Vec<Exact>> = [[0, 1, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&k| Exact::int(k)).collect())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn basis_is_orthogonal_and_full_rank() {
        for n in 1..=3 {
            for a in build_b(n).roots() {
                let basis = hyperplane_basis(a);
                assert_eq!(basis.len(), n + 1);
                for v in &basis {
                    assert!(pair(v, &a.as_vector()).unwrap().is_zero());
                }
                let m: Vec<Vec<Exact>> = basis.into_iter().map(|v| v.coords).collect();
                assert_eq!(rank(&m), n + 1);
            }
        }
    }

    #[test]
    fn quadric_examples() {
        let q = SubsphereQuadric::of(&root(&[1, 0, 0, 1]));
        assert_eq!((q.c2.clone(), q.c0.clone()), (Exact::frac(-1, 2), Exact::int(1)));
        let (c, r2) = q.sphere().unwrap();
        assert_eq!(c, vec![0.0, 0.0]);
        assert!((r2 - 2.0).abs() < 1e-15);
        let wall = SubsphereQuadric::of(&root(&[0, 1, 0, 0]));
        assert!(!wall.is_sphere());
        assert!(wall.contains(&[0.0, 3.0], 0.0));
    }

    #[test]
    fn euclidean_reflection_and_inversion() {
        let x = [0.3, -1.7];
        assert_eq!(chart_reflection(&root(&[0, 1, 0, 0]), &x).unwrap(), vec![-0.3, -1.7]);
        let y = chart_reflection(&root(&[1, 0, 0, 1]), &x).unwrap();
        let r2 = 0.3f64 * 0.3 + 1.7 * 1.7;
        assert!((y[0] - 0.6 / r2).abs() < 1e-14 && (y[1] + 3.4 / r2).abs() < 1e-14);
        // J = 0 at the origin for the inversion
        let err = chart_reflection(&root(&[1, 0, 0, 1]), &[0.0, 0.0]).unwrap_err();
        assert!(matches!(err, RootError::PointAtInfinity { .. }));
        let fixed = [1.0, 1.0];
        let z = chart_reflection(&root(&[1, 0, 0, 1]), &fixed).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-12 && (z[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_mode_inversion() {
        let x = [Exact::int(1), Exact::frac(1, 2)];
        let y = chart_reflection(&root(&[1, 0, 0, 1]), &x).unwrap();
        assert_eq!(y, vec![Exact::frac(8, 5), Exact::frac(4, 5)]);
    }

    proptest! {
        #[test]
        fn involutive_and_matches_ambient(x in prop::collection::vec(-2.0f64..2.0, 2), k in 0usize..18) {
            let sys = build_b(2);
            let a = &sys.roots()[k];
            let c = ChartReflection::compute(a, &x).unwrap();
            prop_assume!(c.j.abs() > 0.05);
            let back = chart_reflection(a, &c.image);
            prop_assume!(back.is_ok());
            let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for (u, v) in back.unwrap().iter().zip(&x) {
                prop_assert!((u - v).abs() <= 1e-10 * scale.max(c.image.iter().fold(1.0, |m, v| m.max(v.abs()))));
            }
            let lifted = a.reflect(&AmbientVector::cone_point(&x));
            for (i, yi) in c.image.iter().enumerate() {
                let proj = lifted.coords[i + 1] / lifted.coords[0];
                prop_assert!((proj - yi).abs() <= 1e-10 * yi.abs().max(1.0));
            }
        }
    }
}
