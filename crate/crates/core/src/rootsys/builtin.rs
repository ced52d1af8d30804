//! Stock root systems.

use super::{validate_root_system, Root, RootSystem};
use crate::scalar::Exact;

fn unit(d: usize, i: usize) -> Vec<Exact> {
    let mut v = vec![Exact::int(0); d];
    v[i] = Exact::int(1);
    v
}

fn combine(a: &[Exact], sa: i64, b: &[Exact], sb: i64) -> Vec<Exact> {
    a.iter().zip(b).map(|(x, y)| &(x * &Exact::int(sa)) + &(y * &Exact::int(sb))).collect()
}

/// `±fₐ ± f_b` and `±fₐ` for an orthonormal frame.
fn b_from_frame(frame: &[Vec<Exact>]) -> Vec<Root> {
    let mut out = Vec::new();
    for (a, fa) in frame.iter().enumerate() {
        for fb in &frame[a + 1..] {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(Root::new(combine(fa, sa, fb, sb)).expect("frame roots are non-null"));
            }
        }
        for s in [1, -1] {
            out.push(Root::new(fa.iter().map(|x| x * &Exact::int(s)).collect()).expect("non-null"));
        }
    }
    out
}

/// `{±e₁}` in the chart `Rⁿ`.
pub fn a1(n: usize) -> RootSystem {
    assert!(n >= 1);
    let e1 = unit(n + 2, 1);
    let roots = vec![Root::new(e1.clone()).unwrap(), Root::new(e1.iter().map(|x| -x).collect()).unwrap()];
    validate_root_system(roots).expect("A1 is a root system").with_name("A1")
}

/// `B_m` on the Euclidean directions `e₁…e_m` of the chart `Rⁿ` (all `α₀ = 0`).
pub fn b_euclidean(m: usize, n: usize) -> RootSystem {
    assert!(m >= 1 && m <= n, "B_{m} does not fit in R^{n}");
    let frame: Vec<Vec<Exact>> = (1..=m).map(|i| unit(n + 2, i)).collect();
    validate_root_system(b_from_frame(&frame)).expect("B_m is a root system").with_name(format!("B{m}"))
}

/// `B_m` on the frame `f₀ = (e₀ + e_∞)/√2, e₁, …, e_{m−1}`.
///
/// Roots involving `f₀` have `α₀ ≠ 0` and act on the chart by inversions.
pub fn b_embedded(m: usize, n: usize) -> RootSystem {
    assert!(m >= 1 && m <= n + 1, "B_{m} does not fit in R^{{n+1}} for n = {n}");
    let d = n + 2;
    let half_sqrt2 = &Exact::sqrt2() * &Exact::frac(1, 2);
    let mut f0 = vec![Exact::int(0); d];
    f0[0] = half_sqrt2.clone();
    f0[d - 1] = half_sqrt2;
    let mut frame = vec![f0];
    frame.extend((1..m).map(|i| unit(d, i)));
    validate_root_system(b_from_frame(&frame)).expect("B_m is a root system").with_name(format!("B{m}-embedded"))
}

/// `B_{n+1} = B_n ∪ S` on `R^{n+1,1}`; [`Root::tag`] gives the split.
pub fn build_b(n: usize) -> RootSystem {
    b_embedded(n + 1, n)
}

/// Looks up a stock system: `A1`, `B<m>` or `B<m>_euclidean`, `B<m>-embedded`,
/// and `BN` or `B(n)` for `B_{n+1}`.
pub fn by_name(name: &str, n: usize) -> Option<RootSystem> {
    let lower = name.to_ascii_lowercase();
    if lower == "a1" {
        return (n >= 1).then(|| a1(n));
    }
    if matches!(lower.as_str(), "bn" | "b(n)" | "b_{n+1}") {
        return (n >= 1).then(|| build_b(n));
    }
    let rest = lower.strip_prefix('b')?;
    let (digits, embedded) = if let Some(d) = rest.strip_suffix("-embedded").or(rest.strip_suffix("_embedded")) {
        (d, true)
    } else {
        (rest.strip_suffix("_euclidean").or(rest.strip_suffix("-euclidean")).unwrap_or(rest), false)
    };
    let m: usize = digits.parse().ok()?;
    if m == 0 {
        return None;
    }
    if embedded {
        (m <= n + 1).then(|| b_embedded(m, n))
    } else {
        (m <= n).then(|| b_euclidean(m, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootTag;

    #[test]
    fn b_split() {
        for n in 1..=3 {
            let sys = build_b(n);
            let total = 2 * (n + 1) * (n + 1);
            assert_eq!(sys.len(), total);
            assert_eq!(sys.orbits().len(), 2);
            let bn = sys.roots().iter().filter(|r| r.tag() == RootTag::Bn).count();
            assert_eq!(bn, 2 * n * n);
            assert!(sys.roots().iter().all(|r| r.coords()[0] == r.coords()[n + 1]));
        }
    }

    #[test]
    fn names() {
        assert_eq!(by_name("A1", 2).unwrap().len(), 2);
        assert_eq!(by_name("B2", 2).unwrap().len(), 8);
        assert_eq!(by_name("B3-embedded", 2).unwrap().len(), 18);
        assert_eq!(by_name("BN", 1).unwrap().len(), 8);
        assert_eq!(by_name("B2_euclidean", 2).unwrap().len(), 8);
        assert_eq!(by_name("B(n)", 2).unwrap().name(), "B3-embedded");
        assert!(by_name("B3", 2).is_none());
        assert!(by_name("C2", 2).is_none());
    }
}
