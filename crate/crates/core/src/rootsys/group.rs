use std::collections::{HashSet, VecDeque};

use super::{RootError, RootSystem};
use crate::ambient::lower;
use crate::linalg::{identity, mat_mul, mat_vec, Matrix};
use crate::scalar::Exact;

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// The finite group generated by the reflections `R_α`, as exact matrices.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    elements: Vec<Matrix<Exact>>,
    generators: Vec<Matrix<Exact>>,
}

/// Breadth-first closure of the positive-root reflections.
pub fn generate_group(sys: &RootSystem, cap: usize) -> Result<ReflectionGroup, RootError> {
    let generators = sys.generators();
    let d = sys.n() + 2;
    let id = identity::<Exact>(d);
    let mut seen: HashSet<Matrix<Exact>> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &generators {
            let h = mat_mul(s, &g);
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return Err(RootError::GroupTooLarge { cap });
                }
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(ReflectionGroup { elements, generators })
}

impl ReflectionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix<Exact>] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix<Exact>] {
        &self.generators
    }

    pub fn apply(&self, g: usize, x: &[Exact]) -> Vec<Exact> {
        mat_vec(&self.elements[g], x)
    }

    /// `gᵀ G g = G` for every element.
    pub fn preserves_form(&self) -> bool {
        self.elements.iter().all(|g| {
            let d = g.len();
            (0..d).all(|a| {
                let col_a: Vec<Exact> = g.iter().map(|row| row[a].clone()).collect();
                let low = lower(&col_a);
                (0..d).all(|b| {
                    let s = g.iter().zip(&low).fold(Exact::int(0), |acc, (row, l)| &acc + &(l * &row[b]));
                    let null_pair = a + b == d - 1 && (a == 0 || b == 0);
                    let euclidean = a == b && a != 0 && a != d - 1;
                    let expect = if null_pair || euclidean {
                        Exact::int(1)
                    } else {
                        Exact::int(0)
                    };
                    s == expect
                })
            })
        })
    }

    /// Every element permutes the root set.
    pub fn permutes_roots(&self, sys: &RootSystem) -> bool {
        let set: HashSet<&[Exact]> = sys.roots().iter().map(|r| r.coords()).collect();
        self.elements
            .iter()
            .all(|g| sys.roots().iter().all(|r| set.contains(mat_vec(g, r.coords()).as_slice())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{a1, b_euclidean, build_b};

    #[test]
    fn orders() {
        assert_eq!(generate_group(&a1(2), DEFAULT_GROUP_CAP).unwrap().order(), 2);
        assert_eq!(generate_group(&b_euclidean(2, 2), DEFAULT_GROUP_CAP).unwrap().order(), 8);
        let b1 = generate_group(&build_b(1), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(b1.order(), 8);
        let b3 = generate_group(&build_b(2), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(b3.order(), 48);
        assert!(b3.preserves_form());
        assert!(b3.permutes_roots(&build_b(2)));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            generate_group(&build_b(2), 10).unwrap_err(),
            RootError::GroupTooLarge { cap: 10 }
        );
    }
}
