//! Small dense matrices over a [`Scalar`], row-major `Vec<Vec<S>>`.

use crate::scalar::Scalar;

pub type Matrix<S> = Vec<Vec<S>>;

pub fn identity<S: Scalar>(d: usize) -> Matrix<S> {
    (0..d).map(|i| (0..d).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
}

pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, |row| row.len()));
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    (0..k).fold(S::zero(), |acc, t| {
                        if a[i][t].is_zero() || b[t][j].is_zero() {
                            acc
                        } else {
                            acc + a[i][t].clone() * b[t][j].clone()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<S: Scalar>(a: &Matrix<S>, v: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
        .collect()
}

pub fn transpose<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    let c = a.first().map_or(0, |r| r.len());
    (0..c).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn to_f64<S: Scalar>(a: &Matrix<S>) -> Matrix<f64> {
    a.iter().map(|row| row.iter().map(|x| x.to_f64()).collect()).collect()
}

/// Rank by Gaussian elimination; exact for exact scalars.
pub fn rank<S: Scalar>(rows: &Matrix<S>) -> usize {
    let mut m = rows.clone();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone() / pivot.clone();
                let pivot_row = m[rank].clone();
                for (dst, src) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *dst = dst.clone() - f.clone() * src.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}
