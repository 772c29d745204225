#![allow(clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// Inertia of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.zero
    }
}

/// Exact inertia by congruence elimination over the rationals.
///
/// A zero diagonal with a nonzero off-diagonal entry `m[k][j]` is fixed by
/// the congruence that adds row/column `j` to row/column `k`, which puts
/// `2·m[k][j]` on the diagonal.
pub fn signature(a: &IntMatrix) -> Result<Signature, SignatureError> {
    if !a.is_symmetric() {
        return Err(SignatureError::NotSymmetric);
    }
    let n = a.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut sig = Signature {
        pos: 0,
        neg: 0,
        zero: 0,
    };
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !m[i][i].is_zero());
        match pivot {
            Some(p) => {
                m.swap(k, p);
                for row in m.iter_mut() {
                    row.swap(k, p);
                }
            }
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_zero());
                let Some((i, j)) = off else {
                    sig.zero += n - k;
                    break;
                };
                // Congruence: row_i += row_j, col_i += col_j.
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[i][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][i] += v;
                }
                m.swap(k, i);
                for row in m.iter_mut() {
                    row.swap(k, i);
                }
            }
        }
        let d = m[k][k].clone();
        if d.is_positive() {
            sig.pos += 1;
        } else {
            sig.neg += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &d;
            for j in k..n {
                let sub = &f * &m[k][j];
                m[i][j] -= sub;
            }
        }
        // The trailing block is now the Schur complement, already symmetric.
        for i in k + 1..n {
            m[k][i] = BigRational::zero();
        }
        k += 1;
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(rows: &[Vec<i64>]) -> (usize, usize, usize) {
        let s = signature(&IntMatrix::from_rows(rows)).unwrap();
        (s.pos, s.neg, s.zero)
    }

    #[test]
    fn small_cases() {
        assert_eq!(sig(&[vec![2, -2], vec![-2, 2]]), (1, 0, 1));
        assert_eq!(sig(&[vec![2, -3], vec![-3, 2]]), (1, 1, 0));
        assert_eq!(sig(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(sig(&[vec![0, 0], vec![0, 0]]), (0, 0, 2));
        assert_eq!(
            sig(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -3]]),
            (1, 2, 0)
        );
    }

    #[test]
    fn rejects_asymmetric() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(signature(&m), Err(SignatureError::NotSymmetric));
    }
}
