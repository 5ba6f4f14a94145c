use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::{int, Q};

/// An element of the finite Weyl group as an integer matrix acting on `X_*(T)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() }
    }

    /// `λ ↦ λ - ⟨α, λ⟩ α^∨`.
    pub fn reflection(root: &[i64], coroot: &[i64]) -> Self {
        let n = root.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j) - coroot[i] * root[j]).collect())
            .collect();
        WeylElement { matrix }
    }

    /// The permutation matrix with `w e_j = e_{perm[j]}`.
    pub fn from_permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut matrix = vec![vec![0; n]; n];
        for (j, &i) in perm.iter().enumerate() {
            matrix[i][j] = 1;
        }
        WeylElement { matrix }
    }

    /// `perm[j] = w(j)` when the matrix is a permutation matrix.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.matrix.len();
        let mut perm = Vec::with_capacity(n);
        for j in 0..n {
            let mut hit = None;
            for i in 0..n {
                match self.matrix[i][j] {
                    0 => {}
                    1 if hit.is_none() => hit = Some(i),
                    _ => return None,
                }
            }
            perm.push(hit?);
        }
        Some(perm)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect())
            .collect();
        WeylElement { matrix }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn apply_rational(&self, v: &[Q]) -> Vec<Q> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (&a, b)| acc + b * a))
            .collect()
    }

    /// The action of `w^{-1}` on characters: `⟨w^{-1}χ, λ⟩ = ⟨χ, wλ⟩`.
    pub fn transpose_apply(&self, chi: &[i64]) -> Vec<i64> {
        let n = self.dim();
        (0..n).map(|j| (0..n).map(|i| self.matrix[i][j] * chi[i]).sum()).collect()
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.dim();
        let mut a: Vec<Vec<Q>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<Q> = row.iter().map(|&x| int(x)).collect();
                r.extend((0..n).map(|k| if k == i { Q::one() } else { Q::zero() }));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("Weyl group elements are invertible");
            a.swap(c, p);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c];
                    let pr = a[c].clone();
                    for (x, y) in a[i].iter_mut().zip(pr) {
                        *x -= f * y;
                    }
                }
            }
        }
        let matrix = a
            .iter()
            .map(|row| {
                row[n..]
                    .iter()
                    .map(|x| {
                        debug_assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        WeylElement { matrix }
    }
}
