use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::{int_row_hnf, int_smith, pair, pair_int, Q};

/// `π₁(G) = X_*(T) / Σ Z α_j^∨ ≅ ⊕ Z/d_i ⊕ Z^k`, from the Smith normal form of the
/// matrix whose columns are the simple coroots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Presentation {
    /// `(row, d)`: the torsion coordinate `⟨row, λ⟩ mod d`, for `d > 1`.
    torsion: Vec<(Vec<i64>, i64)>,
    /// Rows of a basis of the annihilator of the coroot lattice, in Hermite normal form.
    free: Vec<Vec<i64>>,
}

/// A class in `π₁(G)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pi1Class {
    torsion: Vec<(i64, i64)>,
    free: Vec<i64>,
}

impl Pi1Presentation {
    pub fn new(rank: usize, simple_coroots: &[Vec<i64>]) -> Self {
        let l = simple_coroots.len();
        let m: Vec<Vec<i64>> = (0..rank).map(|i| simple_coroots.iter().map(|c| c[i]).collect()).collect();
        let (u, diag) = int_smith(&m, rank, l);
        let torsion = diag
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 1)
            .map(|(i, &d)| (u[i].clone(), d))
            .collect();
        let free = int_row_hnf(&u[diag.len()..]);
        Pi1Presentation { torsion, free }
    }

    pub fn torsion_orders(&self) -> Vec<i64> {
        self.torsion.iter().map(|(_, d)| *d).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    pub fn class(&self, lambda: &[i64]) -> Pi1Class {
        let torsion = self
            .torsion
            .iter()
            .map(|(row, d)| (pair_int(row, lambda).rem_euclid(*d), *d))
            .collect();
        let free = self.free.iter().map(|row| pair_int(row, lambda)).collect();
        Pi1Class { torsion, free }
    }

    /// The image in `π₁(G) ⊗ Q`.
    pub fn rational_image(&self, lambda: &[Q]) -> Vec<Q> {
        self.free.iter().map(|row| pair(row, lambda)).collect()
    }
}

impl Pi1Class {
    /// `(value, modulus)` pairs.
    pub fn torsion(&self) -> &[(i64, i64)] {
        &self.torsion
    }

    pub fn free(&self) -> &[i64] {
        &self.free
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|(v, _)| *v == 0) && self.free.iter().all(|x| *x == 0)
    }

    pub fn add(&self, other: &Pi1Class) -> Pi1Class {
        Pi1Class {
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .map(|((a, d), (b, _))| ((a + b).rem_euclid(*d), *d))
                .collect(),
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
        }
    }

    /// The image in `π₁(G) ⊗ Q` (torsion dies).
    pub fn rational(&self) -> Vec<Q> {
        self.free.iter().map(|&x| Q::from_integer(x)).collect()
    }

    pub fn rational_is_zero(&self) -> bool {
        self.free.iter().all(|x| x.is_zero())
    }
}
