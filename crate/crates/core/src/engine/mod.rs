//! The `GL_r` engine: matrices over truncated Laurent series and the invariants of
//! `bσ*` computed from them.

mod bounded;
mod invariants;
mod reduce;
pub mod sample;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::min;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::Ring;
use crate::root_data::AffineWeylElement;
use crate::series::{Series, EXACT};

pub use bounded::{bounded_by, BoundMode};
pub use invariants::{
    decency_check, kottwitz_point_of, newton_point, newton_point_detailed, norm_s, sigma_conjugate,
    NewtonReport,
};
pub use reduce::{hodge_polygon, hodge_polygon_detailed, iwahori_coset, HodgeReport};

/// Largest supported matrix size.
pub const MAX_RANK: usize = 8;

/// `2r(N + |μ|) + 4`: the working precision for window `N` and Hodge bound `|μ|`.
pub fn default_precision(r: usize, window: i64, mu_abs: i64) -> i64 {
    2 * r as i64 * (window + mu_abs) + 4
}

/// An `r × r` matrix over `R((z))`, optionally declared to have coefficients in the
/// `σ^s`-fixed subfield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix<R: Ring> {
    ring: R,
    r: usize,
    entries: Vec<Series<R::Elem>>,
    subfield: Option<u32>,
}

pub type FieldMatrix = SeriesMatrix<Field>;

impl<R: Ring> SeriesMatrix<R> {
    pub fn new(ring: R, rows: Vec<Vec<Series<R::Elem>>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 || r > MAX_RANK {
            return Err(Error::Unsupported(alloc::format!("matrix size {r} outside 1..={MAX_RANK}")));
        }
        if let Some(bad) = rows.iter().find(|row| row.len() != r) {
            return Err(Error::DatumMismatch { expected: r, found: bad.len() });
        }
        Ok(SeriesMatrix { ring, r, entries: rows.into_iter().flatten().collect(), subfield: None })
    }

    pub fn from_fn(ring: R, r: usize, mut f: impl FnMut(usize, usize) -> Series<R::Elem>) -> Result<Self> {
        let rows = (0..r).map(|i| (0..r).map(|j| f(i, j)).collect()).collect();
        Self::new(ring, rows)
    }

    pub fn identity(ring: R, r: usize) -> Result<Self> {
        let one = ring.one();
        Self::from_fn(ring, r, |i, j| if i == j { Series::monomial(one, 0) } else { Series::zero() })
    }

    /// `z^λ = diag(z^{λ_1}, …, z^{λ_r})`.
    pub fn monomial(ring: R, lambda: &[i64]) -> Result<Self> {
        let one = ring.one();
        Self::from_fn(ring, lambda.len(), |i, j| if i == j { Series::monomial(one, lambda[i]) } else { Series::zero() })
    }

    /// The monomial matrix `z^λ w` of `t_λ w` (the finite part must be a permutation).
    pub fn from_affine(ring: R, x: &AffineWeylElement) -> Result<Self> {
        let perm = x
            .finite()
            .as_permutation()
            .ok_or_else(|| Error::Unsupported("finite part is not a permutation matrix".into()))?;
        let lambda = &x.translation().0;
        let one = ring.one();
        Self::from_fn(ring, perm.len(), |i, j| {
            if perm[j] == i {
                Series::monomial(one, lambda[i])
            } else {
                Series::zero()
            }
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> &Series<R::Elem> {
        &self.entries[i * self.r + j]
    }

    pub fn entries(&self) -> &[Series<R::Elem>] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Series<R::Elem>>> {
        self.entries.chunks(self.r).map(|c| c.to_vec()).collect()
    }

    pub fn subfield(&self) -> Option<u32> {
        self.subfield
    }

    /// Declares the entries to lie in the `σ^s`-fixed subring; checked.
    pub fn with_subfield(mut self, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::Invalid("subfield degree must be positive".into()));
        }
        for e in &self.entries {
            for (_, c) in e.terms() {
                let mut x = c;
                for _ in 0..s {
                    x = self.ring.frobenius(x);
                }
                if x != c {
                    return Err(Error::NotInSubfield { s });
                }
            }
        }
        self.subfield = Some(s);
        Ok(self)
    }

    /// Smallest precision among the entries.
    pub fn precision(&self) -> i64 {
        self.entries.iter().map(|e| e.prec()).min().unwrap_or(EXACT)
    }

    pub fn is_exact(&self) -> bool {
        self.precision() == EXACT
    }

    /// A lower bound for the valuations of all entries.
    pub fn valuation_bound(&self) -> i64 {
        self.entries.iter().map(|e| e.valuation_bound()).min().unwrap_or(EXACT)
    }

    pub fn truncate(&self, prec: i64) -> Self {
        self.map(|e| e.truncate(prec))
    }

    fn map(&self, f: impl Fn(&Series<R::Elem>) -> Series<R::Elem>) -> Self {
        SeriesMatrix { ring: self.ring.clone(), r: self.r, entries: self.entries.iter().map(f).collect(), subfield: None }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(Error::DatumMismatch { expected: self.r, found: other.r })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let r = self.r;
        let ring = &self.ring;
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = Series::zero();
                for k in 0..r {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_exact_zero() || b.is_exact_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b, ring), ring);
                }
                entries.push(acc);
            }
        }
        Ok(SeriesMatrix { ring: self.ring.clone(), r, entries, subfield: None })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let ring = &self.ring;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b, ring)).collect();
        Ok(SeriesMatrix { ring: self.ring.clone(), r: self.r, entries, subfield: None })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let ring = &self.ring;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b, ring)).collect();
        Ok(SeriesMatrix { ring: self.ring.clone(), r: self.r, entries, subfield: None })
    }

    /// Multiplication of every entry by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|e| e.shift(k))
    }

    /// Entrywise `σ`.
    pub fn frobenius(&self) -> Self {
        let mut m = self.map(|e| e.frobenius(&self.ring));
        m.subfield = self.subfield;
        m
    }

    pub fn frobenius_pow(&self, k: u32) -> Self {
        let mut m = self.clone();
        for _ in 0..k {
            m = m.frobenius();
        }
        m
    }

    /// Coefficients `p_0 = 1, p_1, …, p_r` of `det(T·1 - A) = Σ p_i T^{r-i}`, by
    /// Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Vec<Series<R::Elem>> {
        let idx: Vec<usize> = (0..self.r).collect();
        self.charpoly_of(&idx, &idx)
    }

    fn charpoly_of(&self, rows: &[usize], cols: &[usize]) -> Vec<Series<R::Elem>> {
        let ring = &self.ring;
        let a = |i: usize, j: usize| self.get(rows[i], cols[j]);
        let mut p: Vec<Series<R::Elem>> = vec![Series::one(ring)];
        for k in 0..rows.len() {
            // Toeplitz column 1, -a_kk, -R C, -R A C, …, -R A^{k-1} C
            let mut t = Vec::with_capacity(k + 2);
            t.push(Series::one(ring));
            t.push(a(k, k).neg(ring));
            let mut v: Vec<Series<R::Elem>> = (0..k).map(|i| a(i, k).clone()).collect();
            for _ in 0..k {
                let rv = (0..k).fold(Series::zero(), |acc, j| acc.add(&a(k, j).mul(&v[j], ring), ring));
                t.push(rv.neg(ring));
                v = (0..k)
                    .map(|i| (0..k).fold(Series::zero(), |acc, j| acc.add(&a(i, j).mul(&v[j], ring), ring)))
                    .collect();
            }
            let next = (0..=k + 1)
                .map(|i| {
                    (0..=min(i, k)).fold(Series::zero(), |acc, j| acc.add(&t[i - j].mul(&p[j], ring), ring))
                })
                .collect();
            p = next;
        }
        p
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Series<R::Elem> {
        let n = rows.len();
        if n == 0 {
            return Series::one(&self.ring);
        }
        let p = self.charpoly_of(rows, cols);
        if n.is_multiple_of(2) {
            p[n].clone()
        } else {
            p[n].neg(&self.ring)
        }
    }

    pub fn det(&self) -> Series<R::Elem> {
        let idx: Vec<usize> = (0..self.r).collect();
        self.minor(&idx, &idx)
    }

    /// All `k × k` minors, indexed by (row subset, column subset) in lexicographic order.
    pub fn minors(&self, k: usize) -> Vec<(Vec<usize>, Vec<usize>, Series<R::Elem>)> {
        let subsets = combinations(self.r, k);
        let mut out = Vec::with_capacity(subsets.len() * subsets.len());
        for rs in &subsets {
            for cs in &subsets {
                out.push((rs.clone(), cs.clone(), self.minor(rs, cs)));
            }
        }
        out
    }

    /// The inverse via the adjugate. A determinant that is not an exact monomial is
    /// inverted to relative precision `rel_prec`.
    pub fn inverse(&self, rel_prec: i64) -> Result<Self> {
        let det = self.det();
        if det.is_exact_zero() {
            return Err(Error::NotInvertible);
        }
        let dinv = det.invert(&self.ring, rel_prec)?;
        let r = self.r;
        let ring = &self.ring;
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                // (A^{-1})_{ij} = (-1)^{i+j} det(A without row j, column i) / det A
                let rows: Vec<usize> = (0..r).filter(|&k| k != j).collect();
                let cols: Vec<usize> = (0..r).filter(|&k| k != i).collect();
                let mut c = self.minor(&rows, &cols);
                if (i + j) % 2 == 1 {
                    c = c.neg(ring);
                }
                entries.push(c.mul(&dinv, ring));
            }
        }
        Ok(SeriesMatrix { ring: self.ring.clone(), r, entries, subfield: self.subfield })
    }

    /// Entrywise agreement below both precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.r == other.r && self.entries.iter().zip(&other.entries).all(|(a, b)| a.agrees_with(b))
    }
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;

    fn f3() -> Field {
        Field::new(3, 1, None, 3).unwrap()
    }

    fn c(x: u32) -> FieldElement {
        FieldElement(x)
    }

    /// Exact polynomial in `z` from coefficients starting at `z^0`.
    fn p(cs: &[u32]) -> Series<FieldElement> {
        Series::exact(0, cs.iter().map(|&x| c(x)).collect())
    }

    #[test]
    fn charpoly_of_2x2() {
        let f = f3();
        // [[1, z], [2, 1+z]]
        let m = SeriesMatrix::new(f.clone(), vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[2]), p(&[1, 1])]]).unwrap();
        let cp = m.charpoly();
        // T^2 - (2+z) T + (1 + z - 2z)
        assert_eq!(cp[1], p(&[1, 2]));
        assert_eq!(cp[2], p(&[1, 2]));
        assert_eq!(m.det(), p(&[1, 2]));
    }

    #[test]
    fn inverse_of_unipotent_is_exact() {
        let f = f3();
        let m = SeriesMatrix::new(f.clone(), vec![vec![p(&[1]), p(&[0, 1])], vec![Series::zero(), p(&[1])]]).unwrap();
        let inv = m.inverse(10).unwrap();
        assert!(inv.is_exact());
        assert_eq!(m.mul(&inv).unwrap(), SeriesMatrix::identity(f, 2).unwrap());
    }

    #[test]
    fn inverse_with_non_monomial_det() {
        let f = f3();
        let m = SeriesMatrix::new(f.clone(), vec![vec![p(&[1, 1]), p(&[0])], vec![p(&[0, 0, 1]), p(&[2])]]).unwrap();
        let inv = m.inverse(6).unwrap();
        let id = m.mul(&inv).unwrap();
        assert!(id.agrees_with(&SeriesMatrix::identity(f, 2).unwrap()));
        assert!(id.precision() >= 6);
    }

    #[test]
    fn subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn size_limits() {
        let f = f3();
        assert!(SeriesMatrix::identity(f.clone(), 9).is_err());
        assert!(SeriesMatrix::identity(f, 0).is_err());
    }
}
