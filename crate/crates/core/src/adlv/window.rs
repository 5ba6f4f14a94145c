//! Lattices `z^N Λ₀ ⊆ L ⊆ z^{-N} Λ₀` over `F_{q^m}`, one canonical basis per coset `gK`.
//!
//! A lattice is stored as the column-style Hermite normal form of a basis: upper
//! triangular, diagonal `z^{a_i}`, and entry `(i, j)` for `i < j` a Laurent polynomial
//! with exponents in `[-N, a_i)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{hodge_polygon, FieldMatrix};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::field::{Field, FieldElement};
use crate::root_data::Coweight;
use crate::series::Series;

/// Default cap on the estimated number of candidates an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Largest rank the window enumerator accepts.
pub const MAX_WINDOW_RANK: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeRep {
    window: i64,
    diagonal: Vec<i64>,
    matrix: FieldMatrix,
}

impl LatticeRep {
    pub fn r(&self) -> usize {
        self.diagonal.len()
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// The exponents `a_i` of the diagonal of the Hermite form.
    pub fn diagonal(&self) -> &[i64] {
        &self.diagonal
    }

    /// The basis matrix `g`, with `L = g Λ₀`.
    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    /// `g⁻¹`, computed exactly by back substitution.
    pub fn inverse(&self) -> FieldMatrix {
        upper_triangular_inverse(&self.matrix, &self.diagonal)
    }

    /// Relative position of `L` and `Λ₀`: the dominant `λ` with `g ∈ K z^λ K`.
    pub fn hodge_type(&self) -> Result<Coweight> {
        hodge_polygon(&self.matrix)
    }

    /// Whether both representatives describe the same coset, i.e. `g⁻¹ g' ∈ K`.
    pub fn same_coset(&self, other: &LatticeRep) -> Result<bool> {
        let h = self.inverse().mul(&other.matrix)?;
        Ok(hodge_polygon(&h)?.0.iter().all(|&x| x == 0))
    }
}

/// `g⁻¹` for upper triangular `g` with monic monomial diagonal `z^{a_i}`.
fn upper_triangular_inverse(g: &FieldMatrix, a: &[i64]) -> FieldMatrix {
    let f = g.ring();
    let r = g.r();
    let mut x: Vec<Vec<Series<FieldElement>>> = vec![vec![Series::zero(); r]; r];
    for j in 0..r {
        x[j][j] = Series::monomial(f.one(), -a[j]);
        for i in (0..j).rev() {
            let mut acc = Series::zero();
            for k in i + 1..=j {
                let u = g.get(i, k);
                if !u.is_exact_zero() && !x[k][j].is_exact_zero() {
                    acc = acc.add(&u.mul(&x[k][j], f), f);
                }
            }
            x[i][j] = acc.shift(-a[i]).neg(f);
        }
    }
    FieldMatrix::new(f.clone(), x).expect("same size as g")
}

/// All diagonals `a ∈ [-N, N]^r`, in lexicographic order.
pub fn window_types(r: usize, window: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (-window..=window).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Number of Hermite forms with diagonal `a` before the window filter: `Q^{Σ (r-1-i)(a_i+N)}`.
pub fn type_cardinality(a: &[i64], window: i64, field_size: u64) -> u128 {
    let r = a.len();
    let digits: i64 = a.iter().enumerate().map(|(i, &ai)| (r - 1 - i) as i64 * (ai + window)).sum();
    (field_size as u128).saturating_pow(digits.max(0) as u32)
}

/// Candidates visited by a full enumeration of the window.
pub fn estimate_window(r: usize, window: i64, field_size: u64) -> u128 {
    window_types(r, window).iter().fold(0u128, |acc, a| acc.saturating_add(type_cardinality(a, window, field_size)))
}

pub fn check_budget(estimated: u128, limit: u128) -> Result<()> {
    if estimated > limit {
        Err(Error::Budget { estimated, limit })
    } else {
        Ok(())
    }
}

pub(crate) fn check_window(r: usize, window: i64) -> Result<()> {
    if r == 0 || r > MAX_WINDOW_RANK {
        return Err(Error::Unsupported(alloc::format!("window enumeration needs 1 <= r <= {MAX_WINDOW_RANK}, got {r}")));
    }
    if window < 0 {
        return Err(Error::Invalid(alloc::format!("window bound must be nonnegative, got {window}")));
    }
    Ok(())
}

/// All lattices of the window, type by type. Fails if the estimate exceeds `budget`.
pub fn enumerate_window_lattices(
    r: usize,
    window: i64,
    field: &Field,
    budget: u128,
) -> Result<impl Iterator<Item = LatticeRep>> {
    check_window(r, window)?;
    check_budget(estimate_window(r, window, field.size() as u64), budget)?;
    let field = field.clone();
    Ok(window_types(r, window).into_iter().flat_map(move |a| LatticesOfType::new(&field, &a, window)))
}

/// The window lattices whose Hermite form has diagonal `a`.
pub struct LatticesOfType {
    field: Field,
    window: i64,
    diagonal: Vec<i64>,
    elems: Vec<FieldElement>,
    /// `(i, j, exponent)` for every free coefficient.
    slots: Vec<(usize, usize, i64)>,
    digits: Vec<usize>,
    done: bool,
}

impl LatticesOfType {
    pub fn new(field: &Field, a: &[i64], window: i64) -> Self {
        let r = a.len();
        let mut slots = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                for e in -window..a[i] {
                    slots.push((i, j, e));
                }
            }
        }
        let done = a.iter().any(|&x| x < -window || x > window);
        LatticesOfType {
            field: field.clone(),
            window,
            diagonal: a.to_vec(),
            elems: field.elements().collect(),
            digits: vec![0; slots.len()],
            slots,
            done,
        }
    }

    fn current(&self) -> FieldMatrix {
        let r = self.diagonal.len();
        let one = self.field.one();
        let mut terms: Vec<Vec<Vec<(i64, FieldElement)>>> = vec![vec![Vec::new(); r]; r];
        for (&(i, j, e), &d) in self.slots.iter().zip(&self.digits) {
            if d != 0 {
                terms[i][j].push((e, self.elems[d]));
            }
        }
        FieldMatrix::from_fn(self.field.clone(), r, |i, j| {
            if i == j {
                Series::monomial(one, self.diagonal[i])
            } else {
                Series::from_terms(&terms[i][j], crate::series::EXACT).expect("distinct exponents")
            }
        })
        .expect("window ranks are supported")
    }

    fn advance(&mut self) {
        let base = self.elems.len();
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < base {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

impl Iterator for LatticesOfType {
    type Item = LatticeRep;

    fn next(&mut self) -> Option<LatticeRep> {
        while !self.done {
            let matrix = self.current();
            self.advance();
            let rep = LatticeRep { window: self.window, diagonal: self.diagonal.clone(), matrix };
            // z^N Λ₀ ⊆ L iff z^N g⁻¹ is integral
            let inv = rep.inverse();
            if inv.entries().iter().all(|e| e.valuation().is_none_or(|v| v >= -self.window)) {
                return Some(rep);
            }
        }
        None
    }
}
