//! Cartan (`K z^μ K`) and Iwahori–Bruhat (`I x I`) reduction by pivoting elimination.

use alloc::vec::Vec;

use super::{FieldMatrix, SeriesMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::root_data::{AffineWeylElement, Coweight, WeylElement};
use crate::series::{Series, EXACT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeReport {
    /// Elementary divisor exponents, descending.
    pub mu: Coweight,
    /// Absolute `z`-precision the elimination ran at.
    pub precision: i64,
}

/// The dominant `μ` with `b ∈ K z^μ K`.
pub fn hodge_polygon(b: &FieldMatrix) -> Result<Coweight> {
    hodge_polygon_detailed(b).map(|h| h.mu)
}

pub fn hodge_polygon_detailed(b: &FieldMatrix) -> Result<HodgeReport> {
    let (work, det_val) = working_copy(b, 0)?;
    let precision = work.precision();
    let pivots = eliminate(&work, |_, _, v| v)?;
    let mut mu: Vec<i64> = pivots.iter().map(|p| p.2).collect();
    mu.sort_by(|a, b| b.cmp(a));
    if let Some(d) = det_val {
        if mu.iter().sum::<i64>() != d {
            return Err(Error::Precision { available: precision, needed: None });
        }
    }
    Ok(HodgeReport { mu: Coweight(mu), precision })
}

/// The `x ∈ W̃` with `g ∈ I x I`, for the upper-triangular Iwahori subgroup.
///
/// Pivots on the least `r·v(g_ij) + j - i`; in every row and every column these keys are
/// distinct, so all multipliers used by the elimination lie in `I`.
pub fn iwahori_coset(g: &FieldMatrix) -> Result<AffineWeylElement> {
    let r = g.r() as i64;
    let (work, _) = working_copy(g, 1)?;
    let pivots = eliminate(&work, |i, j, v| r * v + j as i64 - i as i64)?;
    let n = g.r();
    let mut perm = alloc::vec![0; n];
    let mut lambda = alloc::vec![0; n];
    for (i, j, v) in pivots {
        perm[j] = i;
        lambda[i] = v;
    }
    Ok(AffineWeylElement::new(Coweight(lambda), WeylElement::from_permutation(&perm)))
}

/// Exact input is truncated just past the largest exponent elimination can produce.
fn working_copy(b: &FieldMatrix, slack: i64) -> Result<(FieldMatrix, Option<i64>)> {
    if !b.is_exact() {
        return Ok((b.clone(), None));
    }
    let det = b.det();
    let d = det.valuation().ok_or(Error::NotInvertible)?;
    let vmin = b.valuation_bound() - slack;
    let prec = d - (b.r() as i64 - 1) * vmin + 2;
    Ok((b.truncate(prec), Some(d)))
}

fn eliminate(m: &SeriesMatrix<Field>, key: impl Fn(usize, usize, i64) -> i64) -> Result<Vec<(usize, usize, i64)>> {
    let ring = m.ring();
    let n = m.r();
    let mut a: Vec<Vec<Series<FieldElement>>> = m.rows();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    while !rows.is_empty() {
        let mut best: Option<(i64, usize, usize, i64)> = None;
        let mut unknown: Option<(i64, i64)> = None;
        for &i in &rows {
            for &j in &cols {
                let e = &a[i][j];
                match e.valuation() {
                    Some(v) => {
                        let cand = (key(i, j, v), i, j, v);
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                    None if e.prec() != EXACT => {
                        let k = key(i, j, e.prec());
                        if unknown.is_none_or(|u| k < u.0) {
                            unknown = Some((k, e.prec()));
                        }
                    }
                    None => {}
                }
            }
        }
        let Some((k, pi, pj, v)) = best else {
            return Err(match unknown {
                Some((_, prec)) => Error::Precision { available: prec, needed: None },
                None => Error::NotInvertible,
            });
        };
        if let Some((uk, prec)) = unknown {
            if uk < k {
                return Err(Error::Precision { available: prec, needed: None });
            }
        }
        let piv = &a[pi][pj];
        let rel = if piv.is_exact() { 1 } else { piv.prec() - v };
        let inv = piv.invert(ring, rel)?;
        let pivot_row = a[pi].clone();
        for &i in &rows {
            if i == pi || a[i][pj].is_exact_zero() {
                continue;
            }
            let mult = a[i][pj].mul(&inv, ring);
            for &j in &cols {
                if j != pj && !pivot_row[j].is_exact_zero() {
                    a[i][j] = a[i][j].sub(&mult.mul(&pivot_row[j], ring), ring);
                }
            }
            a[i][pj] = Series::zero();
        }
        rows.retain(|&i| i != pi);
        cols.retain(|&j| j != pj);
        pivots.push((pi, pj, v));
    }
    Ok(pivots)
}
