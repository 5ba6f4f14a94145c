//! σ-conjugation, σ-norms, Newton points and decency.

use alloc::vec::Vec;

use super::{FieldMatrix, SeriesMatrix};
use crate::error::{Error, Result};
use crate::newton::NewtonPoint;
use crate::rational::{int, q, Q};
use crate::ring::Ring;
use crate::root_data::Coweight;
use crate::series::EXACT;

/// `g⁻¹ · b · σ(g)`; a non-monomial `det g` is inverted to relative precision `rel_prec`.
pub fn sigma_conjugate<R: Ring>(g: &SeriesMatrix<R>, b: &SeriesMatrix<R>, rel_prec: i64) -> Result<SeriesMatrix<R>> {
    let ginv = g.inverse(rel_prec)?;
    ginv.mul(b)?.mul(&g.frobenius())
}

/// `b · σ(b) · … · σ^{s-1}(b)`, after checking that `b` has entries fixed by `σ^s`.
pub fn norm_s<R: Ring>(b: &SeriesMatrix<R>, s: u32) -> Result<SeriesMatrix<R>> {
    let b = b.clone().with_subfield(s)?;
    let mut acc = b.clone();
    let mut cur = b.clone();
    for _ in 1..s {
        cur = cur.frobenius();
        acc = acc.mul(&cur)?;
    }
    acc.with_subfield(s)
}

/// `v_z(det b)`, the Kottwitz point of `b` under `π₁(GL_r) = Z`.
pub fn kottwitz_point_of<R: Ring>(b: &SeriesMatrix<R>) -> Result<i64> {
    let det = b.det();
    match det.valuation() {
        Some(v) => Ok(v),
        None if det.is_exact() => Err(Error::NotInvertible),
        None => Err(Error::Precision { available: det.prec(), needed: None }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonReport {
    pub nu: NewtonPoint,
    /// `v_z` of the characteristic polynomial coefficients of the σ-norm, `None` where
    /// only a lower bound was available.
    pub valuations: Vec<Option<i64>>,
    /// Smallest precision among the characteristic polynomial coefficients.
    pub precision: i64,
}

/// The Newton point of `bσ*`, from the `z`-adic Newton polygon of the characteristic
/// polynomial of the `s`-fold σ-norm.
pub fn newton_point(b: &FieldMatrix, s: u32) -> Result<NewtonPoint> {
    newton_point_detailed(b, s).map(|n| n.nu)
}

pub fn newton_point_detailed(b: &FieldMatrix, s: u32) -> Result<NewtonReport> {
    let n = norm_s(b, s)?;
    let r = n.r();
    let cp = n.charpoly();
    let precision = cp.iter().map(|c| c.prec()).min().unwrap_or(EXACT);
    let valuations: Vec<Option<i64>> = cp.iter().map(|c| c.valuation()).collect();
    if valuations[r].is_none() {
        return Err(if cp[r].is_exact() {
            Error::NotInvertible
        } else {
            Error::Precision { available: cp[r].prec(), needed: None }
        });
    }
    let known: Vec<(i64, i64)> =
        valuations.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i as i64, v))).collect();
    let hull = lower_hull(&known);
    // unknown coefficients must lie on or above the hull
    for (i, c) in cp.iter().enumerate() {
        if valuations[i].is_none() && !c.is_exact() {
            let h = hull_value(&hull, i as i64);
            if int(c.prec()) < h {
                let needed = crate::rational::ceil(h);
                return Err(Error::Precision { available: c.prec(), needed: Some(needed) });
            }
        }
    }
    let mut slopes: Vec<Q> = Vec::with_capacity(r);
    for w in hull.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let slope = q(y1 - y0, (x1 - x0) * s as i64);
        slopes.extend(core::iter::repeat_n(slope, (x1 - x0) as usize));
    }
    slopes.reverse();
    Ok(NewtonReport { nu: NewtonPoint::new(slopes)?, valuations, precision })
}

/// Vertices of the lower convex hull of points sorted by `x`.
fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the segment a-p
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn hull_value(hull: &[(i64, i64)], x: i64) -> Q {
    for w in hull.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x0 <= x && x <= x1 {
            return int(y0) + q((y1 - y0) * (x - x0), x1 - x0);
        }
    }
    int(hull[0].1)
}

/// `ω` when `(bσ*)^s = z^ω (σ*)^s`, i.e. the σ-norm is exactly `diag(z^{ω_i})`.
pub fn decency_check(b: &FieldMatrix, s: u32) -> Result<Option<Coweight>> {
    let n = norm_s(b, s)?;
    let r = n.r();
    let one = n.ring().one();
    let mut omega = Vec::with_capacity(r);
    for i in 0..r {
        for j in 0..r {
            let e = n.get(i, j);
            if i != j {
                if !e.is_known_zero() {
                    return Ok(None);
                }
                continue;
            }
            match e.lead() {
                Some((v, c)) if c == one && e.coeffs().len() == 1 => omega.push(v),
                Some(_) => return Ok(None),
                None if e.is_exact() => return Ok(None),
                None => return Err(Error::Precision { available: e.prec(), needed: None }),
            }
        }
    }
    Ok(Some(Coweight(omega)))
}
