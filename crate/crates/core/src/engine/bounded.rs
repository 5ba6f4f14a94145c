//! Boundedness of `GL_r` shtukas by a coweight, via divisibility of minors.

use alloc::vec::Vec;

use super::{combinations, SeriesMatrix};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::root_data::Coweight;
use crate::series::Series;

/// The uniformizer `z̃` that boundedness is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundMode {
    /// `z̃ = z`.
    Z,
    /// `z̃ = z - ζ` with `ζ` the nilpotent generator `ε` of the coefficient ring
    /// (`ζ = 0` over a field).
    ZMinusZeta,
}

/// Whether `bσ*` is bounded by `μ`: every `i × i` minor of `b` is divisible by
/// `z̃^{d_{r-i+1} + … + d_r}` and `det b` is a unit times `z̃^{Σ d_i}`.
pub fn bounded_by<R: Ring>(b: &SeriesMatrix<R>, mu: &Coweight, mode: BoundMode) -> Result<bool> {
    let r = b.r();
    if mu.len() != r {
        return Err(Error::DatumMismatch { expected: r, found: mu.len() });
    }
    if mu.0.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant);
    }
    let ring = b.ring();
    let inv = ztilde_inverse(ring, mode);
    let ztilde = ztilde(ring, mode);
    let power = |k: i64| -> Series<R::Elem> {
        // z̃^{-k}
        if k >= 0 {
            inv.pow(k as u32, ring)
        } else {
            ztilde.pow((-k) as u32, ring)
        }
    };
    let total: i64 = mu.0.iter().sum();
    let det = b.det().mul(&power(total), ring);
    if !integral(&det)? {
        return Ok(false);
    }
    match det.coeff(0) {
        None => return Err(Error::Precision { available: det.prec(), needed: Some(1) }),
        Some(c) if !ring.is_unit(c) => return Ok(false),
        Some(_) => {}
    }
    for i in 1..r {
        let k: i64 = mu.0[r - i..].iter().sum();
        let scale = power(k);
        let subsets = combinations(r, i);
        for rows in &subsets {
            for cols in &subsets {
                let m = b.minor(rows, cols).mul(&scale, ring);
                if !integral(&m)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether a series lies in `R[[z]]`.
fn integral<E: Copy + Eq + Default>(s: &Series<E>) -> Result<bool> {
    match s.valuation() {
        Some(v) => Ok(v >= 0),
        None if s.prec() >= 0 => Ok(true),
        None => Err(Error::Precision { available: s.prec(), needed: Some(0) }),
    }
}

fn zeta<R: Ring>(ring: &R, mode: BoundMode) -> Option<R::Elem> {
    match mode {
        BoundMode::Z => None,
        BoundMode::ZMinusZeta => ring.nilpotent(),
    }
}

fn ztilde<R: Ring>(ring: &R, mode: BoundMode) -> Series<R::Elem> {
    match zeta(ring, mode) {
        None => Series::monomial(ring.one(), 1),
        Some(e) => Series::exact(0, alloc::vec![ring.neg(e), ring.one()]),
    }
}

/// `(z - ζ)^{-1} = Σ_j ζ^j z^{-j-1}`, a finite sum because `ζ` is nilpotent.
fn ztilde_inverse<R: Ring>(ring: &R, mode: BoundMode) -> Series<R::Elem> {
    let Some(e) = zeta(ring, mode) else {
        return Series::monomial(ring.one(), -1);
    };
    let mut terms: Vec<(i64, R::Elem)> = Vec::new();
    let mut pw = ring.one();
    let mut j = 0;
    while !ring.is_zero(pw) {
        terms.push((-j - 1, pw));
        pw = ring.mul(pw, e);
        j += 1;
    }
    Series::from_terms(&terms, crate::series::EXACT).expect("distinct exponents")
}
