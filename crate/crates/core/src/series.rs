//! Truncated Laurent series `Σ_{k ≥ ord} c_k z^k + O(z^prec)` over a [`Ring`].
//!
//! A series is known modulo `z^prec`; `prec == EXACT` marks an exact Laurent
//! polynomial. Stored coefficients are normalized: the first and last stored
//! coefficients are nonzero, and exponents past the stored ones (but below `prec`)
//! are zero. Arithmetic propagates precision pessimistically and never invents
//! coefficients at or beyond `prec`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{max, min};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Precision of an exact series.
pub const EXACT: i64 = i64::MAX;

fn padd(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series<E> {
    ord: i64,
    prec: i64,
    coeffs: Vec<E>,
}

impl<E: Copy + Eq + Default> Series<E> {
    /// The exact zero series.
    pub fn zero() -> Self {
        Series { ord: EXACT, prec: EXACT, coeffs: Vec::new() }
    }

    /// `O(z^prec)`: nothing is known below `prec` except that it vanishes.
    pub fn zero_mod(prec: i64) -> Self {
        Series { ord: prec, prec, coeffs: Vec::new() }
    }

    /// Exact Laurent polynomial `Σ coeffs[i] z^{ord+i}`.
    pub fn exact(ord: i64, coeffs: Vec<E>) -> Self {
        Self::normalized(ord, EXACT, coeffs)
    }

    /// `c z^k`, exact.
    pub fn monomial(c: E, k: i64) -> Self {
        Self::exact(k, vec![c])
    }

    /// `Σ coeffs[i] z^{ord+i} + O(z^prec)`. Fails when a nonzero coefficient sits at or past `prec`.
    pub fn new(ord: i64, coeffs: Vec<E>, prec: i64) -> Result<Self> {
        let zero = E::default();
        if prec != EXACT {
            for (i, c) in coeffs.iter().enumerate() {
                if *c != zero && ord + i as i64 >= prec {
                    return Err(Error::Invalid(alloc::format!(
                        "coefficient at z^{} lies outside the precision window (< {prec})",
                        ord + i as i64
                    )));
                }
            }
        }
        Ok(Self::normalized(ord, prec, coeffs))
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are not allowed.
    pub fn from_terms(terms: &[(i64, E)], prec: i64) -> Result<Self> {
        let zero = E::default();
        let nz: Vec<_> = terms.iter().filter(|(_, c)| *c != zero).collect();
        if nz.is_empty() {
            return Ok(if prec == EXACT { Self::zero() } else { Self::zero_mod(prec) });
        }
        let lo = nz.iter().map(|(k, _)| *k).min().unwrap();
        let hi = nz.iter().map(|(k, _)| *k).max().unwrap();
        let mut coeffs = vec![zero; (hi - lo + 1) as usize];
        for (k, c) in nz {
            let slot = &mut coeffs[(k - lo) as usize];
            if *slot != zero {
                return Err(Error::Invalid(alloc::format!("exponent {k} given twice")));
            }
            *slot = *c;
        }
        Self::new(lo, coeffs, prec)
    }

    fn normalized(ord: i64, prec: i64, mut coeffs: Vec<E>) -> Self {
        let zero = E::default();
        if prec != EXACT {
            let keep = (prec - ord).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last() == Some(&zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| *c != zero);
        match lead {
            None => Series { ord: prec, prec, coeffs: Vec::new() },
            Some(0) => Series { ord, prec, coeffs },
            Some(s) => {
                coeffs.drain(..s);
                Series { ord: ord + s as i64, prec, coeffs }
            }
        }
    }

    /// Lowest tracked exponent: the valuation for nonzero series, `prec` otherwise.
    pub fn ord(&self) -> i64 {
        self.ord
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }
    /// Stored coefficients, starting at `z^ord`.
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }
    /// Valuation when a nonzero coefficient is known.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.ord)
    }
    /// A lower bound for the true valuation (`EXACT` for the exact zero series).
    pub fn valuation_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.ord
        }
    }
    /// Exclusive end of the stored coefficients.
    pub fn degree_end(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.ord
        } else {
            self.ord + self.coeffs.len() as i64
        }
    }
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec == EXACT
    }
    /// No nonzero coefficient is known (zero modulo `z^prec`).
    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Leading term `(valuation, coefficient)`.
    pub fn lead(&self) -> Option<(i64, E)> {
        self.coeffs.first().map(|&c| (self.ord, c))
    }
    /// Coefficient of `z^k`, or `None` when `k ≥ prec`.
    pub fn coeff(&self, k: i64) -> Option<E> {
        if k >= self.prec {
            return None;
        }
        if self.coeffs.is_empty() || k < self.ord || k >= self.degree_end() {
            return Some(E::default());
        }
        Some(self.coeffs[(k - self.ord) as usize])
    }
    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, E)> + '_ {
        let zero = E::default();
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c != zero)
            .map(move |(i, c)| (self.ord + i as i64, *c))
    }

    /// Forgets all coefficients at or past `prec` (no-op if already coarser).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::normalized(self.ord, prec, self.coeffs.clone())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_exact_zero() {
            return self.clone();
        }
        Series { ord: padd(self.ord, k), prec: padd(self.prec, k), coeffs: self.coeffs.clone() }
    }

    /// Whether `self` and `other` agree on every exponent below both precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let lim = min(self.prec, other.prec);
        let mut exps = self.terms().map(|(k, _)| k).chain(other.terms().map(|(k, _)| k));
        exps.all(|k| k >= lim || self.coeff(k) == other.coeff(k))
    }
}

impl<E: Copy + Eq + Default> Series<E> {
    pub fn constant<R: Ring<Elem = E>>(c: E, _ring: &R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::monomial(ring.one(), 0)
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.combine(other, |a, b| ring.add(a, b))
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.combine(other, |a, b| ring.sub(a, b))
    }

    fn combine(&self, other: &Self, op: impl Fn(E, E) -> E) -> Self {
        let prec = min(self.prec, other.prec);
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return if prec == EXACT { Self::zero() } else { Self::zero_mod(prec) };
        }
        let nonempty = [self, other].into_iter().filter(|s| !s.coeffs.is_empty());
        let (lo, end) = nonempty.fold((EXACT, i64::MIN), |(lo, end), s| {
            (min(lo, s.ord), max(end, s.degree_end()))
        });
        let hi = min(prec, end);
        if hi <= lo {
            return Self::zero_mod(prec);
        }
        let zero = E::default();
        let mut coeffs = vec![zero; (hi - lo) as usize];
        for (k, slot) in (lo..hi).zip(coeffs.iter_mut()) {
            let a = self.coeff(k).unwrap_or(zero);
            let b = other.coeff(k).unwrap_or(zero);
            *slot = op(a, b);
        }
        Self::normalized(lo, prec, coeffs)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map_coeffs(|c| ring.neg(c))
    }

    /// Multiplication by a ring element.
    pub fn scale<R: Ring<Elem = E>>(&self, c: E, ring: &R) -> Self {
        if ring.is_zero(c) {
            return Self::zero();
        }
        self.map_coeffs(|x| ring.mul(c, x))
    }

    /// Coefficientwise `x ↦ x^q`; `z` is fixed.
    pub fn frobenius<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map_coeffs(|c| ring.frobenius(c))
    }

    pub fn frobenius_pow<R: Ring<Elem = E>>(&self, k: u32, ring: &R) -> Self {
        let mut s = self.clone();
        for _ in 0..k {
            s = s.frobenius(ring);
        }
        s
    }

    fn map_coeffs(&self, f: impl Fn(E) -> E) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| f(c)).collect();
        Self::normalized(self.ord, self.prec, coeffs)
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let prec = min(
            padd(self.prec, other.valuation_bound()),
            padd(other.prec, self.valuation_bound()),
        );
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_mod(prec);
        }
        let ord = self.ord + other.ord;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = if prec == EXACT { full } else { min(full as i64, max(prec - ord, 0)) as usize };
        let zero = E::default();
        let mut out = vec![zero; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == zero || i >= len {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                if b != zero {
                    out[i + j] = ring.add(out[i + j], ring.mul(a, b));
                }
            }
        }
        Self::normalized(ord, prec, out)
    }

    /// Multiplicative inverse.
    ///
    /// A finite-precision input `z^v u + O(z^prec)` yields `z^{-v} u^{-1} + O(z^{prec-2v})`.
    /// An exact input that is not a monomial has an infinite inverse, which is returned
    /// with relative precision `exact_rel_prec`.
    pub fn invert<R: Ring<Elem = E>>(&self, ring: &R, exact_rel_prec: i64) -> Result<Self> {
        let Some((v, c0)) = self.lead() else {
            return Err(if self.is_exact() {
                Error::NotAUnit
            } else {
                Error::Precision { available: self.prec, needed: None }
            });
        };
        let c0_inv = ring.inv(c0).ok_or(Error::NotAUnit)?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Self::monomial(c0_inv, -v));
        }
        let rel = if self.is_exact() { exact_rel_prec } else { self.prec - v };
        if rel <= 0 {
            return Err(Error::Precision { available: rel, needed: Some(1) });
        }
        let n = rel as usize;
        let zero = E::default();
        let mut g = vec![zero; n];
        g[0] = c0_inv;
        for k in 1..n {
            let mut acc = zero;
            for j in 1..=min(k, self.coeffs.len() - 1) {
                acc = ring.add(acc, ring.mul(self.coeffs[j], g[k - j]));
            }
            g[k] = ring.neg(ring.mul(c0_inv, acc));
        }
        Ok(Self::normalized(-v, -v + rel, g))
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow<R: Ring<Elem = E>>(&self, k: u32, ring: &R) -> Self {
        let mut acc = Self::one(ring);
        for _ in 0..k {
            acc = acc.mul(self, ring);
        }
        acc
    }
}
