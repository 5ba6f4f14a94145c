//! Finite fields `F_{p^n} = F_p[t]/(modulus)` in the polynomial basis.
//!
//! Elements are packed base-`p` integers: the coordinate of `t^i` is the `i`-th
//! base-`p` digit. Multiplication goes through discrete-log tables, so the field
//! size is capped at [`MAX_FIELD_SIZE`].

pub(crate) mod poly;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// Largest `p^deg` supported by the table arithmetic.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// An element of `F_{p^deg}`, packed as base-`p` digits of its coordinate vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `F_{p^deg}` with an explicit irreducible modulus and a base field `F_q`, `q = p^e`, `e | deg`.
pub struct FieldSpec {
    p: u32,
    deg: u32,
    q: u64,
    q_exp: u32,
    modulus: Vec<u32>,
    size: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("deg", &self.deg)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.deg == other.deg && self.q == other.q && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds `F_{p^deg}` with base field `F_q`.
    ///
    /// Without an explicit modulus the least monic irreducible polynomial of degree
    /// `deg` is used, where polynomials are ordered by the integer `Σ c_i p^i` of their
    /// non-leading coefficients (so `t^4+t+1` precedes `t^4+t^3+1`).
    pub fn new(p: u32, deg: u32, modulus: Option<&[u32]>, q: u64) -> Result<Self> {
        if !poly::is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if deg == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let size = (p as u64).checked_pow(deg).filter(|&s| s <= MAX_FIELD_SIZE).ok_or_else(|| {
            Error::InvalidField(format!("{p}^{deg} exceeds the supported size {MAX_FIELD_SIZE}"))
        })?;
        let q_exp = power_exponent(q, p as u64).ok_or_else(|| {
            Error::InvalidField(format!("q = {q} is not a power of {p}"))
        })?;
        if q_exp == 0 || !deg.is_multiple_of(q_exp) {
            return Err(Error::InvalidField(format!(
                "q = {q} = {p}^{q_exp} requires {q_exp} to divide the degree {deg}"
            )));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != deg as usize + 1 || m[deg as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {deg} (ascending coefficients)"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(format!("modulus coefficients must be below {p}")));
                }
                let m = m.to_vec();
                if let Some(d) = poly::smallest_factor_degree(&m, p) {
                    return Err(Error::ReducibleModulus { factor_degree: d });
                }
                m
            }
            None => least_irreducible(p, deg),
        };
        let mut spec = FieldSpec {
            p,
            deg,
            q,
            q_exp,
            modulus,
            size: size as u32,
            exp: Vec::new(),
            log: Vec::new(),
        };
        spec.build_tables();
        Ok(spec)
    }

    /// The prime field `F_p` (modulus `t`).
    pub fn prime(p: u32) -> Result<Self> {
        FieldSpec::new(p, 1, None, p as u64)
    }

    fn build_tables(&mut self) {
        let order = self.size as u64 - 1;
        let factors = poly::prime_factors(order);
        let generator = if order > 1 {
            (2..self.size)
                .find(|&cand| {
                    factors
                        .iter()
                        .all(|&l| self.slow_pow(FieldElement(cand), order / l) != FieldElement::ONE)
                })
                .expect("the multiplicative group of a finite field is cyclic")
        } else {
            1
        };
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; self.size as usize];
        let mut x = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x.0;
            log[x.0 as usize] = i as u32;
            x = self.slow_mul(x, FieldElement(generator));
        }
        self.exp = exp;
        self.log = log;
    }

    fn slow_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let pa = self.coords(a);
        let pb = self.coords(b);
        let r = poly::mul_mod(&pa, &pb, &self.modulus, self.p);
        self.from_coords(&r)
    }

    fn slow_pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn deg(&self) -> u32 {
        self.deg
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// `e` with `q = p^e`.
    pub fn q_exponent(&self) -> u32 {
        self.q_exp
    }
    /// Degree of the field over `F_q`.
    pub fn degree_over_q(&self) -> u32 {
        self.deg / self.q_exp
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Coordinates in the basis `1, t, …, t^{deg-1}`.
    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.deg as usize);
        let mut x = a.0;
        for _ in 0..self.deg {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    /// Packs a coordinate vector; entries are reduced mod `p`, missing ones are zero.
    /// Longer inputs are reduced modulo the modulus.
    pub fn from_coords(&self, c: &[u32]) -> FieldElement {
        let reduced;
        let c = if c.len() > self.deg as usize {
            let mut v: Vec<u32> = c.iter().map(|&x| x % self.p).collect();
            poly::trim(&mut v);
            reduced = poly::rem(&v, &self.modulus, self.p);
            &reduced[..]
        } else {
            c
        };
        let mut x = 0u32;
        for &d in c.iter().rev() {
            x = x * self.p + d % self.p;
        }
        FieldElement(x)
    }

    pub fn element(&self, packed: u32) -> Result<FieldElement> {
        if packed < self.size {
            Ok(FieldElement(packed))
        } else {
            Err(Error::Invalid(format!("{packed} is not an element of a field of size {}", self.size)))
        }
    }

    /// The class of `t`, the polynomial-basis generator.
    pub fn generator(&self) -> FieldElement {
        self.from_coords(&[0, 1])
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.exp.len();
        let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.exp[i % order])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let order = self.exp.len();
        let l = self.log[a.0 as usize] as usize;
        Some(FieldElement(self.exp[(order - l) % order]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.exp.len() as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % order)) % order) as usize])
    }

    /// The `q`-Frobenius `x ↦ x^q`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.q)
    }

    /// `σ^k(x) = x^{q^k}`.
    pub fn frobenius_pow(&self, a: FieldElement, k: u32) -> FieldElement {
        let mut x = a;
        for _ in 0..k % self.degree_over_q().max(1) {
            x = self.frobenius(x);
        }
        x
    }

    /// Whether `a` lies in `F_{q^s}`, i.e. is fixed by `σ^s`.
    pub fn in_subfield(&self, a: FieldElement, s: u32) -> bool {
        self.frobenius_pow(a, s) == a
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }
}

/// Least `e` with `base^e = n`.
fn power_exponent(n: u64, base: u64) -> Option<u32> {
    let mut x = 1u64;
    let mut e = 0;
    while x < n {
        x = x.checked_mul(base)?;
        e += 1;
    }
    (x == n).then_some(e)
}

fn least_irreducible(p: u32, deg: u32) -> Vec<u32> {
    let count = (p as u64).pow(deg);
    for v in 0..count {
        let mut m = Vec::with_capacity(deg as usize + 1);
        let mut x = v;
        for _ in 0..deg {
            m.push((x % p as u64) as u32);
            x /= p as u64;
        }
        m.push(1);
        if poly::smallest_factor_degree(&m, p).is_none() {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Shared handle to a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field(Arc<FieldSpec>);

impl Field {
    pub fn new(p: u32, deg: u32, modulus: Option<&[u32]>, q: u64) -> Result<Self> {
        FieldSpec::new(p, deg, modulus, q).map(Field::from)
    }

    /// `F_p` with `q = p`.
    pub fn prime(p: u32) -> Result<Self> {
        FieldSpec::prime(p).map(Field::from)
    }

    /// `F_{q^m}` over `F_q`, `q = p^e`, with the default modulus.
    pub fn extension(p: u32, q: u64, m: u32) -> Result<Self> {
        let e = power_exponent(q, p as u64)
            .ok_or_else(|| Error::InvalidField(format!("q = {q} is not a power of {p}")))?;
        Field::new(p, e * m, None, q)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    /// An embedding of `self` into `target`, sending `t` to the least root (as a packed
    /// integer) of `self`'s modulus in `target`.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding> {
        if self.p() != target.p() || !target.deg().is_multiple_of(self.deg()) {
            return Err(Error::Unsupported(format!(
                "no embedding of F_{}^{} into F_{}^{}",
                self.p(),
                self.deg(),
                target.p(),
                target.deg()
            )));
        }
        let images = if self.deg() == 1 {
            vec![FieldElement::ONE]
        } else {
            let root = target
                .elements()
                .find(|&x| {
                    let mut acc = FieldElement::ZERO;
                    for &c in self.modulus().iter().rev() {
                        acc = target.add(target.mul(acc, x), target.from_int(c as i64));
                    }
                    acc.is_zero()
                })
                .ok_or_else(|| Error::Unsupported("modulus has no root in the target".into()))?;
            let mut pw = Vec::with_capacity(self.deg() as usize);
            let mut x = FieldElement::ONE;
            for _ in 0..self.deg() {
                pw.push(x);
                x = target.mul(x, root);
            }
            pw
        };
        Ok(Embedding { source: self.clone(), target: target.clone(), basis_images: images })
    }
}

impl From<FieldSpec> for Field {
    fn from(spec: FieldSpec) -> Self {
        Field(Arc::new(spec))
    }
}

impl Deref for Field {
    type Target = FieldSpec;
    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

/// A field embedding given by the images of the polynomial basis.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    basis_images: Vec<FieldElement>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }
    pub fn target(&self) -> &Field {
        &self.target
    }
    pub fn apply(&self, a: FieldElement) -> FieldElement {
        let t = &self.target;
        self.source
            .coords(a)
            .iter()
            .zip(&self.basis_images)
            .fold(FieldElement::ZERO, |acc, (&c, &img)| {
                t.add(acc, t.mul(t.from_int(c as i64), img))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = FieldSpec::new(2, 1, None, 2).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.size(), 2);
        assert_eq!(f.mul(FieldElement::ONE, FieldElement::ONE), FieldElement::ONE);
    }

    #[test]
    fn default_modulus_f4_and_f16() {
        let f4 = FieldSpec::new(2, 2, None, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f16 = FieldSpec::new(2, 4, None, 2).unwrap();
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        let err = FieldSpec::new(2, 2, Some(&[1, 0, 1]), 2).unwrap_err();
        assert_eq!(err, Error::ReducibleModulus { factor_degree: 1 });
    }

    #[test]
    fn bad_q_rejected() {
        assert!(FieldSpec::new(2, 3, None, 4).is_err());
        assert!(FieldSpec::new(2, 4, None, 6).is_err());
        assert!(FieldSpec::new(4, 1, None, 4).is_err());
    }

    #[test]
    fn frobenius_of_generator_in_f4() {
        let f4 = FieldSpec::new(2, 2, None, 2).unwrap();
        let t = f4.generator();
        // t^2 = t + 1
        assert_eq!(f4.frobenius(t), f4.from_coords(&[1, 1]));
        // F_2 is fixed
        assert_eq!(f4.frobenius(FieldElement::ONE), FieldElement::ONE);
    }

    #[test]
    fn frobenius_has_order_deg_over_e() {
        let f = FieldSpec::new(2, 6, None, 4).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius_pow(a, 3), a);
        }
        assert!(f.elements().any(|a| f.frobenius(a) != a));
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let f4 = Field::new(2, 2, None, 2).unwrap();
        let f16 = Field::new(2, 4, None, 2).unwrap();
        let emb = f4.embedding_into(&f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(emb.apply(f4.mul(a, b)), f16.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(f4.add(a, b)), f16.add(emb.apply(a), emb.apply(b)));
            }
        }
        assert!(Field::new(2, 3, None, 2).unwrap().embedding_into(&f16).is_err());
    }
}
