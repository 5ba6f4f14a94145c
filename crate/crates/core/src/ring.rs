//! Coefficient rings for Laurent series: finite fields and dual-number rings
//! `F[ε]/(ε^e)`.

use core::fmt::Debug;
use core::hash::Hash;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A finite commutative coefficient ring with the `q`-Frobenius.
///
/// `Elem::default()` must be the zero element.
pub trait Ring: Clone + Debug {
    type Elem: Copy + Eq + Ord + Hash + Debug + Default;

    fn zero(&self) -> Self::Elem {
        Self::Elem::default()
    }
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: Self::Elem) -> bool {
        a == Self::Elem::default()
    }
    /// The inverse, or `None` when `a` is not a unit.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn is_unit(&self, a: Self::Elem) -> bool {
        self.inv(a).is_some()
    }
    /// `x ↦ x^q`.
    fn frobenius(&self, a: Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// The nilpotent generator `ε`, if the ring has one.
    fn nilpotent(&self) -> Option<Self::Elem> {
        None
    }
    /// The residue field.
    fn residue_field(&self) -> &Field;
    /// Image of a residue-field element (constant in `ε`).
    fn from_residue(&self, a: FieldElement) -> Self::Elem;
}

impl Ring for Field {
    type Elem = FieldElement;

    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }
    fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.spec().add(a, b)
    }
    fn neg(&self, a: FieldElement) -> FieldElement {
        self.spec().neg(a)
    }
    fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.spec().sub(a, b)
    }
    fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.spec().mul(a, b)
    }
    fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        self.spec().inv(a)
    }
    fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.spec().frobenius(a)
    }
    fn from_int(&self, n: i64) -> FieldElement {
        self.spec().from_int(n)
    }
    fn residue_field(&self) -> &Field {
        self
    }
    fn from_residue(&self, a: FieldElement) -> FieldElement {
        a
    }
}

/// Largest supported nilpotency order of `ε`.
pub const MAX_NILPOTENCY: usize = 4;

/// An element `c_0 + c_1 ε + … + c_{e-1} ε^{e-1}` of a dual-number ring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualElem(pub [FieldElement; MAX_NILPOTENCY]);

impl DualElem {
    pub fn constant(a: FieldElement) -> Self {
        let mut c = [FieldElement::ZERO; MAX_NILPOTENCY];
        c[0] = a;
        DualElem(c)
    }
    pub fn part(&self, i: usize) -> FieldElement {
        self.0[i]
    }
}

/// `F[ε]/(ε^e)` with `2 ≤ e ≤ MAX_NILPOTENCY`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNumbers {
    field: Field,
    order: usize,
}

impl DualNumbers {
    pub fn new(field: Field, order: usize) -> Result<Self> {
        if !(2..=MAX_NILPOTENCY).contains(&order) {
            return Err(Error::Unsupported(alloc::format!(
                "nilpotency order {order} outside 2..={MAX_NILPOTENCY}"
            )));
        }
        Ok(DualNumbers { field, order })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The nilpotency order `e` (`ε^e = 0`).
    pub fn order(&self) -> usize {
        self.order
    }

    /// Builds an element from its `ε`-coefficients; entries past the order must be zero.
    pub fn element(&self, parts: &[FieldElement]) -> Result<DualElem> {
        if parts.len() > self.order && parts[self.order..].iter().any(|c| !c.is_zero()) {
            return Err(Error::Invalid(alloc::format!(
                "dual number has nonzero coefficients past ε^{}",
                self.order - 1
            )));
        }
        let mut c = [FieldElement::ZERO; MAX_NILPOTENCY];
        for (slot, &x) in c.iter_mut().zip(parts.iter().take(self.order)) {
            *slot = x;
        }
        Ok(DualElem(c))
    }

    pub fn epsilon(&self) -> DualElem {
        let mut c = [FieldElement::ZERO; MAX_NILPOTENCY];
        c[1] = FieldElement::ONE;
        DualElem(c)
    }
}

impl Ring for DualNumbers {
    type Elem = DualElem;

    fn one(&self) -> DualElem {
        DualElem::constant(FieldElement::ONE)
    }
    fn add(&self, a: DualElem, b: DualElem) -> DualElem {
        let mut c = [FieldElement::ZERO; MAX_NILPOTENCY];
        for i in 0..self.order {
            c[i] = self.field.add(a.0[i], b.0[i]);
        }
        DualElem(c)
    }
    fn neg(&self, a: DualElem) -> DualElem {
        let mut c = [FieldElement::ZERO; MAX_NILPOTENCY];
        for i in 0..self.order {
            c[i] = self.field.neg(a.0[i]);
        }
        DualElem(c)
    }
    fn mul(&self, a: DualElem, b: DualElem) -> DualElem {
        let f = &self.field;
        let mut c = [FieldElement::ZERO; MAX_NILPOTENCY];
        for i in 0..self.order {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..self.order - i {
                c[i + j] = f.add(c[i + j], f.mul(a.0[i], b.0[j]));
            }
        }
        DualElem(c)
    }
    fn inv(&self, a: DualElem) -> Option<DualElem> {
        // (a0 (1 + n))^{-1} = a0^{-1} Σ (-n)^k with n nilpotent
        let f = &self.field;
        let a0_inv = f.inv(a.0[0])?;
        let scaled = self.mul(a, DualElem::constant(a0_inv));
        let mut n = scaled;
        n.0[0] = FieldElement::ZERO;
        let minus_n = self.neg(n);
        let mut term = self.one();
        let mut acc = self.one();
        for _ in 1..self.order {
            term = self.mul(term, minus_n);
            acc = self.add(acc, term);
        }
        Some(self.mul(acc, DualElem::constant(a0_inv)))
    }
    fn frobenius(&self, a: DualElem) -> DualElem {
        // (Σ c_i ε^i)^q = Σ c_i^q ε^{iq} in characteristic p
        let f = &self.field;
        let q = f.q() as usize;
        let mut c = [FieldElement::ZERO; MAX_NILPOTENCY];
        for i in 0..self.order {
            let k = i * q;
            if k < self.order {
                c[k] = f.add(c[k], f.frobenius(a.0[i]));
            }
        }
        DualElem(c)
    }
    fn from_int(&self, n: i64) -> DualElem {
        DualElem::constant(self.field.from_int(n))
    }
    fn nilpotent(&self) -> Option<DualElem> {
        Some(self.epsilon())
    }
    fn residue_field(&self) -> &Field {
        &self.field
    }
    fn from_residue(&self, a: FieldElement) -> DualElem {
        DualElem::constant(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_is_nilpotent_of_exact_order() {
        let f = Field::new(3, 1, None, 3).unwrap();
        let r = DualNumbers::new(f, 3).unwrap();
        let e = r.epsilon();
        let e2 = r.mul(e, e);
        assert!(!r.is_zero(e2));
        assert!(r.is_zero(r.mul(e2, e)));
        assert!(!r.is_unit(e));
    }

    #[test]
    fn dual_inverse() {
        let f = Field::new(3, 1, None, 3).unwrap();
        let r = DualNumbers::new(f.clone(), 3).unwrap();
        let a = r.element(&[f.from_int(2), f.from_int(1), f.from_int(2)]).unwrap();
        let ai = r.inv(a).unwrap();
        assert_eq!(r.mul(a, ai), r.one());
    }

    #[test]
    fn frobenius_kills_epsilon() {
        let f = Field::new(2, 2, None, 2).unwrap();
        let r = DualNumbers::new(f.clone(), 2).unwrap();
        let t = f.generator();
        let a = r.element(&[t, t]).unwrap();
        let fa = r.frobenius(a);
        assert_eq!(fa, DualElem::constant(f.frobenius(t)));
        assert_eq!(fa, r.mul(a, a));
    }
}
