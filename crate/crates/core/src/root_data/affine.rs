use alloc::vec::Vec;

use super::{Coweight, RootDatum, WeylElement};
use crate::error::Result;
use crate::rational::{pair_int, Q};

/// `t_λ w` in the extended affine Weyl group `W ⋉ X_*(T)`.
///
/// It acts on `X_*(T)_R` by `v ↦ λ + w(v)`. The base alcove is
/// `{v : -1 < ⟨α, v⟩ < 0 for α > 0}`, the alcove fixed by the upper-triangular
/// Iwahori subgroup when `t_λ` is realized as `z^λ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineWeylElement {
    translation: Coweight,
    finite: WeylElement,
}

impl AffineWeylElement {
    pub fn new(translation: Coweight, finite: WeylElement) -> Self {
        assert_eq!(translation.len(), finite.dim(), "translation and Weyl element sizes differ");
        AffineWeylElement { translation, finite }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Coweight(alloc::vec![0; n]), WeylElement::identity(n))
    }

    pub fn translation_by(lambda: Coweight) -> Self {
        let n = lambda.len();
        Self::new(lambda, WeylElement::identity(n))
    }

    pub fn finite_element(w: WeylElement) -> Self {
        Self::new(Coweight(alloc::vec![0; w.dim()]), w)
    }

    pub fn translation(&self) -> &Coweight {
        &self.translation
    }

    pub fn finite(&self) -> &WeylElement {
        &self.finite
    }

    /// `(t_λ w)(t_μ v) = t_{λ + wμ} wv`.
    pub fn mul(&self, other: &AffineWeylElement) -> AffineWeylElement {
        let wmu = self.finite.apply(&other.translation.0);
        let t = self.translation.0.iter().zip(wmu).map(|(a, b)| a + b).collect();
        AffineWeylElement { translation: Coweight(t), finite: self.finite.mul(&other.finite) }
    }

    /// `(t_λ w)^{-1} = t_{-w^{-1}λ} w^{-1}`.
    pub fn inverse(&self) -> AffineWeylElement {
        let winv = self.finite.inverse();
        let t = winv.apply(&self.translation.0).into_iter().map(|x| -x).collect();
        AffineWeylElement { translation: Coweight(t), finite: winv }
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let wv = self.finite.apply_rational(v);
        wv.into_iter().zip(&self.translation.0).map(|(a, &b)| a + b).collect()
    }

    /// Number of affine root hyperplanes separating the base alcove from its image:
    /// `Σ_{α>0, w⁻¹α>0} |⟨α,λ⟩| + Σ_{α>0, w⁻¹α<0} |⟨α,λ⟩ + 1|`.
    pub fn length(&self, datum: &RootDatum) -> Result<u64> {
        datum.check_len(self.translation.len())?;
        let mut total = 0u64;
        for alpha in datum.positive_roots() {
            let k = pair_int(alpha, &self.translation.0);
            let k = if datum.inverse_keeps_positive(&self.finite, alpha) { k } else { k + 1 };
            total += k.unsigned_abs();
        }
        Ok(total)
    }
}
