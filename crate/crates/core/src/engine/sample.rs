//! Random elements of `K`, `I`, `I_n` and of windows of `LG`, for invariance tests.
//!
//! Coefficients are drawn uniformly from a pool, typically all of `F_{q^m}` or the
//! subfield `F_{q^s}`.

use alloc::vec::Vec;

use rand::{Rng, RngExt};

use super::FieldMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ring::Ring;
use crate::series::Series;

/// Elements of `F_{q^s}` inside the field, in increasing packed order.
pub fn subfield_elements(field: &Field, s: u32) -> Vec<FieldElement> {
    field.elements().filter(|&a| field.in_subfield(a, s)).collect()
}

/// A coefficient pool; must contain `0` and `1`.
#[derive(Clone, Debug)]
pub struct Pool {
    field: Field,
    elems: Vec<FieldElement>,
    nonzero: Vec<FieldElement>,
}

impl Pool {
    pub fn new(field: Field, elems: Vec<FieldElement>) -> Result<Self> {
        if !elems.contains(&FieldElement::ZERO) || !elems.contains(&FieldElement::ONE) {
            return Err(Error::Invalid("coefficient pool must contain 0 and 1".into()));
        }
        let nonzero = elems.iter().copied().filter(|c| !c.is_zero()).collect();
        Ok(Pool { field, elems, nonzero })
    }

    pub fn full(field: &Field) -> Self {
        Self::new(field.clone(), field.elements().collect()).expect("fields contain 0 and 1")
    }

    pub fn subfield(field: &Field, s: u32) -> Self {
        Self::new(field.clone(), subfield_elements(field, s)).expect("subfields contain 0 and 1")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn any<G: Rng + ?Sized>(&self, rng: &mut G) -> FieldElement {
        self.elems[rng.random_range(0..self.elems.len())]
    }

    pub fn nonzero<G: Rng + ?Sized>(&self, rng: &mut G) -> FieldElement {
        self.nonzero[rng.random_range(0..self.nonzero.len())]
    }

    /// An exact Laurent polynomial with exponents in `lo..=hi`.
    pub fn poly<G: Rng + ?Sized>(&self, lo: i64, hi: i64, rng: &mut G) -> Series<FieldElement> {
        if hi < lo {
            return Series::zero();
        }
        let coeffs = (lo..=hi).map(|_| self.any(rng)).collect();
        Series::exact(lo, coeffs)
    }
}

fn build(field: &Field, r: usize, f: impl FnMut(usize, usize) -> Series<FieldElement>) -> FieldMatrix {
    FieldMatrix::from_fn(field.clone(), r, f).expect("sampled matrices have a supported size")
}

fn unipotent<G: Rng + ?Sized>(pool: &Pool, r: usize, upper: bool, lo: i64, hi: i64, rng: &mut G) -> FieldMatrix {
    let one = pool.field().one();
    build(pool.field(), r, |i, j| {
        if i == j {
            Series::monomial(one, 0)
        } else if (i < j) == upper {
            pool.poly(lo, hi, rng)
        } else {
            Series::zero()
        }
    })
}

fn diagonal<G: Rng + ?Sized>(pool: &Pool, r: usize, rng: &mut G) -> FieldMatrix {
    build(pool.field(), r, |i, j| if i == j { Series::monomial(pool.nonzero(rng), 0) } else { Series::zero() })
}

fn permutation<G: Rng + ?Sized>(field: &Field, r: usize, rng: &mut G) -> FieldMatrix {
    let mut perm: Vec<usize> = (0..r).collect();
    for i in (1..r).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let one = field.one();
    build(field, r, |i, j| if perm[j] == i { Series::monomial(one, 0) } else { Series::zero() })
}

/// An element of `I`: upper triangular modulo `z`, polynomial of degree `≤ degree`.
pub fn sample_iwahori<G: Rng + ?Sized>(pool: &Pool, r: usize, degree: i64, rng: &mut G) -> FieldMatrix {
    let upper = unipotent(pool, r, true, 0, degree, rng);
    let lower = unipotent(pool, r, false, 1, degree.max(1), rng);
    let d = diagonal(pool, r, rng);
    upper.mul(&d).and_then(|m| m.mul(&lower)).expect("same size")
}

/// An element of `K = GL_r(F[[z]])`, polynomial of degree `≤ degree` in each factor.
pub fn sample_k<G: Rng + ?Sized>(pool: &Pool, r: usize, degree: i64, rng: &mut G) -> FieldMatrix {
    let w = permutation(pool.field(), r, rng);
    let a = sample_iwahori(pool, r, degree, rng);
    let b = sample_iwahori(pool, r, degree, rng);
    a.mul(&w).and_then(|m| m.mul(&b)).expect("same size")
}

/// An element of `I_n`: `≡ 1 mod z^n` and upper triangular mod `z^{n+1}`.
pub fn sample_congruence<G: Rng + ?Sized>(pool: &Pool, r: usize, n: i64, degree: i64, rng: &mut G) -> FieldMatrix {
    let field = pool.field();
    let one = field.one();
    let minus_one = field.neg(one);
    build(field, r, |i, j| {
        let mut lead = if i <= j { pool.any(rng) } else { FieldElement::ZERO };
        if i == j && n == 0 {
            while lead == minus_one {
                lead = pool.any(rng);
            }
        }
        let tail = pool.poly(n + 1, n + 1 + degree, rng);
        let mut e = Series::monomial(lead, n).add(&tail, field);
        if i == j {
            e = e.add(&Series::monomial(one, 0), field);
        }
        e
    })
}

/// `u · z^λ · l` with `u` upper and `l` lower unipotent, off-diagonal exponents and `λ`
/// in `[-window, window]`. Its inverse is again an exact Laurent polynomial matrix.
pub fn sample_window<G: Rng + ?Sized>(pool: &Pool, r: usize, window: i64, rng: &mut G) -> FieldMatrix {
    let u = unipotent(pool, r, true, -window, window, rng);
    let l = unipotent(pool, r, false, -window, window, rng);
    let lambda: Vec<i64> = (0..r).map(|_| rng.random_range(-window..=window)).collect();
    let t = FieldMatrix::monomial(pool.field().clone(), &lambda).expect("supported size");
    u.mul(&t).and_then(|m| m.mul(&l)).expect("same size")
}

/// `k₁ · z^μ · k₂` with `k₁, k₂ ∈ K` sampled by [`sample_k`].
pub fn sample_double_coset<G: Rng + ?Sized>(pool: &Pool, mu: &[i64], degree: i64, rng: &mut G) -> FieldMatrix {
    let r = mu.len();
    let k1 = sample_k(pool, r, degree, rng);
    let k2 = sample_k(pool, r, degree, rng);
    let t = FieldMatrix::monomial(pool.field().clone(), mu).expect("supported size");
    k1.mul(&t).and_then(|m| m.mul(&k2)).expect("same size")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{hodge_polygon, iwahori_coset};
    use crate::root_data::{AffineWeylElement, Coweight};
    use rand::SeedableRng;
    use alloc::vec;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_have_the_right_type() {
        let f = Field::new(3, 1, None, 3).unwrap();
        let pool = Pool::full(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let k = sample_k(&pool, 3, 2, &mut rng);
            assert_eq!(hodge_polygon(&k).unwrap(), Coweight(vec![0, 0, 0]));
            let i = sample_iwahori(&pool, 2, 2, &mut rng);
            assert_eq!(iwahori_coset(&i).unwrap(), AffineWeylElement::identity(2));
            let h = sample_congruence(&pool, 2, 0, 2, &mut rng);
            assert_eq!(iwahori_coset(&h).unwrap(), AffineWeylElement::identity(2));
            let g = sample_window(&pool, 2, 2, &mut rng);
            assert!(g.inverse(1).unwrap().is_exact());
        }
    }

    #[test]
    fn subfield_pool() {
        let f = Field::new(2, 4, None, 2).unwrap();
        assert_eq!(subfield_elements(&f, 2).len(), 4);
        assert_eq!(subfield_elements(&f, 1), vec![FieldElement::ZERO, FieldElement::ONE]);
    }
}
