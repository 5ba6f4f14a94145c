//! Split reductive root data given by simple roots and coroots in `Z^n`.
//!
//! Cocharacters live in `X_*(T) = Z^n`, characters in `X^*(T) = Z^n`, and the pairing
//! is the standard dot product.

mod affine;
mod pi1;
mod weyl;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int_det, pair, pair_int, to_rational, Expansion, Q};

pub use affine::AffineWeylElement;
pub use pi1::{Pi1Class, Pi1Presentation};
pub use weyl::WeylElement;

/// An integral cocharacter.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight(pub Vec<i64>);

/// A rational cocharacter (coordinates are reduced fractions).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalCoweight(pub Vec<Q>);

impl Coweight {
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn to_rational(&self) -> RationalCoweight {
        RationalCoweight(to_rational(&self.0))
    }
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl From<Vec<i64>> for Coweight {
    fn from(v: Vec<i64>) -> Self {
        Coweight(v)
    }
}

impl From<&[i64]> for Coweight {
    fn from(v: &[i64]) -> Self {
        Coweight(v.to_vec())
    }
}

impl RationalCoweight {
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

impl From<Vec<Q>> for RationalCoweight {
    fn from(v: Vec<Q>) -> Self {
        RationalCoweight(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    heights: Vec<i64>,
    two_rho: Vec<i64>,
    two_rho_coroot: Vec<i64>,
    coroot_expansion: Expansion,
    pi1: Pi1Presentation,
}

impl RootDatum {
    /// Closes the simple roots under simple reflections.
    ///
    /// The pairing matrix `⟨α_i, α_j^∨⟩` must be a Cartan matrix of finite type; this is
    /// checked before the closure loop runs.
    pub fn new(rank: usize, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>) -> Result<Self> {
        let l = simple_roots.len();
        if simple_coroots.len() != l {
            return Err(Error::DatumMismatch { expected: l, found: simple_coroots.len() });
        }
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != rank {
                return Err(Error::DatumMismatch { expected: rank, found: v.len() });
            }
        }
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| pair_int(&simple_roots[i], &simple_coroots[j])).collect())
            .collect();
        check_finite_type(&cartan)?;
        if Expansion::new(rank, &simple_roots).is_none() {
            return Err(Error::NotFiniteType("simple roots are linearly dependent".into()));
        }
        let coroot_expansion = Expansion::new(rank, &simple_coroots)
            .ok_or_else(|| Error::NotFiniteType("simple coroots are linearly dependent".into()))?;

        // roots and coroots in simple coordinates
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for i in 0..l {
            let mut e = vec![0; l];
            e[i] = 1;
            found.insert(e.clone());
            pairs.push((e.clone(), e));
        }
        let mut next = 0;
        while next < pairs.len() {
            let (c, d) = pairs[next].clone();
            next += 1;
            for i in 0..l {
                if c.iter().enumerate().all(|(k, &x)| x == i64::from(k == i)) {
                    continue;
                }
                let beta_i: i64 = (0..l).map(|k| c[k] * cartan[k][i]).sum();
                let i_beta: i64 = (0..l).map(|k| d[k] * cartan[i][k]).sum();
                let mut c2 = c.clone();
                let mut d2 = d.clone();
                c2[i] -= beta_i;
                d2[i] -= i_beta;
                if found.insert(c2.clone()) {
                    pairs.push((c2, d2));
                }
            }
        }
        let combine = |coeffs: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
            let mut v = vec![0; rank];
            for (c, b) in coeffs.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            v
        };
        let mut roots: Vec<(i64, Vec<i64>, Vec<i64>)> = pairs
            .iter()
            .map(|(c, d)| (c.iter().sum(), combine(c, &simple_roots), combine(d, &simple_coroots)))
            .collect();
        roots.sort();
        let heights = roots.iter().map(|r| r.0).collect();
        let positive_roots: Vec<Vec<i64>> = roots.iter().map(|r| r.1.clone()).collect();
        let positive_coroots: Vec<Vec<i64>> = roots.iter().map(|r| r.2.clone()).collect();
        let sum = |vs: &[Vec<i64>]| -> Vec<i64> {
            (0..rank).map(|i| vs.iter().map(|v| v[i]).sum()).collect()
        };
        let two_rho = sum(&positive_roots);
        let two_rho_coroot = sum(&positive_coroots);
        for (j, c) in simple_coroots.iter().enumerate() {
            let p = pair_int(&two_rho, c);
            if p != 2 {
                return Err(Error::NotFiniteType(format!("⟨2ρ, α_{j}^∨⟩ = {p}, expected 2")));
            }
        }
        let pi1 = Pi1Presentation::new(rank, &simple_coroots);
        Ok(RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            positive_roots,
            positive_coroots,
            heights,
            two_rho,
            two_rho_coroot,
            coroot_expansion,
            pi1,
        })
    }

    /// `GL_n` with simple roots and coroots `e_i - e_{i+1}`.
    pub fn gl(n: usize) -> Self {
        let simple: Vec<Vec<i64>> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        RootDatum::new(n, simple.clone(), simple).expect("GL_n is a valid root datum")
    }

    /// Dimension of `X_*(T)`.
    pub fn rank(&self) -> usize {
        self.rank
    }
    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }
    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }
    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }
    /// `a_ij = ⟨α_i, α_j^∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    /// Positive roots ordered by height, then coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }
    /// Coroots matching [`positive_roots`](Self::positive_roots) index by index.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }
    pub fn heights(&self) -> &[i64] {
        &self.heights
    }
    pub fn highest_root(&self) -> Option<(&[i64], &[i64])> {
        let i = self.positive_roots.len().checked_sub(1)?;
        Some((&self.positive_roots[i], &self.positive_coroots[i]))
    }
    /// `2ρ`, the sum of the positive roots.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }
    /// The sum of the positive coroots.
    pub fn two_rho_coroot(&self) -> &[i64] {
        &self.two_rho_coroot
    }
    pub fn pi1(&self) -> &Pi1Presentation {
        &self.pi1
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if n == self.rank {
            Ok(())
        } else {
            Err(Error::DatumMismatch { expected: self.rank, found: n })
        }
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == v)
            || self.positive_roots.iter().any(|r| r.iter().zip(v).all(|(a, b)| *a == -*b))
    }

    /// Whether the character `v` is a positive root.
    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == v)
    }

    /// `⟨2ρ, λ⟩`.
    pub fn two_rho_pairing(&self, lambda: &[i64]) -> i64 {
        pair_int(&self.two_rho, lambda)
    }

    /// `⟨ρ, λ⟩` for a rational cocharacter.
    pub fn rho_pairing(&self, lambda: &[Q]) -> Q {
        pair(&self.two_rho, lambda) / 2
    }

    /// Coefficients `c` with `d = Σ c_j α_j^∨`, or `None` outside the span of the coroots.
    ///
    /// `c_i` is the pairing `⟨ω_i, d⟩` with a fundamental weight.
    pub fn coroot_coefficients(&self, d: &[Q]) -> Result<Option<Vec<Q>>> {
        self.check_len(d.len())?;
        Ok(self.coroot_expansion.solve(d))
    }

    /// `a ⪯ b`: `b - a` is a nonnegative integral combination of simple coroots.
    pub fn dominance_leq(&self, a: &Coweight, b: &Coweight) -> Result<bool> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let d: Vec<Q> = a.0.iter().zip(&b.0).map(|(x, y)| Q::from_integer(y - x)).collect();
        Ok(match self.coroot_expansion.solve(&d) {
            None => false,
            Some(c) => c.iter().all(|x| x.is_integer() && !x.is_negative()),
        })
    }

    /// `a ⪯ b` in `X_*(T)_Q`: `b - a` is a nonnegative rational combination of simple coroots.
    pub fn dominance_leq_rational(&self, a: &RationalCoweight, b: &RationalCoweight) -> Result<bool> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let d: Vec<Q> = a.0.iter().zip(&b.0).map(|(x, y)| y - x).collect();
        Ok(match self.coroot_expansion.solve(&d) {
            None => false,
            Some(c) => c.iter().all(|x| !x.is_negative()),
        })
    }

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| pair_int(a, &lambda.0) >= 0)
    }

    pub fn is_dominant_rational(&self, lambda: &RationalCoweight) -> bool {
        self.simple_roots.iter().all(|a| !pair(a, &lambda.0).is_negative())
    }

    /// `s_i(λ) = λ - ⟨α_i, λ⟩ α_i^∨`.
    pub fn reflect(&self, i: usize, lambda: &Coweight) -> Coweight {
        let k = pair_int(&self.simple_roots[i], &lambda.0);
        Coweight(lambda.0.iter().zip(&self.simple_coroots[i]).map(|(x, c)| x - k * c).collect())
    }

    pub fn reflect_rational(&self, i: usize, lambda: &RationalCoweight) -> RationalCoweight {
        let k = pair(&self.simple_roots[i], &lambda.0);
        RationalCoweight(lambda.0.iter().zip(&self.simple_coroots[i]).map(|(x, &c)| x - k * c).collect())
    }

    /// The dominant element of the Weyl orbit of `λ`, reached by reflecting in simple
    /// roots that pair negatively.
    pub fn dominant_rep(&self, lambda: &Coweight) -> Coweight {
        let mut cur = lambda.clone();
        while let Some(i) = self.simple_roots.iter().position(|a| pair_int(a, &cur.0) < 0) {
            cur = self.reflect(i, &cur);
        }
        cur
    }

    pub fn dominant_rep_rational(&self, lambda: &RationalCoweight) -> RationalCoweight {
        let mut cur = lambda.clone();
        while let Some(i) = self.simple_roots.iter().position(|a| pair(a, &cur.0).is_negative()) {
            cur = self.reflect_rational(i, &cur);
        }
        cur
    }

    /// The Weyl orbit of `λ` in increasing order.
    pub fn weyl_orbit(&self, lambda: &Coweight) -> Vec<Coweight> {
        let mut seen = BTreeSet::new();
        seen.insert(lambda.clone());
        let mut queue = vec![lambda.clone()];
        while let Some(x) = queue.pop() {
            for i in 0..self.semisimple_rank() {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn pi1_class(&self, lambda: &Coweight) -> Result<Pi1Class> {
        self.check_len(lambda.len())?;
        Ok(self.pi1.class(&lambda.0))
    }

    /// Image of a rational cocharacter in `π₁(G) ⊗ Q` (the free coordinates).
    pub fn pi1_rational(&self, lambda: &RationalCoweight) -> Result<Vec<Q>> {
        self.check_len(lambda.len())?;
        Ok(self.pi1.rational_image(&lambda.0))
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement::reflection(&self.simple_roots[i], &self.simple_coroots[i])
    }

    /// `w^{-1}α > 0` for a positive root `α`.
    pub(crate) fn inverse_keeps_positive(&self, w: &WeylElement, alpha: &[i64]) -> bool {
        self.is_positive_root(&w.transpose_apply(alpha))
    }
}

fn check_finite_type(a: &[Vec<i64>]) -> Result<()> {
    let l = a.len();
    for i in 0..l {
        if a[i][i] != 2 {
            return Err(Error::NotFiniteType(format!("diagonal entry a_{i}{i} = {}", a[i][i])));
        }
        for j in 0..l {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return Err(Error::NotFiniteType(format!("off-diagonal entry a_{i}{j} = {} > 0", a[i][j])));
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(Error::NotFiniteType(format!("a_{i}{j} and a_{j}{i} disagree on vanishing")));
            }
        }
    }
    if l > 20 {
        return Err(Error::Unsupported(format!("semisimple rank {l} is too large")));
    }
    for mask in 1u32..(1 << l) {
        let idx: Vec<usize> = (0..l).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| a[i][j]).collect()).collect();
        if int_det(&sub) <= 0 {
            return Err(Error::NotFiniteType(format!("principal minor on {idx:?} is not positive")));
        }
    }
    Ok(())
}

/// `⟨2ρ, λ⟩ / 2` as a rational, for convenience with integral input.
pub fn rho_pairing_int(datum: &RootDatum, lambda: &[i64]) -> Q {
    Q::new(datum.two_rho_pairing(lambda), 2)
}

/// Whether every coordinate of a rational vector is zero.
pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn b2() -> RootDatum {
        // Cartan [[2,-1],[-2,2]]: α_1 long, α_2 short
        RootDatum::new(2, vec![vec![1, -1], vec![0, 1]], vec![vec![1, -1], vec![0, 2]]).unwrap()
    }

    #[test]
    fn gl3_roots_and_rho() {
        let g = RootDatum::gl(3);
        assert_eq!(g.positive_roots().len(), 3);
        assert_eq!(g.two_rho(), &[2, 0, -2]);
        assert_eq!(g.highest_root().unwrap().0, &[1, 0, -1]);
    }

    #[test]
    fn gl2_rho() {
        let g = RootDatum::gl(2);
        assert_eq!(g.positive_roots().len(), 1);
        assert_eq!(g.two_rho(), &[1, -1]);
    }

    #[test]
    fn b2_has_four_positive_roots() {
        let d = b2();
        assert_eq!(d.positive_roots().len(), 4);
        assert_eq!(d.positive_coroots().len(), 4);
    }

    #[test]
    fn affine_cartan_rejected() {
        // affine A_1: [[2,-2],[-2,2]]
        let e = RootDatum::new(2, vec![vec![1, -1], vec![-1, 1]], vec![vec![1, -1], vec![-1, 1]]);
        assert!(matches!(e, Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn dominance_examples() {
        let g3 = RootDatum::gl(3);
        assert!(g3.dominance_leq(&Coweight(vec![1, 1, 0]), &Coweight(vec![2, 0, 0])).unwrap());
        let g2 = RootDatum::gl(2);
        assert!(!g2.dominance_leq(&Coweight(vec![1, 0]), &Coweight(vec![2, 0])).unwrap());
        let half = RationalCoweight(vec![q(1, 2), q(1, 2)]);
        assert!(g2.dominance_leq_rational(&half, &Coweight(vec![1, 0]).to_rational()).unwrap());
        assert!(g2.dominance_leq(&Coweight(vec![1]), &Coweight(vec![1, 0])).is_err());
    }

    #[test]
    fn dominant_representatives() {
        let g2 = RootDatum::gl(2);
        assert_eq!(g2.dominant_rep(&Coweight(vec![0, 2])), Coweight(vec![2, 0]));
        let g3 = RootDatum::gl(3);
        assert_eq!(g3.dominant_rep(&Coweight(vec![0, 2, 1])), Coweight(vec![2, 1, 0]));
    }

    #[test]
    fn b2_dominant_rep_matches_orbit() {
        let d = b2();
        let lambda = Coweight(vec![-3, 1]);
        let orbit = d.weyl_orbit(&lambda);
        let dom: Vec<_> = orbit.iter().filter(|x| d.is_dominant(x)).collect();
        assert_eq!(dom.len(), 1);
        assert_eq!(&d.dominant_rep(&lambda), dom[0]);
        assert_eq!(orbit.len(), 8);
    }

    #[test]
    fn gl_pi1_is_the_sum() {
        let g = RootDatum::gl(3);
        let c = g.pi1_class(&Coweight(vec![3, -1, 2])).unwrap();
        assert_eq!(c.free(), &[4]);
        assert!(c.torsion().is_empty());
        let r = g.pi1_class(&Coweight(vec![0, 1, -1])).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn pgl2_pi1_is_z_mod_2() {
        let d = RootDatum::new(1, vec![vec![1]], vec![vec![2]]).unwrap();
        let c = d.pi1_class(&Coweight(vec![1])).unwrap();
        assert_eq!(c.torsion(), &[(1, 2)]);
        assert!(c.free().is_empty());
        assert!(d.pi1_class(&Coweight(vec![2])).unwrap().is_zero());
    }
}
