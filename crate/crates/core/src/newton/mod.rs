//! Newton points, Kottwitz points and the rational combinatorics around them.
//!
//! Newton points are implemented for `GL_r`, where a dominant rational cocharacter is a
//! descending slope vector. The ω-pairings, the two sides of the dimension identity and
//! the Mazur inequality work for any root datum.

mod poset;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{ceil, int, q, Q};
use crate::root_data::{Coweight, Pi1Class, RationalCoweight, RootDatum};

pub use poset::{longest_chain, newton_points_between, NewtonPoset};

/// A `GL_r` Newton point: slopes `ν_1 ≥ … ≥ ν_r`, where each distinct slope `d/h` (lowest
/// terms) occurs with a multiplicity divisible by `h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NewtonPoint(Vec<Q>);

impl NewtonPoint {
    /// Checks that the slopes are descending and admissible.
    pub fn new(slopes: Vec<Q>) -> Result<Self> {
        if slopes.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant);
        }
        let nu = NewtonPoint(slopes);
        for (s, n) in nu.slopes() {
            let h = *s.denom() as usize;
            if n % h != 0 {
                return Err(Error::Inadmissible(alloc::format!(
                    "slope {s} has multiplicity {n}, which is not divisible by {h}"
                )));
            }
        }
        Ok(nu)
    }

    /// Sorts the slopes into descending order first.
    pub fn from_slopes(mut slopes: Vec<Q>) -> Result<Self> {
        slopes.sort_by(|a, b| b.cmp(a));
        Self::new(slopes)
    }

    pub fn from_coweight(mu: &Coweight) -> Result<Self> {
        Self::new(mu.0.iter().map(|&x| int(x)).collect())
    }

    pub(crate) fn new_unchecked(slopes: Vec<Q>) -> Self {
        NewtonPoint(slopes)
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_rational(&self) -> RationalCoweight {
        RationalCoweight(self.0.clone())
    }

    /// Distinct slopes in descending order with their multiplicities.
    pub fn slopes(&self) -> Vec<(Q, usize)> {
        let mut out: Vec<(Q, usize)> = Vec::new();
        for &s in &self.0 {
            match out.last_mut() {
                Some((t, n)) if *t == s => *n += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// `Σ ν_i`, the Kottwitz point under `π₁(GL_r) = Z`.
    pub fn total(&self) -> Q {
        self.0.iter().sum()
    }

    pub fn is_basic(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Partial sums `ν_1 + … + ν_i` for `i = 0..=r`: the polygon's values at integers.
    pub fn polygon(&self) -> Vec<Q> {
        let mut acc = Q::zero();
        let mut out = alloc::vec![acc];
        for &x in &self.0 {
            acc += x;
            out.push(acc);
        }
        out
    }

    /// `ν ⪯ ν'` in the rational dominance order of `GL_r`.
    pub fn leq(&self, other: &NewtonPoint) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let (a, b) = (self.polygon(), other.polygon());
        a.last() == b.last() && a.iter().zip(&b).all(|(x, y)| x <= y)
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| alloc::format!("{x}")).collect();
        alloc::format!("({})", parts.join(","))
    }
}

impl fmt::Display for NewtonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The pair `(κ(b), ν_b)` classifying a σ-conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaClassInvariants {
    kappa: Pi1Class,
    newton: NewtonPoint,
}

impl SigmaClassInvariants {
    /// Checks that `κ` and `ν` have the same image in `π₁(G) ⊗ Q`.
    pub fn new(datum: &RootDatum, kappa: Pi1Class, newton: NewtonPoint) -> Result<Self> {
        let image = datum.pi1_rational(&newton.to_rational())?;
        if image != kappa.rational() {
            return Err(Error::KappaMismatch);
        }
        Ok(SigmaClassInvariants { kappa, newton })
    }

    /// `GL_r` invariants from `v_z(det b)` and the Newton point.
    pub fn glr(kappa: i64, newton: NewtonPoint) -> Result<Self> {
        let datum = RootDatum::gl(newton.rank());
        let mut e = alloc::vec![0; newton.rank()];
        if let Some(x) = e.first_mut() {
            *x = kappa;
        }
        let class = datum.pi1_class(&Coweight(e))?;
        Self::new(&datum, class, newton)
    }

    pub fn kappa(&self) -> &Pi1Class {
        &self.kappa
    }

    pub fn newton(&self) -> &NewtonPoint {
        &self.newton
    }
}

/// `[μ] ∈ π₁(G)`.
pub fn kottwitz_point(datum: &RootDatum, mu: &Coweight) -> Result<Pi1Class> {
    datum.pi1_class(mu)
}

/// `Σ_j n_j (1 - 1/h_j)` over the distinct slopes `d_j/h_j` with multiplicity `n_j`.
pub fn defect_glr(nu: &NewtonPoint) -> Result<u64> {
    let mut total = 0u64;
    for (s, n) in nu.slopes() {
        let h = *s.denom() as usize;
        if n % h != 0 {
            return Err(Error::Inadmissible(alloc::format!("slope {s} with multiplicity {n}")));
        }
        total += (n - n / h) as u64;
    }
    Ok(total)
}

/// `Σ_i ⌈⟨ω_i, μ - ν⟩⌉`, with `⟨ω_i, ·⟩` read off the coroot expansion of `μ - ν`.
pub fn omega_ceil_sum(datum: &RootDatum, mu: &Coweight, nu: &RationalCoweight) -> Result<i64> {
    Ok(omega_pairings(datum, mu, nu)?.into_iter().map(ceil).sum())
}

/// The coefficients `c_i = ⟨ω_i, μ - ν⟩` in `μ - ν = Σ c_i α_i^∨`.
pub fn omega_pairings(datum: &RootDatum, mu: &Coweight, nu: &RationalCoweight) -> Result<Vec<Q>> {
    datum.check_len(mu.len())?;
    datum.check_len(nu.len())?;
    let d: Vec<Q> = mu.0.iter().zip(&nu.0).map(|(&a, b)| int(a) - b).collect();
    datum.coroot_coefficients(&d)?.ok_or(Error::KappaMismatch)
}

/// Both sides of `⟨2ρ,μ⟩ - Σ⌈⟨ω_i,μ-ν⟩⌉ = ⟨ρ,μ+ν⟩ - ½ def`.
pub fn eq06_both_sides(datum: &RootDatum, mu: &Coweight, nu: &RationalCoweight, defect: u64) -> Result<(Q, Q)> {
    let lhs = int(datum.two_rho_pairing(&mu.0) - omega_ceil_sum(datum, mu, nu)?);
    let sum: Vec<Q> = mu.0.iter().zip(&nu.0).map(|(&a, b)| int(a) + b).collect();
    let rhs = datum.rho_pairing(&sum) - q(defect as i64, 2);
    Ok((lhs, rhs))
}

/// [`eq06_both_sides`] for `GL_r` with the defect computed from `ν`.
pub fn eq06_glr(mu: &Coweight, nu: &NewtonPoint) -> Result<(Q, Q)> {
    let datum = RootDatum::gl(mu.len());
    eq06_both_sides(&datum, mu, &nu.to_rational(), defect_glr(nu)?)
}

/// `ν ⪯ μ` in `X_*(T)_Q`.
pub fn mazur_check(datum: &RootDatum, nu: &RationalCoweight, mu: &Coweight) -> Result<bool> {
    datum.dominance_leq_rational(nu, &mu.to_rational())
}

/// `κ(b) = [μ]` and `ν_b ⪯ μ`.
pub fn nonempty_predicate(datum: &RootDatum, inv: &SigmaClassInvariants, mu: &Coweight) -> Result<bool> {
    if datum.pi1_class(mu)? != *inv.kappa() {
        return Ok(false);
    }
    mazur_check(datum, &inv.newton().to_rational(), mu)
}

/// The central Newton point `(d/r, …, d/r)`.
pub fn basic_point(d: i64, r: usize) -> Result<NewtonPoint> {
    if r == 0 {
        return Err(Error::Invalid("rank must be positive".into()));
    }
    NewtonPoint::new(alloc::vec![q(d, r as i64); r])
}

/// `⟨ρ, μ⟩ - ½ def(b)` for basic `b`.
pub fn dim_formula_basic(mu: &Coweight, nu: &NewtonPoint) -> Result<Q> {
    if !nu.is_basic() {
        return Err(Error::Invalid(alloc::format!("{nu} is not basic")));
    }
    let datum = RootDatum::gl(mu.len());
    datum.check_len(nu.rank())?;
    let inv = SigmaClassInvariants::glr(mu.sum(), nu.clone());
    match inv {
        Ok(inv) if nonempty_predicate(&datum, &inv, mu)? => {}
        _ => return Err(Error::Empty),
    }
    Ok(datum.rho_pairing(&mu.to_rational().0) - q(defect_glr(nu)? as i64, 2))
}

/// `n - gcd(d, n)`, the defect of the basic class of `GL_n` with `κ = d`.
pub fn basic_defect(d: i64, n: usize) -> u64 {
    (n as i64 - d.gcd(&(n as i64))) as u64
}


#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn nu(v: &[(i64, i64)]) -> NewtonPoint {
        NewtonPoint::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(NewtonPoint::new(vec![q(3, 2), q(1, 2)]).is_err());
        assert!(NewtonPoint::new(vec![q(1, 2), q(1, 2)]).is_ok());
        assert!(NewtonPoint::new(vec![int(0), int(1)]).is_err());
    }

    #[test]
    fn defects() {
        assert_eq!(defect_glr(&nu(&[(1, 1), (1, 1)])).unwrap(), 0);
        assert_eq!(defect_glr(&nu(&[(1, 2), (1, 2)])).unwrap(), 1);
        assert_eq!(defect_glr(&nu(&[(1, 3), (1, 3), (1, 3)])).unwrap(), 2);
        assert_eq!(defect_glr(&basic_point(2, 4).unwrap()).unwrap(), basic_defect(2, 4));
    }

    #[test]
    fn omega_sums() {
        let g = RootDatum::gl(2);
        let c = |mu: &[i64], v: &NewtonPoint| omega_ceil_sum(&g, &Coweight(mu.to_vec()), &v.to_rational());
        assert_eq!(c(&[2, 0], &nu(&[(1, 1), (1, 1)])).unwrap(), 1);
        assert_eq!(c(&[3, 0], &nu(&[(3, 2), (3, 2)])).unwrap(), 2);
        assert_eq!(c(&[1, 0], &nu(&[(1, 1), (1, 1)])), Err(Error::KappaMismatch));
    }

    #[test]
    fn eq06_examples() {
        assert_eq!(eq06_glr(&Coweight(vec![1, 0]), &nu(&[(1, 2), (1, 2)])).unwrap(), (int(0), int(0)));
        assert_eq!(eq06_glr(&Coweight(vec![2, 0]), &nu(&[(1, 1), (1, 1)])).unwrap(), (int(1), int(1)));
        assert_eq!(eq06_glr(&Coweight(vec![1, 1]), &nu(&[(1, 1), (1, 1)])).unwrap(), (int(0), int(0)));
    }

    #[test]
    fn mazur_and_nonemptiness() {
        let g = RootDatum::gl(2);
        let mu = Coweight(vec![1, 0]);
        assert!(mazur_check(&g, &nu(&[(1, 2), (1, 2)]).to_rational(), &mu).unwrap());
        assert!(!mazur_check(&g, &nu(&[(1, 1), (1, 1)]).to_rational(), &mu).unwrap());
        let inv = SigmaClassInvariants::glr(1, nu(&[(1, 2), (1, 2)])).unwrap();
        assert!(nonempty_predicate(&g, &inv, &mu).unwrap());
        let split = SigmaClassInvariants::glr(1, nu(&[(1, 1), (0, 1)])).unwrap();
        assert!(nonempty_predicate(&g, &split, &mu).unwrap());
        let other = SigmaClassInvariants::glr(2, nu(&[(1, 1), (1, 1)])).unwrap();
        assert!(!nonempty_predicate(&g, &other, &mu).unwrap());
        assert!(SigmaClassInvariants::glr(2, nu(&[(1, 2), (1, 2)])).is_err());
    }

    #[test]
    fn dimension_of_basic_loci() {
        let d = |mu: &[i64], v: NewtonPoint| dim_formula_basic(&Coweight(mu.to_vec()), &v).unwrap();
        assert_eq!(d(&[1, 0], nu(&[(1, 2), (1, 2)])), int(0));
        assert_eq!(d(&[1, 1], nu(&[(1, 1), (1, 1)])), int(0));
        assert_eq!(d(&[2, 0], nu(&[(1, 1), (1, 1)])), int(1));
        assert_eq!(dim_formula_basic(&Coweight(vec![2, 0]), &nu(&[(1, 2), (1, 2)])), Err(Error::Empty));
    }

    #[test]
    fn basic_points() {
        assert_eq!(basic_point(1, 2).unwrap(), nu(&[(1, 2), (1, 2)]));
        assert_eq!(basic_point(3, 3).unwrap(), nu(&[(1, 1), (1, 1), (1, 1)]));
    }
}
