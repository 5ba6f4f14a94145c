//! Randomized check that the Newton point of `b` survives right multiplication by deep
//! congruence subgroups `I_n`.

use alloc::vec::Vec;

use rand::Rng;

use super::embed_matrix;
use crate::engine::sample::{sample_congruence, Pool};
use crate::engine::{hodge_polygon, newton_point, FieldMatrix};
use crate::error::{Error, Result};
use crate::newton::NewtonPoint;
use crate::root_data::Coweight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub hodge: Coweight,
    pub nu: NewtonPoint,
    pub d: i64,
    pub c: i64,
    pub trials: usize,
    pub violations: usize,
    /// A Newton point of some `b·h` different from `ν_b`, if one was seen.
    pub example: Option<NewtonPoint>,
}

/// Samples `trials` elements `h ∈ I_{d+c}` with coefficients from `pool` (tails of
/// degree `degree`) and counts those with `ν(b·h) ≠ ν(b)`.
pub fn newton_perturbation_probe<G: Rng + ?Sized>(
    b: &FieldMatrix,
    d: i64,
    c: i64,
    trials: usize,
    pool: &Pool,
    degree: i64,
    rng: &mut G,
) -> Result<ProbeReport> {
    if d < 0 || c < 0 {
        return Err(Error::Invalid(alloc::format!("probe depths must be nonnegative, got d = {d}, c = {c}")));
    }
    let field = pool.field();
    let b = embed_matrix(b, field)?;
    let s = field.degree_over_q();
    let nu = newton_point(&b, s)?;
    let hodge = hodge_polygon(&b)?;
    let mut violations = 0;
    let mut example = None;
    for _ in 0..trials {
        let h = sample_congruence(pool, b.r(), d + c, degree, rng);
        let nu2 = newton_point(&b.mul(&h)?, s)?;
        if nu2 != nu {
            violations += 1;
            example.get_or_insert(nu2);
        }
    }
    Ok(ProbeReport { hodge, nu, d, c, trials, violations, example })
}

/// Probes `c = 0, 1, …, c_max` and returns the first `c` without violations.
pub fn minimal_c<G: Rng + ?Sized>(
    b: &FieldMatrix,
    d: i64,
    c_max: i64,
    trials: usize,
    pool: &Pool,
    degree: i64,
    rng: &mut G,
) -> Result<(Option<i64>, Vec<ProbeReport>)> {
    let mut reports = Vec::new();
    for c in 0..=c_max {
        let rep = newton_perturbation_probe(b, d, c, trials, pool, degree, rng)?;
        let clean = rep.violations == 0;
        reports.push(rep);
        if clean {
            return Ok((Some(c), reports));
        }
    }
    Ok((None, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldElement};
    use crate::series::Series;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mono(k: i64) -> Series<FieldElement> {
        Series::monomial(FieldElement::ONE, k)
    }

    #[test]
    fn superbasic_is_stable() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::new(2, 2, None, 2).unwrap();
        let b = FieldMatrix::new(f2, vec![vec![Series::zero(), mono(1)], vec![mono(0), Series::zero()]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = newton_perturbation_probe(&b, 1, 2, 100, &Pool::full(&f4), 2, &mut rng).unwrap();
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.hodge, Coweight(vec![1, 0]));
    }

    #[test]
    fn shallow_probe_detects_changes() {
        let f2 = Field::prime(2).unwrap();
        let b = FieldMatrix::new(f2.clone(), vec![vec![Series::zero(), mono(2)], vec![mono(0), Series::zero()]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rep = newton_perturbation_probe(&b, 0, 0, 200, &Pool::full(&f2), 2, &mut rng).unwrap();
        assert!(rep.violations > 0);
        let (c, _) = minimal_c(&b, 1, 4, 100, &Pool::full(&f2), 2, &mut rng).unwrap();
        assert!(c.is_some());
    }
}
