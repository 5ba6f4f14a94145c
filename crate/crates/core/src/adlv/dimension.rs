//! Growth-rate dimension estimates from point counts.

use alloc::vec::Vec;

use super::{CountTable, Stratum};
use crate::error::{Error, Result};

/// Fits whose RMS residual exceeds this are flagged as not converged.
pub const RESIDUAL_TOLERANCE: f64 = 0.15;

/// Distinct values of `m` a table needs before any fit is attempted.
pub const MIN_SAMPLES: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    /// Least-squares slope of `log_q(count)` against `m`.
    pub slope: f64,
    pub intercept: f64,
    /// Nearest integer to the slope.
    pub verdict: i64,
    /// Root mean square of the fit residuals.
    pub residual: f64,
    /// Samples with positive count that entered the fit.
    pub points: usize,
    pub converged: bool,
}

/// Fits `log_q(count) ≈ slope·m + intercept` over the samples with positive count.
///
/// Fewer than two positive samples give a fit that is never converged.
pub fn fit_growth(q: u64, samples: &[(u32, u64)]) -> Result<GrowthFit> {
    let mut ms: Vec<u32> = samples.iter().map(|s| s.0).collect();
    ms.sort_unstable();
    ms.dedup();
    if ms.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples { needed: MIN_SAMPLES, found: ms.len() });
    }
    if samples.iter().all(|s| s.1 == 0) {
        return Err(Error::EmptyStratum);
    }
    let lq = libm::log(q as f64);
    let pts: Vec<(f64, f64)> =
        samples.iter().filter(|s| s.1 > 0).map(|&(m, c)| (m as f64, libm::log(c as f64) / lq)).collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        let y = pts[0].1;
        return Ok(GrowthFit { slope: 0.0, intercept: y, verdict: 0, residual: 0.0, points: 1, converged: false });
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts.iter().map(|p| libm::pow(p.1 - slope * p.0 - intercept, 2.0)).sum();
    let residual = libm::sqrt(sse / n);
    Ok(GrowthFit {
        slope,
        intercept,
        verdict: libm::round(slope) as i64,
        residual,
        points: pts.len(),
        converged: residual <= RESIDUAL_TOLERANCE,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratumEstimate {
    pub stratum: Stratum,
    pub fit: Result<GrowthFit>,
}

/// One growth fit per stratum of the table.
pub fn dimension_estimate(table: &CountTable) -> Result<Vec<StratumEstimate>> {
    let found = table.m_values().len();
    if found < MIN_SAMPLES {
        return Err(Error::TooFewSamples { needed: MIN_SAMPLES, found });
    }
    Ok(table
        .strata()
        .into_iter()
        .map(|s| {
            let fit = fit_growth(table.q, &table.series(&s));
            StratumEstimate { stratum: s, fit }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_counts() {
        let f = fit_growth(2, &[(1, 7), (2, 7), (3, 7), (4, 7)]).unwrap();
        assert_eq!(f.verdict, 0);
        assert!(f.slope.abs() < 1e-12 && f.converged);
    }

    #[test]
    fn linear_growth() {
        let s: Vec<(u32, u64)> = (1..=4).map(|m| (m, 3 * (1u64 << m) + (m as u64 % 2))).collect();
        let f = fit_growth(2, &s).unwrap();
        assert_eq!(f.verdict, 1);
        assert!(f.converged);
    }

    #[test]
    fn errors() {
        assert_eq!(fit_growth(2, &[(1, 0), (2, 0), (3, 0)]), Err(Error::EmptyStratum));
        assert_eq!(fit_growth(2, &[(1, 1), (2, 1)]), Err(Error::TooFewSamples { needed: 3, found: 2 }));
        let f = fit_growth(2, &[(1, 0), (2, 0), (3, 5)]).unwrap();
        assert!(!f.converged);
    }

    #[test]
    fn noisy_counts_do_not_converge() {
        let f = fit_growth(2, &[(1, 1), (2, 64), (3, 2), (4, 256)]).unwrap();
        assert!(!f.converged);
    }
}
