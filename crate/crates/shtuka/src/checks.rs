//! Sweeps behind `shtuka check`: formula identities over Newton posets, Mazur's
//! inequality on random samples, dimension verdicts and the perturbation probe.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use shtuka_core::adlv::{dimension_estimate, minimal_c, CountTable, ProbeReport, Stratum};
use shtuka_core::engine::sample::{sample_double_coset, Pool};
use shtuka_core::engine::{hodge_polygon, kottwitz_point_of, newton_point, FieldMatrix};
use shtuka_core::newton::{
    basic_point, defect_glr, dim_formula_basic, eq06_glr, omega_ceil_sum, NewtonPoint, NewtonPoset,
};
use shtuka_core::root_data::{Coweight, RootDatum};
use shtuka_core::{Field, Q};

use crate::error::Result;
use crate::parallel;

/// Dominant `μ` of `GL_r` with `μ_i ≤ mu_max` and `Σ|μ_i| ≤ total_max`.
pub fn dominant_coweights(r: usize, mu_max: i64, total_max: i64) -> Vec<Coweight> {
    fn go(r: usize, cap: i64, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<Coweight>) {
        if prefix.len() == r {
            out.push(Coweight(prefix.clone()));
            return;
        }
        for x in (-left..=cap.min(left)).rev() {
            prefix.push(x);
            go(r, x, left - x.abs(), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(r, mu_max, total_max, &mut Vec::new(), &mut out);
    out
}

fn label(mu: &Coweight) -> String {
    Stratum::Hodge(mu.clone()).label()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChaiRow {
    pub mu: String,
    pub nu: String,
    pub chain: u64,
    pub formula: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChaiReport {
    pub r: usize,
    pub mu_max: i64,
    pub total_max: i64,
    pub pairs: usize,
    pub mismatches: usize,
    pub rows: Vec<ChaiRow>,
}

impl ChaiReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Longest chain in the Newton poset against `Σ⌈⟨ω_i, μ-ν⟩⌉` for every pair.
pub fn chai_sweep(r: usize, mu_max: i64, total_max: i64) -> Result<ChaiReport> {
    let datum = RootDatum::gl(r);
    let mus = dominant_coweights(r, mu_max, total_max);
    let per_mu: Vec<Vec<ChaiRow>> = mus
        .par_iter()
        .map(|mu| {
            let poset = NewtonPoset::new(mu)?;
            poset
                .nodes()
                .iter()
                .map(|nu| {
                    Ok(ChaiRow {
                        mu: label(mu),
                        nu: nu.label(),
                        chain: poset.longest_chain(nu)?,
                        formula: omega_ceil_sum(&datum, mu, &nu.to_rational())?,
                    })
                })
                .collect::<shtuka_core::Result<Vec<_>>>()
        })
        .collect::<shtuka_core::Result<_>>()?;
    let rows: Vec<ChaiRow> = per_mu.into_iter().flatten().collect();
    let mismatches = rows.iter().filter(|r| r.chain as i64 != r.formula).count();
    Ok(ChaiReport { r, mu_max, total_max, pairs: rows.len(), mismatches, rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq06Row {
    pub mu: String,
    pub nu: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasicDimRow {
    pub mu: String,
    pub nu: String,
    pub dim: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq06Report {
    pub r: usize,
    pub mu_max: i64,
    pub total_max: i64,
    pub pairs: usize,
    pub mismatches: usize,
    /// Basic classes whose formula dimension is negative or not an integer.
    pub bad_dimensions: usize,
    pub rows: Vec<Eq06Row>,
    pub basic: Vec<BasicDimRow>,
}

impl Eq06Report {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.bad_dimensions == 0
    }
}

fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && *x.numer() >= 0
}

pub fn eq06_sweep(r: usize, mu_max: i64, total_max: i64) -> Result<Eq06Report> {
    let mut rows = Vec::new();
    let mut basic = Vec::new();
    let mut mismatches = 0;
    let mut bad_dimensions = 0;
    for mu in dominant_coweights(r, mu_max, total_max) {
        for nu in NewtonPoset::new(&mu)?.nodes() {
            let (lhs, rhs) = eq06_glr(&mu, nu)?;
            if lhs != rhs {
                mismatches += 1;
            }
            rows.push(Eq06Row { mu: label(&mu), nu: nu.label(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
        let nu = basic_point(mu.sum(), r)?;
        match dim_formula_basic(&mu, &nu) {
            Ok(dim) => {
                if !is_nonneg_integer(&dim) {
                    bad_dimensions += 1;
                }
                basic.push(BasicDimRow { mu: label(&mu), nu: nu.label(), dim: dim.to_string() });
            }
            Err(shtuka_core::Error::Empty) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Eq06Report { r, mu_max, total_max, pairs: rows.len(), mismatches, bad_dimensions, rows, basic })
}

#[derive(Clone, Debug, Serialize)]
pub struct MazurViolation {
    pub trial: u64,
    pub p: u32,
    pub mu: String,
    pub hodge: String,
    pub nu: String,
    pub kappa: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MazurReport {
    pub trials: u64,
    pub seed: u64,
    pub primes: Vec<u32>,
    pub max_rank: usize,
    pub max_abs: i64,
    pub violations: Vec<MazurViolation>,
}

impl MazurReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A dominant coweight of `GL_r` with `Σ|μ_i| ≤ max_abs`, uniformly by rejection.
fn random_mu(r: usize, max_abs: i64, rng: &mut ChaCha8Rng) -> Coweight {
    loop {
        let mut v: Vec<i64> = (0..r).map(|_| rng.random_range(-max_abs..=max_abs)).collect();
        if v.iter().map(|x| x.abs()).sum::<i64>() <= max_abs {
            v.sort_unstable_by(|a, b| b.cmp(a));
            return Coweight(v);
        }
    }
}

/// One trial: draw `p`, `r`, `μ` and `b ∈ K z^μ K`, then compare `ν_b`, `κ(b)` with the
/// Hodge polygon. Trial `i` uses its own generator seeded by `seed + i`.
fn mazur_trial(i: u64, seed: u64, primes: &[u32], max_rank: usize, max_abs: i64) -> Result<Option<MazurViolation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
    let p = primes[rng.random_range(0..primes.len())];
    let r = rng.random_range(1..=max_rank);
    let mu = random_mu(r, max_abs, &mut rng);
    let field = Field::prime(p)?;
    let b = sample_double_coset(&Pool::full(&field), &mu.0, 1, &mut rng);
    let hodge = hodge_polygon(&b)?;
    let nu = newton_point(&b, 1)?;
    let kappa = kottwitz_point_of(&b)?;
    let ok = hodge == mu
        && nu.leq(&NewtonPoint::from_coweight(&hodge)?)
        && kappa == hodge.sum()
        && nu.total() == Q::from_integer(kappa);
    Ok((!ok).then(|| MazurViolation { trial: i, p, mu: label(&mu), hodge: label(&hodge), nu: nu.label(), kappa }))
}

pub fn mazur_trials(trials: u64, seed: u64, primes: &[u32], max_rank: usize, max_abs: i64) -> Result<MazurReport> {
    let found: Vec<Option<MazurViolation>> =
        (0..trials).into_par_iter().map(|i| mazur_trial(i, seed, primes, max_rank, max_abs)).collect::<Result<_>>()?;
    Ok(MazurReport {
        trials,
        seed,
        primes: primes.to_vec(),
        max_rank,
        max_abs,
        violations: found.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumVerdict {
    pub stratum: String,
    pub slope: Option<f64>,
    pub verdict: Option<i64>,
    pub residual: Option<f64>,
    pub converged: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimReport {
    pub mu: Vec<i64>,
    pub nu: String,
    pub defect: u64,
    pub window: i64,
    pub ms: Vec<u32>,
    /// `⟨ρ, μ - ν⟩ - ½ def(b)`.
    pub expected: String,
    pub verdict: Option<i64>,
    pub converged: bool,
    /// The top stratum grows strictly faster than every lower stratum with a fit.
    pub top_dominates: bool,
    pub strata: Vec<StratumVerdict>,
}

impl DimReport {
    pub fn passed(&self) -> bool {
        self.converged && self.verdict.map(|v| Q::from_integer(v).to_string()) == Some(self.expected.clone())
    }
}

pub fn verdicts(table: &CountTable) -> Result<Vec<StratumVerdict>> {
    Ok(dimension_estimate(table)?
        .into_iter()
        .map(|e| match e.fit {
            Ok(f) => StratumVerdict {
                stratum: e.stratum.label(),
                slope: Some(f.slope),
                verdict: Some(f.verdict),
                residual: Some(f.residual),
                converged: f.converged,
                error: None,
            },
            Err(err) => StratumVerdict {
                stratum: e.stratum.label(),
                slope: None,
                verdict: None,
                residual: None,
                converged: false,
                error: Some(err.to_string()),
            },
        })
        .collect())
}

/// Counts `X_{⪯μ}(b)` in the window and compares the growth of the `μ` stratum with the
/// dimension formula.
pub fn dim_check(
    b: &FieldMatrix,
    mu: &Coweight,
    window: i64,
    ms: &[u32],
    budget: u128,
    pool: &rayon::ThreadPool,
) -> Result<(DimReport, CountTable)> {
    let table = parallel::stratum_counts(b, mu, window, ms, budget, pool)?;
    let nu = newton_point(b, b.ring().degree_over_q())?;
    let defect = defect_glr(&nu)?;
    let datum = RootDatum::gl(b.r());
    let diff: Vec<Q> = mu.0.iter().zip(nu.coords()).map(|(&a, x)| Q::from_integer(a) - x).collect();
    let expected = datum.rho_pairing(&diff) - Q::new(defect as i64, 2);
    let strata = verdicts(&table)?;
    let top_label = Stratum::Hodge(mu.clone()).label();
    let top = strata.iter().find(|s| s.stratum == top_label);
    let verdict = top.and_then(|s| s.verdict);
    let converged = top.is_some_and(|s| s.converged);
    let top_dominates = match verdict {
        Some(v) => strata.iter().filter(|s| s.stratum != top_label).all(|s| s.verdict.is_none_or(|w| w < v)),
        None => false,
    };
    let report = DimReport {
        mu: mu.0.clone(),
        nu: nu.label(),
        defect,
        window,
        ms: ms.to_vec(),
        expected: expected.to_string(),
        verdict,
        converged,
        top_dominates,
        strata,
    };
    Ok((report, table))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub d: i64,
    pub c: i64,
    pub trials: usize,
    pub violations: usize,
    pub example: Option<String>,
}

impl From<&ProbeReport> for ProbeRow {
    fn from(r: &ProbeReport) -> Self {
        ProbeRow { d: r.d, c: r.c, trials: r.trials, violations: r.violations, example: r.example.as_ref().map(|n| n.label()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PerturbationDepth {
    pub d: i64,
    pub minimal_c: Option<i64>,
    pub probes: Vec<ProbeRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerturbationReport {
    pub hodge: Vec<i64>,
    pub nu: String,
    pub c_max: i64,
    pub trials: usize,
    pub degree: i64,
    pub seed: u64,
    pub depths: Vec<PerturbationDepth>,
}

impl PerturbationReport {
    pub fn passed(&self) -> bool {
        self.depths.iter().all(|d| d.minimal_c.is_some())
    }
}

/// For every `d`, the least `c ≤ c_max` with no Newton point change among `trials`
/// samples `h ∈ I_{d+c}`. Depth `d` uses the generator seeded by `seed + d`.
pub fn perturbation_check(
    b: &FieldMatrix,
    ds: &[i64],
    c_max: i64,
    trials: usize,
    pool: &Pool,
    degree: i64,
    seed: u64,
) -> Result<PerturbationReport> {
    let mut depths = Vec::new();
    let mut head = None;
    for &d in ds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(d as u64));
        let (c, reports) = minimal_c(b, d, c_max, trials, pool, degree, &mut rng)?;
        if head.is_none() {
            head = reports.first().map(|r| (r.hodge.0.clone(), r.nu.label()));
        }
        depths.push(PerturbationDepth { d, minimal_c: c, probes: reports.iter().map(ProbeRow::from).collect() });
    }
    let (hodge, nu) = match head {
        Some(h) => h,
        None => (hodge_polygon(b)?.0, newton_point(b, b.ring().degree_over_q())?.label()),
    };
    Ok(PerturbationReport { hodge, nu, c_max, trials, degree, seed, depths })
}
