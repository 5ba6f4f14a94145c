//! Rayon drivers for the window enumerations. Parts are merged in type order, and the
//! merge is a sum, so results do not depend on the worker count.

use rayon::prelude::*;

use shtuka_core::adlv::{
    check_budget, CountTable, IwahoriCounter, Level, SchubertCounter, StratumCounter, Tally, WindowCounter,
};
use shtuka_core::engine::FieldMatrix;
use shtuka_core::root_data::{AffineWeylElement, Coweight};
use shtuka_core::Field;

use crate::error::{CliError, Result};

/// A pool with `workers` threads, or one per available core.
pub fn thread_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(CliError::usage("--workers must be at least 1"));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))
}

pub fn run_parallel<C: WindowCounter + Sync>(counter: &C, pool: &rayon::ThreadPool) -> shtuka_core::Result<Tally> {
    let parts: Vec<Tally> =
        pool.install(|| counter.types().par_iter().map(|a| counter.tally_type(a)).collect::<shtuka_core::Result<_>>())?;
    let mut tally = counter.empty_tally();
    for p in parts {
        tally.merge(p);
    }
    Ok(tally)
}

fn collect<C: WindowCounter + Sync>(
    mut table: CountTable,
    ms: &[u32],
    budget: u128,
    pool: &rayon::ThreadPool,
    make: impl Fn(u32) -> shtuka_core::Result<C>,
) -> Result<CountTable> {
    if ms.is_empty() || ms.contains(&0) {
        return Err(CliError::usage("--m needs a list of positive integers, e.g. 1,2,3,4"));
    }
    for &m in ms {
        let counter = make(m)?;
        check_budget(counter.estimate(), budget)?;
        table.record(m, run_parallel(&counter, pool)?);
    }
    Ok(table)
}

pub fn stratum_counts(
    b: &FieldMatrix,
    mu: &Coweight,
    window: i64,
    ms: &[u32],
    budget: u128,
    pool: &rayon::ThreadPool,
) -> Result<CountTable> {
    let mut table = CountTable::new(Level::Hyperspecial, b.ring().q(), b.r(), window);
    table.mu = Some(mu.clone());
    collect(table, ms, budget, pool, |m| StratumCounter::new(b, mu, window, m))
}

pub fn iwahori_counts(
    b: &FieldMatrix,
    x: &AffineWeylElement,
    window: i64,
    ms: &[u32],
    budget: u128,
    pool: &rayon::ThreadPool,
) -> Result<CountTable> {
    let mut table = CountTable::new(Level::Iwahori, b.ring().q(), b.r(), window);
    table.target = Some(x.clone());
    collect(table, ms, budget, pool, |m| IwahoriCounter::new(b, x, window, m))
}

pub fn schubert_counts(
    p: u32,
    q: u64,
    r: usize,
    window: i64,
    ms: &[u32],
    budget: u128,
    pool: &rayon::ThreadPool,
) -> Result<CountTable> {
    let table = CountTable::new(Level::Grassmannian, q, r, window);
    collect(table, ms, budget, pool, |m| SchubertCounter::new(&Field::extension(p, q, m)?, r, window))
}
