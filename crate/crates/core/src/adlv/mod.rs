//! Point counts of affine Deligne-Lusztig sets of `GL_r` in lattice windows.
//!
//! For each `m`, every lattice `L = gΛ₀` of the window over `F_{q^m}` is tested: at
//! hyperspecial level by the Hodge polygon of `g⁻¹ b σ(g)`, at Iwahori level (`r = 2`)
//! by its double coset `I x I`. Work is split by the diagonal of the Hermite form
//! (see [`WindowCounter`]) so drivers can process the parts in any order and merge.

mod dimension;
mod probe;
mod window;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{hodge_polygon, iwahori_coset, newton_point, FieldMatrix};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::field::Field;
use crate::newton::{newton_points_between, NewtonPoint};
use crate::root_data::{AffineWeylElement, Coweight, RootDatum};
use crate::series::Series;

pub use dimension::{dimension_estimate, fit_growth, GrowthFit, StratumEstimate, MIN_SAMPLES, RESIDUAL_TOLERANCE};
pub use probe::{minimal_c, newton_perturbation_probe, ProbeReport};
pub use window::{
    check_budget, enumerate_window_lattices, estimate_window, type_cardinality, window_types, LatticeRep,
    LatticesOfType, DEFAULT_BUDGET, MAX_WINDOW_RANK,
};

/// Which quotient of `LG` is enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    /// `LG/K`, strata by the Hodge polygon of `g⁻¹bσ(g)`.
    Hyperspecial,
    /// `LG/I` for `GL_2`, membership in a single `I x I`.
    Iwahori,
    /// `LG/K` with strata the Schubert cells `K z^λ K / K` of `g` itself.
    Grassmannian,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Hyperspecial => "hyperspecial",
            Level::Iwahori => "iwahori",
            Level::Grassmannian => "grassmannian",
        }
    }

    pub fn from_name(s: &str) -> Option<Level> {
        match s {
            "hyperspecial" => Some(Level::Hyperspecial),
            "iwahori" => Some(Level::Iwahori),
            "grassmannian" => Some(Level::Grassmannian),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stratum {
    Hodge(Coweight),
    Affine(AffineWeylElement),
}

impl Stratum {
    /// `(2,0)` for Hodge strata, `t(1,0)w[1,0]` for affine Weyl group elements.
    pub fn label(&self) -> String {
        match self {
            Stratum::Hodge(mu) => coweight_label(mu),
            Stratum::Affine(x) => {
                let perm = x.finite().as_permutation().unwrap_or_default();
                let perm: Vec<String> = perm.iter().map(|i| format!("{i}")).collect();
                format!("t{}w[{}]", coweight_label(x.translation()), perm.join(","))
            }
        }
    }
}

fn coweight_label(mu: &Coweight) -> String {
    let parts: Vec<String> = mu.0.iter().map(|x| format!("{x}")).collect();
    format!("({})", parts.join(","))
}

/// Per-stratum counts plus the lattices that were turned away.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub strata: BTreeMap<Stratum, u64>,
    /// Lattices outside the requested set (`μ' ⋠ μ`, or a different Iwahori double coset).
    pub bound: u64,
    /// Lattices with `ν_b ⋠ μ'`; nonzero would contradict Mazur's inequality.
    pub mazur: u64,
    pub visited: u64,
}

impl Tally {
    pub fn seeded(strata: impl IntoIterator<Item = Stratum>) -> Self {
        Tally { strata: strata.into_iter().map(|s| (s, 0)).collect(), ..Tally::default() }
    }

    pub fn merge(&mut self, other: Tally) {
        for (s, c) in other.strata {
            *self.strata.entry(s).or_insert(0) += c;
        }
        self.bound += other.bound;
        self.mazur += other.mazur;
        self.visited += other.visited;
    }

    fn hit(&mut self, s: Stratum) {
        *self.strata.entry(s).or_insert(0) += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub m: u32,
    pub stratum: Stratum,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RejectionRow {
    pub m: u32,
    pub bound: u64,
    pub mazur: u64,
    pub visited: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub level: Level,
    /// Size of the base field `F_q`; counts are over `F_{q^m}`.
    pub q: u64,
    pub r: usize,
    pub window: i64,
    pub mu: Option<Coweight>,
    pub target: Option<AffineWeylElement>,
    pub rows: Vec<CountRow>,
    pub rejections: Vec<RejectionRow>,
}

impl CountTable {
    pub fn new(level: Level, q: u64, r: usize, window: i64) -> Self {
        CountTable { level, q, r, window, mu: None, target: None, rows: Vec::new(), rejections: Vec::new() }
    }

    pub fn record(&mut self, m: u32, tally: Tally) {
        for (stratum, count) in tally.strata {
            self.rows.push(CountRow { m, stratum, count });
        }
        self.rejections.push(RejectionRow { m, bound: tally.bound, mazur: tally.mazur, visited: tally.visited });
    }

    pub fn m_values(&self) -> Vec<u32> {
        let mut ms: Vec<u32> = self.rows.iter().map(|r| r.m).chain(self.rejections.iter().map(|r| r.m)).collect();
        ms.sort_unstable();
        ms.dedup();
        ms
    }

    /// Strata in order of first appearance.
    pub fn strata(&self) -> Vec<Stratum> {
        let mut out: Vec<Stratum> = Vec::new();
        for row in &self.rows {
            if !out.contains(&row.stratum) {
                out.push(row.stratum.clone());
            }
        }
        out
    }

    pub fn count(&self, m: u32, stratum: &Stratum) -> Option<u64> {
        self.rows.iter().find(|r| r.m == m && &r.stratum == stratum).map(|r| r.count)
    }

    /// Points of the whole set at level `m`: the sum over strata.
    pub fn total(&self, m: u32) -> u64 {
        self.rows.iter().filter(|r| r.m == m).map(|r| r.count).sum()
    }

    /// `(m, count)` for one stratum, ordered by `m`.
    pub fn series(&self, stratum: &Stratum) -> Vec<(u32, u64)> {
        let mut out: Vec<(u32, u64)> =
            self.rows.iter().filter(|r| &r.stratum == stratum).map(|r| (r.m, r.count)).collect();
        out.sort_unstable();
        out
    }

    pub fn mazur_violations(&self) -> u64 {
        self.rejections.iter().map(|r| r.mazur).sum()
    }
}

/// An enumeration over one window at one field size, split by Hermite diagonal.
pub trait WindowCounter {
    fn field(&self) -> &Field;
    fn rank(&self) -> usize;
    fn window(&self) -> i64;
    /// Tally with every expected stratum present at count zero.
    fn empty_tally(&self) -> Tally;
    fn tally_type(&self, diagonal: &[i64]) -> Result<Tally>;

    /// Candidates per visited lattice.
    fn multiplicity(&self) -> u128 {
        1
    }

    fn types(&self) -> Vec<Vec<i64>> {
        window_types(self.rank(), self.window())
    }

    fn estimate(&self) -> u128 {
        estimate_window(self.rank(), self.window(), self.field().size() as u64).saturating_mul(self.multiplicity())
    }
}

/// Runs all parts in order and merges them.
pub fn run_sequential<C: WindowCounter + ?Sized>(counter: &C) -> Result<Tally> {
    let mut tally = counter.empty_tally();
    for a in counter.types() {
        tally.merge(counter.tally_type(&a)?);
    }
    Ok(tally)
}

/// `b` with coefficients mapped into `target`; needs `F_{q^s} ⊆ target`.
pub fn embed_matrix(b: &FieldMatrix, target: &Field) -> Result<FieldMatrix> {
    let src = b.ring();
    if src.q() != target.q() || !target.deg().is_multiple_of(src.deg()) {
        return Err(Error::Unsupported(format!(
            "coefficients of b live in F_{}^{} which does not embed in F_{}^{}",
            src.p(),
            src.deg(),
            target.p(),
            target.deg()
        )));
    }
    let emb = src.embedding_into(target)?;
    let rows = b
        .rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| {
                    let coeffs = e.coeffs().iter().map(|&c| emb.apply(c)).collect();
                    Series::new(e.ord(), coeffs, e.prec())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FieldMatrix::new(target.clone(), rows)
}

fn is_descending(mu: &Coweight) -> bool {
    mu.0.windows(2).all(|w| w[0] >= w[1])
}

/// Dominant integral `μ' ⪯ μ`, in ascending order.
pub fn strata_below(mu: &Coweight) -> Result<Vec<Coweight>> {
    Ok(newton_points_between(mu)?
        .into_iter()
        .filter(|nu| nu.is_integral())
        .map(|nu| Coweight(nu.coords().iter().map(|c| c.to_integer()).collect()))
        .collect())
}

/// Hyperspecial-level membership test for one `m`.
#[derive(Clone, Debug)]
pub struct StratumCounter {
    b: FieldMatrix,
    mu: Coweight,
    nu: NewtonPoint,
    window: i64,
    datum: RootDatum,
    strata: Vec<Coweight>,
}

impl StratumCounter {
    /// `b` is embedded into `F_{q^m}`; its Newton point is computed over its own field.
    pub fn new(b: &FieldMatrix, mu: &Coweight, window: i64, m: u32) -> Result<Self> {
        let r = b.r();
        window::check_window(r, window)?;
        if mu.len() != r {
            return Err(Error::DatumMismatch { expected: r, found: mu.len() });
        }
        if !is_descending(mu) {
            return Err(Error::NotDominant);
        }
        let src = b.ring();
        let field = Field::extension(src.p(), src.q(), m)?;
        let nu = newton_point(b, src.degree_over_q())?;
        Ok(StratumCounter {
            b: embed_matrix(b, &field)?,
            mu: mu.clone(),
            nu,
            window,
            datum: RootDatum::gl(r),
            strata: strata_below(mu)?,
        })
    }

    pub fn newton(&self) -> &NewtonPoint {
        &self.nu
    }

    /// The Hodge polygon of `g⁻¹ b σ(g)`.
    pub fn classify(&self, g: &LatticeRep) -> Result<Coweight> {
        let h = g.inverse().mul(&self.b)?.mul(&g.matrix().frobenius())?;
        hodge_polygon(&h)
    }
}

impl WindowCounter for StratumCounter {
    fn field(&self) -> &Field {
        self.b.ring()
    }
    fn rank(&self) -> usize {
        self.b.r()
    }
    fn window(&self) -> i64 {
        self.window
    }

    fn empty_tally(&self) -> Tally {
        Tally::seeded(self.strata.iter().cloned().map(Stratum::Hodge))
    }

    fn tally_type(&self, diagonal: &[i64]) -> Result<Tally> {
        let mut t = Tally::default();
        for g in LatticesOfType::new(self.field(), diagonal, self.window) {
            t.visited += 1;
            let mu1 = self.classify(&g)?;
            if !self.nu.leq(&NewtonPoint::from_coweight(&mu1)?) {
                t.mazur += 1;
            } else if !self.datum.dominance_leq(&mu1, &self.mu)? {
                t.bound += 1;
            } else {
                t.hit(Stratum::Hodge(mu1));
            }
        }
        Ok(t)
    }
}

/// Iwahori-level membership test for `GL_2` and one `m`.
#[derive(Clone, Debug)]
pub struct IwahoriCounter {
    b: FieldMatrix,
    x: AffineWeylElement,
    window: i64,
    /// `(k, k⁻¹)` for coset representatives `k` of `K/I`, one per line of `F_{q^m}^2`.
    lines: Vec<(FieldMatrix, FieldMatrix)>,
}

impl IwahoriCounter {
    pub fn new(b: &FieldMatrix, x: &AffineWeylElement, window: i64, m: u32) -> Result<Self> {
        if b.r() != 2 {
            return Err(Error::Unsupported(format!("Iwahori enumeration is implemented for r = 2, got {}", b.r())));
        }
        if x.translation().len() != 2 {
            return Err(Error::DatumMismatch { expected: 2, found: x.translation().len() });
        }
        window::check_window(2, window)?;
        let src = b.ring();
        let field = Field::extension(src.p(), src.q(), m)?;
        let one = Series::monomial(field.one(), 0);
        let c = |a| Series::monomial(a, 0);
        let mut lines = Vec::with_capacity(field.size() as usize + 1);
        // the line through (1, a), normalized to first coordinate 1
        for a in field.elements() {
            let k = FieldMatrix::new(field.clone(), vec![vec![one.clone(), Series::zero()], vec![c(a), one.clone()]])?;
            let kinv = FieldMatrix::new(
                field.clone(),
                vec![vec![one.clone(), Series::zero()], vec![c(field.neg(a)), one.clone()]],
            )?;
            lines.push((k, kinv));
        }
        let w = FieldMatrix::new(field.clone(), vec![vec![Series::zero(), one.clone()], vec![one.clone(), Series::zero()]])?;
        lines.push((w.clone(), w));
        Ok(IwahoriCounter { b: embed_matrix(b, &field)?, x: x.clone(), window, lines })
    }

    pub fn lines(&self) -> usize {
        self.lines.len()
    }
}

impl WindowCounter for IwahoriCounter {
    fn field(&self) -> &Field {
        self.b.ring()
    }
    fn rank(&self) -> usize {
        2
    }
    fn window(&self) -> i64 {
        self.window
    }
    fn multiplicity(&self) -> u128 {
        self.lines.len() as u128
    }

    fn empty_tally(&self) -> Tally {
        Tally::seeded([Stratum::Affine(self.x.clone())])
    }

    fn tally_type(&self, diagonal: &[i64]) -> Result<Tally> {
        let mut t = Tally::default();
        for g in LatticesOfType::new(self.field(), diagonal, self.window) {
            let ginv = g.inverse();
            for (k, kinv) in &self.lines {
                t.visited += 1;
                let gk = g.matrix().mul(k)?;
                let h = kinv.mul(&ginv)?.mul(&self.b)?.mul(&gk.frobenius())?;
                if iwahori_coset(&h)? == self.x {
                    t.hit(Stratum::Affine(self.x.clone()));
                } else {
                    t.bound += 1;
                }
            }
        }
        Ok(t)
    }
}

/// Tallies window lattices by their own relative position to `Λ₀`.
#[derive(Clone, Debug)]
pub struct SchubertCounter {
    field: Field,
    r: usize,
    window: i64,
}

impl SchubertCounter {
    pub fn new(field: &Field, r: usize, window: i64) -> Result<Self> {
        window::check_window(r, window)?;
        Ok(SchubertCounter { field: field.clone(), r, window })
    }
}

impl WindowCounter for SchubertCounter {
    fn field(&self) -> &Field {
        &self.field
    }
    fn rank(&self) -> usize {
        self.r
    }
    fn window(&self) -> i64 {
        self.window
    }

    fn empty_tally(&self) -> Tally {
        let dominant = window_types(self.r, self.window).into_iter().filter(|a| a.windows(2).all(|w| w[0] >= w[1]));
        Tally::seeded(dominant.map(|a| Stratum::Hodge(Coweight(a))))
    }

    fn tally_type(&self, diagonal: &[i64]) -> Result<Tally> {
        let mut t = Tally::default();
        for g in LatticesOfType::new(&self.field, diagonal, self.window) {
            t.visited += 1;
            t.hit(Stratum::Hodge(g.hodge_type()?));
        }
        Ok(t)
    }
}

fn check_ms(ms: &[u32]) -> Result<()> {
    if ms.is_empty() || ms.contains(&0) {
        return Err(Error::Invalid("m values must be positive and at least one is required".into()));
    }
    Ok(())
}

/// Runs `make(m)` for every `m`, checking the budget before each enumeration.
pub fn collect_counts<C: WindowCounter>(
    mut table: CountTable,
    ms: &[u32],
    budget: u128,
    mut make: impl FnMut(u32) -> Result<C>,
) -> Result<CountTable> {
    check_ms(ms)?;
    for &m in ms {
        let counter = make(m)?;
        check_budget(counter.estimate(), budget)?;
        table.record(m, run_sequential(&counter)?);
    }
    Ok(table)
}

/// Points of `X_{⪯μ}(b)` in the window over `F_{q^m}` for each `m`, by Hodge stratum.
pub fn adlv_stratum_counts(b: &FieldMatrix, mu: &Coweight, window: i64, ms: &[u32], budget: u128) -> Result<CountTable> {
    let mut table = CountTable::new(Level::Hyperspecial, b.ring().q(), b.r(), window);
    table.mu = Some(mu.clone());
    collect_counts(table, ms, budget, |m| StratumCounter::new(b, mu, window, m))
}

/// Points of `X^I_x(b)` for `GL_2` whose lattice lies in the window.
pub fn adlv_iwahori_counts(
    b: &FieldMatrix,
    x: &AffineWeylElement,
    window: i64,
    ms: &[u32],
    budget: u128,
) -> Result<CountTable> {
    let mut table = CountTable::new(Level::Iwahori, b.ring().q(), b.r(), window);
    table.target = Some(x.clone());
    collect_counts(table, ms, budget, |m| IwahoriCounter::new(b, x, window, m))
}

/// Window lattices over `F_{q^m}` by Schubert cell.
pub fn schubert_cell_counts(p: u32, q: u64, r: usize, window: i64, ms: &[u32], budget: u128) -> Result<CountTable> {
    let table = CountTable::new(Level::Grassmannian, q, r, window);
    collect_counts(table, ms, budget, |m| SchubertCounter::new(&Field::extension(p, q, m)?, r, window))
}
