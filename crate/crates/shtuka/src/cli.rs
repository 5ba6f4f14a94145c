//! The `shtuka` command tree.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use shtuka_core::adlv::{Stratum, DEFAULT_BUDGET};
use shtuka_core::engine::sample::Pool;
use shtuka_core::engine::{
    bounded_by, decency_check, hodge_polygon_detailed, iwahori_coset, kottwitz_point_of, newton_point_detailed,
    BoundMode, FieldMatrix,
};
use shtuka_core::newton::{defect_glr, NewtonPoint, NewtonPoset};
use shtuka_core::root_data::{Coweight, RationalCoweight, RootDatum};
use shtuka_core::{Field, Q, EXACT};

use crate::checks;
use crate::error::{CliError, Result};
use crate::format::{builtin_group, gl_rank, parse_stratum, CountTableJson, MatrixJson, RootDatumJson};
use crate::output::{csv_text, emit, envelope, poset_dot, poset_json, to_json_text};
use crate::parallel;
use crate::presets::{load_matrix, preset, PRESETS};

#[derive(Debug, Parser, Serialize)]
#[command(name = "shtuka", version, about = "Hodge and Newton polygons of local shtukas and affine Deligne-Lusztig point counts")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Write the artifact here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Refuse enumerations estimated to visit more lattices than this.
    #[arg(long, global = true, env = "SHTUKA_BUDGET")]
    pub max_lattices: Option<u128>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub workers: Option<usize>,
    /// Truncate input matrices to this absolute `z`-precision.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub precision_override: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Z,
    ZZeta,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Positive roots, ρ and π₁ of a root datum.
    Rootdata(GroupArgs),
    /// Compare two (rational) coweights in the dominance order.
    Order(OrderArgs),
    /// Hodge polygon of a matrix.
    Hodge(MatrixArgs),
    /// Newton point of a matrix, or the Newton poset below μ.
    Newton(NewtonArgs),
    /// Whether bσ* is bounded by μ.
    Bounded(BoundedArgs),
    /// Whether (bσ*)^s = z^ω σ^s.
    Decency(DecencyArgs),
    /// The Iwahori double coset I x I of a matrix in GL_2 or GL_r.
    Iwahori(MatrixArgs),
    /// Point counts of affine Deligne-Lusztig sets in lattice windows.
    #[command(subcommand)]
    Adlv(AdlvCommand),
    /// Sweeps and randomized checks of the formulas.
    #[command(subcommand)]
    Check(CheckCommand),
    /// List the built-in fixtures, or print one as matrix JSON.
    Preset(PresetArgs),
    /// List the JSON schemas, or print one.
    Schema(SchemaArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GroupArgs {
    /// Built-in group: GL1..GL8, SL2..SL8, PGL2..PGL8.
    #[arg(long, conflicts_with = "datum", required_unless_present = "datum")]
    pub group: Option<String>,
    /// Root datum JSON file.
    #[arg(long)]
    pub datum: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct OrderArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Left coweight, entries integers or fractions a/b.
    #[arg(long, allow_hyphen_values = true)]
    pub lhs: String,
    #[arg(long, allow_hyphen_values = true)]
    pub rhs: String,
}

#[derive(Debug, Args, Serialize)]
pub struct MatrixArgs {
    /// Matrix JSON file or preset name.
    #[arg(short = 'm', long = "matrix", visible_alias = "b")]
    pub matrix: String,
}

#[derive(Debug, Args, Serialize)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
pub struct NewtonArgs {
    #[command(subcommand)]
    pub sub: Option<NewtonCommand>,
    #[arg(short = 'm', long = "matrix", visible_alias = "b", required = true)]
    pub matrix: Option<String>,
    /// Degree of the subfield F_{q^s} holding the entries.
    #[arg(short = 's', long = "s")]
    pub s: Option<u32>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NewtonCommand {
    /// Newton points of GL_r between the basic point and μ.
    Poset(PosetArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct PosetArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu: Vec<i64>,
    /// Report the longest chain from this Newton point to μ.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundedArgs {
    #[arg(short = 'm', long = "matrix", visible_alias = "b")]
    pub matrix: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu: Vec<i64>,
    #[arg(long, value_enum, default_value = "z")]
    pub mode: Mode,
}

#[derive(Debug, Args, Serialize)]
pub struct DecencyArgs {
    #[arg(short = 'm', long = "matrix", visible_alias = "b")]
    pub matrix: String,
    #[arg(short = 's', long = "s")]
    pub s: Option<u32>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdlvCommand {
    /// Count X_{⪯μ}(b) by Hodge stratum, or X^I_x(b) for GL_2 with --x.
    Count(CountArgs),
    /// Growth-rate dimension verdicts from a count table.
    Dim(DimArgs),
    /// Window lattices by Schubert cell.
    Schubert(SchubertArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct WindowArgs {
    #[arg(long, default_value_t = 1)]
    pub window: i64,
    /// Field extension degrees m, counts are over F_{q^m}.
    #[arg(long = "m", value_delimiter = ',', default_value = "1,2,3,4")]
    pub m: Vec<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long = "b", visible_alias = "matrix")]
    pub b: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "x")]
    pub mu: Vec<i64>,
    /// Iwahori-level target, e.g. "t(0,1)w[1,0]".
    #[arg(long, conflicts_with = "mu")]
    pub x: Option<String>,
    #[command(flatten)]
    pub window: WindowArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct DimArgs {
    /// Count table JSON written by `adlv count`.
    pub table: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SchubertArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Base field size; defaults to p.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[command(flatten)]
    pub window: WindowArgs,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckCommand {
    /// Longest chains in Newton posets against Σ⌈⟨ω_i, μ-ν⟩⌉.
    Chai(SweepArgs),
    /// Both sides of ⟨2ρ,μ⟩ - Σ⌈⟨ω_i,μ-ν⟩⌉ = ⟨ρ,μ+ν⟩ - ½def, and basic dimensions.
    Eq06(SweepArgs),
    /// ν_b ⪯ μ and κ(b) = |μ| for random b ∈ K z^μ K.
    Mazur(MazurArgs),
    /// Growth verdict of the μ stratum against ⟨ρ, μ-ν⟩ - ½def(b).
    Dim(DimCheckArgs),
    /// Stability of the Newton point under deep congruence subgroups.
    Perturbation(PerturbationArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 4)]
    pub mu_max: i64,
    #[arg(long, default_value_t = 6)]
    pub total_max: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct MazurArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub primes: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    pub max_rank: usize,
    /// Bound on Σ|μ_i|.
    #[arg(long, default_value_t = 4)]
    pub max_abs: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct DimCheckArgs {
    #[arg(long = "b", visible_alias = "matrix")]
    pub b: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu: Vec<i64>,
    #[command(flatten)]
    pub window: WindowArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct PerturbationArgs {
    #[arg(long = "b", visible_alias = "matrix")]
    pub b: String,
    #[arg(long = "d", value_delimiter = ',', default_value = "1,2")]
    pub d: Vec<i64>,
    #[arg(long, default_value_t = 4)]
    pub c_max: i64,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    /// Degree of the random tails of h.
    #[arg(long, default_value_t = 2)]
    pub degree: i64,
    /// Sample h over F_{q^m}.
    #[arg(long = "m", default_value_t = 1)]
    pub m: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct PresetArgs {
    pub name: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct SchemaArgs {
    pub name: Option<String>,
}

pub const SCHEMAS: &[(&str, &str)] = &[
    ("field", include_str!("../schemas/field.schema.json")),
    ("matrix", include_str!("../schemas/matrix.schema.json")),
    ("root-datum", include_str!("../schemas/root-datum.schema.json")),
    ("count-table", include_str!("../schemas/count-table.schema.json")),
    ("poset", include_str!("../schemas/poset.schema.json")),
    ("envelope", include_str!("../schemas/envelope.schema.json")),
];

/// What a command produced, before formatting.
struct Output {
    json: Value,
    /// Write `json` as is rather than inside the envelope.
    bare: bool,
    csv: Option<String>,
    dot: Option<String>,
    /// A check that ran to completion but did not hold.
    failure: Option<String>,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, bare: false, csv: None, dot: None, failure: None }
    }
    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
    fn check(mut self, passed: bool, what: &str) -> Self {
        if !passed {
            self.failure = Some(format!("check {what} failed; see the report for details"));
        }
        self
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rootdata(_) => "rootdata",
            Command::Order(_) => "order",
            Command::Hodge(_) => "hodge",
            Command::Newton(NewtonArgs { sub: Some(NewtonCommand::Poset(_)), .. }) => "newton poset",
            Command::Newton(_) => "newton",
            Command::Bounded(_) => "bounded",
            Command::Decency(_) => "decency",
            Command::Iwahori(_) => "iwahori",
            Command::Adlv(AdlvCommand::Count(_)) => "adlv count",
            Command::Adlv(AdlvCommand::Dim(_)) => "adlv dim",
            Command::Adlv(AdlvCommand::Schubert(_)) => "adlv schubert",
            Command::Check(CheckCommand::Chai(_)) => "check chai",
            Command::Check(CheckCommand::Eq06(_)) => "check eq06",
            Command::Check(CheckCommand::Mazur(_)) => "check mazur",
            Command::Check(CheckCommand::Dim(_)) => "check dim",
            Command::Check(CheckCommand::Perturbation(_)) => "check perturbation",
            Command::Preset(_) => "preset",
            Command::Schema(_) => "schema",
        }
    }
}

struct Ctx<'a> {
    global: &'a GlobalArgs,
    budget: u128,
    pool: &'a rayon::ThreadPool,
}

pub fn run(cli: &Cli) -> Result<()> {
    let pool = parallel::thread_pool(cli.global.workers)?;
    let budget = cli.global.max_lattices.unwrap_or(DEFAULT_BUDGET);
    let mut config = serde_json::to_value(cli).expect("arguments serialize");
    config["global"]["max_lattices"] = json!(budget.to_string());
    let ctx = Ctx { global: &cli.global, budget, pool: &pool };
    let out = pool.install(|| dispatch(&cli.command, &ctx, &config))?;
    let format = cli.global.format.unwrap_or(OutputFormat::Json);
    let text = match format {
        OutputFormat::Json if out.bare => to_json_text(&out.json),
        OutputFormat::Json => to_json_text(&envelope(cli.command.name(), config, out.json)),
        OutputFormat::Csv => out.csv.ok_or_else(|| unsupported_format(&cli.command, "csv"))?,
        OutputFormat::Dot => out.dot.ok_or_else(|| unsupported_format(&cli.command, "dot"))?,
    };
    emit(cli.global.out.as_deref(), &text)?;
    match out.failure {
        Some(msg) => Err(CliError::CheckFailed(msg)),
        None => Ok(()),
    }
}

fn unsupported_format(cmd: &Command, f: &str) -> CliError {
    CliError::usage(format!("`{}` has no {f} output; use --format json", cmd.name()))
}

fn dispatch(cmd: &Command, ctx: &Ctx, config: &Value) -> Result<Output> {
    match cmd {
        Command::Rootdata(a) => rootdata(a),
        Command::Order(a) => order(a),
        Command::Hodge(a) => hodge(&a.matrix, ctx),
        Command::Newton(NewtonArgs { sub: Some(NewtonCommand::Poset(a)), .. }) => poset(a),
        Command::Newton(a) => newton(a.matrix.as_deref().unwrap_or_default(), a.s, ctx),
        Command::Bounded(a) => bounded(a, ctx),
        Command::Decency(a) => decency(a, ctx),
        Command::Iwahori(a) => iwahori(&a.matrix, ctx),
        Command::Adlv(AdlvCommand::Count(a)) => adlv_count(a, ctx, config),
        Command::Adlv(AdlvCommand::Dim(a)) => adlv_dim(a),
        Command::Adlv(AdlvCommand::Schubert(a)) => adlv_schubert(a, ctx, config),
        Command::Check(c) => check(c, ctx),
        Command::Preset(a) => preset_cmd(a),
        Command::Schema(a) => schema_cmd(a),
    }
}

fn group(name: &str) -> Result<RootDatum> {
    builtin_group(name).ok_or_else(|| {
        CliError::usage(format!("unknown group {name:?}; use GL1..GL8, SL2..SL8, PGL2..PGL8 or --datum FILE"))
    })
}

fn gl_group(name: &str) -> Result<usize> {
    gl_rank(name).ok_or_else(|| CliError::usage(format!("unknown group {name:?}; this command supports GL1..GL8")))
}

fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::NotFound { path: path.to_path_buf() },
        _ => CliError::Io { path: path.to_path_buf(), source: e },
    })
}

fn load_datum(a: &GroupArgs) -> Result<RootDatum> {
    match (&a.group, &a.datum) {
        (Some(name), _) => group(name),
        (None, Some(path)) => {
            let json: RootDatumJson =
                serde_json::from_str(&read_file(path)?).map_err(|e| CliError::json(path.display().to_string(), e))?;
            json.build()
        }
        (None, None) => Err(CliError::usage("give --group NAME or --datum FILE")),
    }
}

fn parse_q(s: &str) -> Result<Q> {
    let bad = || CliError::usage(format!("cannot read {s:?} as an integer or fraction a/b"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Q::new(a, b))
        }
        None => s.parse::<i64>().map(Q::from_integer).map_err(|_| bad()),
    }
}

fn parse_rational_list(s: &str) -> Result<Vec<Q>> {
    s.trim_matches(|c| c == '(' || c == ')').split(',').map(parse_q).collect()
}

fn q_labels(v: &[Q]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn precision_value(p: i64) -> Value {
    if p == EXACT {
        json!("exact")
    } else {
        json!(p)
    }
}

fn rootdata(a: &GroupArgs) -> Result<Output> {
    let d = load_datum(a)?;
    let pi1 = d.pi1();
    Ok(Output::json(json!({
        "datum": RootDatumJson::from_datum(&d),
        "semisimple_rank": d.semisimple_rank(),
        "cartan": d.cartan(),
        "positive_roots": d.positive_roots(),
        "positive_coroots": d.positive_coroots(),
        "two_rho": d.two_rho(),
        "two_rho_coroot": d.two_rho_coroot(),
        "pi1": { "torsion": pi1.torsion_orders(), "free_rank": pi1.free_rank() },
    })))
}

fn order(a: &OrderArgs) -> Result<Output> {
    let d = load_datum(&a.group)?;
    let lhs = RationalCoweight(parse_rational_list(&a.lhs)?);
    let rhs = RationalCoweight(parse_rational_list(&a.rhs)?);
    let leq = d.dominance_leq_rational(&lhs, &rhs)?;
    let geq = d.dominance_leq_rational(&rhs, &lhs)?;
    Ok(Output::json(json!({
        "lhs": q_labels(&lhs.0),
        "rhs": q_labels(&rhs.0),
        "lhs_leq_rhs": leq,
        "rhs_leq_lhs": geq,
        "lhs_dominant": q_labels(&d.dominant_rep_rational(&lhs).0),
        "rhs_dominant": q_labels(&d.dominant_rep_rational(&rhs).0),
    })))
}

fn load_field_matrix(spec: &str, ctx: &Ctx) -> Result<(String, FieldMatrix)> {
    let (name, m) = load_matrix(spec)?;
    let m = m.into_field()?;
    Ok((name, match ctx.global.precision_override {
        Some(p) => m.truncate(p),
        None => m,
    }))
}

fn default_s(b: &FieldMatrix, s: Option<u32>) -> u32 {
    s.or(b.subfield()).unwrap_or_else(|| b.ring().degree_over_q())
}

fn hodge(spec: &str, ctx: &Ctx) -> Result<Output> {
    let (name, b) = load_field_matrix(spec, ctx)?;
    let rep = hodge_polygon_detailed(&b)?;
    Ok(Output::json(json!({
        "fixture": name,
        "mu": rep.mu.0,
        "kappa": kottwitz_point_of(&b)?,
        "precision": precision_value(rep.precision),
        "input_precision": precision_value(b.precision()),
    })))
}

fn newton(spec: &str, s: Option<u32>, ctx: &Ctx) -> Result<Output> {
    let (name, b) = load_field_matrix(spec, ctx)?;
    let s = default_s(&b, s);
    let rep = newton_point_detailed(&b, s)?;
    let slopes: Vec<Value> =
        rep.nu.slopes().into_iter().map(|(x, n)| json!({ "slope": x.to_string(), "multiplicity": n })).collect();
    Ok(Output::json(json!({
        "fixture": name,
        "s": s,
        "nu": q_labels(rep.nu.coords()),
        "slopes": slopes,
        "basic": rep.nu.is_basic(),
        "defect": defect_glr(&rep.nu)?,
        "kappa": kottwitz_point_of(&b)?,
        "charpoly_valuations": rep.valuations,
        "precision": precision_value(rep.precision),
        "input_precision": precision_value(b.precision()),
    })))
}

fn poset(a: &PosetArgs) -> Result<Output> {
    let r = gl_group(&a.group)?;
    if a.mu.len() != r {
        return Err(CliError::usage(format!("--mu has {} entries but {} has rank {r}", a.mu.len(), a.group)));
    }
    let poset = NewtonPoset::new(&Coweight(a.mu.clone()))?;
    let mut json = poset_json(&poset)?;
    if let Some(nu) = &a.nu {
        let nu = NewtonPoint::new(parse_rational_list(nu)?)?;
        json["nu"] = json!(nu.label());
        json["longest_chain"] = json!(poset.longest_chain(&nu)?);
    }
    let rows: Vec<Value> = json["longest_chain_table"].as_array().cloned().unwrap_or_default();
    let csv = csv_text(
        &rows.iter().map(|v| (v["nu"].as_str().unwrap_or_default().to_string(), v["longest_chain"].as_u64())).collect::<Vec<_>>(),
    )?;
    let mut out = Output::json(json).with_csv(format!("nu,longest_chain\n{csv}"));
    out.dot = Some(poset_dot(&poset));
    Ok(out)
}

fn bounded(a: &BoundedArgs, ctx: &Ctx) -> Result<Output> {
    let (name, m) = load_matrix(&a.matrix)?;
    let mu = Coweight(a.mu.clone());
    let mode = match a.mode {
        Mode::Z => BoundMode::Z,
        Mode::ZZeta => BoundMode::ZMinusZeta,
    };
    let p = ctx.global.precision_override;
    let (result, precision) = match m {
        crate::format::AnyMatrix::Field(b) => {
            let b = p.map_or(b.clone(), |p| b.truncate(p));
            (bounded_by(&b, &mu, mode)?, b.precision())
        }
        crate::format::AnyMatrix::Dual(b) => {
            let b = p.map_or(b.clone(), |p| b.truncate(p));
            (bounded_by(&b, &mu, mode)?, b.precision())
        }
    };
    Ok(Output::json(json!({
        "fixture": name,
        "mu": mu.0,
        "mode": a.mode,
        "bounded": result,
        "precision": precision_value(precision),
    })))
}

fn decency(a: &DecencyArgs, ctx: &Ctx) -> Result<Output> {
    let (name, b) = load_field_matrix(&a.matrix, ctx)?;
    let s = default_s(&b, a.s);
    let omega = decency_check(&b, s)?;
    let nu = omega.as_ref().map(|w| q_labels(&w.0.iter().map(|&x| Q::new(x, s as i64)).collect::<Vec<_>>()));
    Ok(Output::json(json!({
        "fixture": name,
        "s": s,
        "decent": omega.is_some(),
        "omega": omega.map(|w| w.0),
        "nu": nu,
        "precision": precision_value(b.precision()),
    })))
}

fn iwahori(spec: &str, ctx: &Ctx) -> Result<Output> {
    let (name, g) = load_field_matrix(spec, ctx)?;
    let x = iwahori_coset(&g)?;
    let length = x.length(&RootDatum::gl(g.r()))?;
    Ok(Output::json(json!({
        "fixture": name,
        "x": Stratum::Affine(x.clone()).label(),
        "translation": x.translation().0,
        "permutation": x.finite().as_permutation(),
        "length": length,
        "precision": precision_value(g.precision()),
    })))
}

/// Rejects `m` not divisible by the degree of the field holding `b`.
fn check_ms(b: &FieldMatrix, ms: &[u32]) -> Result<()> {
    let s = b.ring().degree_over_q();
    if let Some(m) = ms.iter().find(|&&m| m % s != 0) {
        return Err(CliError::usage(format!(
            "m = {m} is not divisible by s = {s}, the degree of the field of b over F_q; use multiples of {s} for --m"
        )));
    }
    Ok(())
}

fn count_output(table: &shtuka_core::adlv::CountTable, fixture: &str, config: &Value) -> Result<Output> {
    let json = CountTableJson::from_table(table, fixture, config.clone());
    let csv = csv_text(&json.rows)?;
    let mut out = Output::json(serde_json::to_value(&json).expect("count table serializes")).with_csv(csv);
    out.bare = true;
    Ok(out)
}

fn adlv_count(a: &CountArgs, ctx: &Ctx, config: &Value) -> Result<Output> {
    let (name, b) = load_field_matrix(&a.b, ctx)?;
    if let Some(g) = &a.group {
        let r = gl_group(g)?;
        if r != b.r() {
            return Err(CliError::usage(format!("{g} has rank {r} but b is {0}x{0}", b.r())));
        }
    }
    check_ms(&b, &a.window.m)?;
    let table = match &a.x {
        Some(label) => match parse_stratum(label)? {
            Stratum::Affine(x) => parallel::iwahori_counts(&b, &x, a.window.window, &a.window.m, ctx.budget, ctx.pool)?,
            Stratum::Hodge(_) => return Err(CliError::usage("--x needs an affine Weyl element such as t(0,1)w[1,0]")),
        },
        None => {
            let mu = Coweight(a.mu.clone());
            parallel::stratum_counts(&b, &mu, a.window.window, &a.window.m, ctx.budget, ctx.pool)?
        }
    };
    count_output(&table, &name, config)
}

fn adlv_dim(a: &DimArgs) -> Result<Output> {
    let json: CountTableJson =
        serde_json::from_str(&read_file(&a.table)?).map_err(|e| CliError::json(a.table.display().to_string(), e))?;
    let table = json.to_table()?;
    let strata = checks::verdicts(&table)?;
    let csv = csv_text(&strata)?;
    Ok(Output::json(json!({
        "fixture": json.fixture,
        "level": json.level,
        "window": json.window,
        "q": json.q,
        "m": table.m_values(),
        "strata": strata,
    }))
    .with_csv(csv))
}

fn adlv_schubert(a: &SchubertArgs, ctx: &Ctx, config: &Value) -> Result<Output> {
    let q = a.q.unwrap_or(a.p as u64);
    let table = parallel::schubert_counts(a.p, q, a.r, a.window.window, &a.window.m, ctx.budget, ctx.pool)?;
    count_output(&table, "schubert", config)
}

fn check(c: &CheckCommand, ctx: &Ctx) -> Result<Output> {
    match c {
        CheckCommand::Chai(a) => {
            let rep = checks::chai_sweep(gl_group(&a.group)?, a.mu_max, a.total_max)?;
            Ok(Output::json(to_value(&rep)).with_csv(csv_text(&rep.rows)?).check(rep.passed(), "chai"))
        }
        CheckCommand::Eq06(a) => {
            let rep = checks::eq06_sweep(gl_group(&a.group)?, a.mu_max, a.total_max)?;
            Ok(Output::json(to_value(&rep)).with_csv(csv_text(&rep.rows)?).check(rep.passed(), "eq06"))
        }
        CheckCommand::Mazur(a) => {
            if a.primes.is_empty() || a.max_rank == 0 {
                return Err(CliError::usage("--primes and --max-rank must be nonempty and positive"));
            }
            let rep = checks::mazur_trials(a.trials, ctx.global.seed, &a.primes, a.max_rank, a.max_abs)?;
            Ok(Output::json(to_value(&rep)).with_csv(csv_text(&rep.violations)?).check(rep.passed(), "mazur"))
        }
        CheckCommand::Dim(a) => {
            let (_, b) = load_field_matrix(&a.b, ctx)?;
            check_ms(&b, &a.window.m)?;
            let (rep, _) = checks::dim_check(&b, &Coweight(a.mu.clone()), a.window.window, &a.window.m, ctx.budget, ctx.pool)?;
            Ok(Output::json(to_value(&rep)).with_csv(csv_text(&rep.strata)?).check(rep.passed(), "dim"))
        }
        CheckCommand::Perturbation(a) => {
            let (_, b) = load_field_matrix(&a.b, ctx)?;
            check_ms(&b, &[a.m])?;
            let src = b.ring();
            let field = Field::extension(src.p(), src.q(), a.m)?;
            let rep = checks::perturbation_check(&b, &a.d, a.c_max, a.trials, &Pool::full(&field), a.degree, ctx.global.seed)?;
            let rows: Vec<checks::ProbeRow> = rep.depths.iter().flat_map(|d| d.probes.clone()).collect();
            Ok(Output::json(to_value(&rep)).with_csv(csv_text(&rows)?).check(rep.passed(), "perturbation"))
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn preset_cmd(a: &PresetArgs) -> Result<Output> {
    match &a.name {
        None => {
            let list: Vec<Value> = PRESETS
                .iter()
                .map(|n| json!({ "name": n, "description": preset(n).and_then(|m| m.description) }))
                .collect();
            Ok(Output::json(json!(list)))
        }
        Some(name) => {
            let m: MatrixJson = preset(name).ok_or_else(|| {
                CliError::usage(format!("unknown preset {name:?}; available: {}", PRESETS.join(", ")))
            })?;
            let mut out = Output::json(serde_json::to_value(m).expect("matrix serializes"));
            out.bare = true;
            Ok(out)
        }
    }
}

fn schema_cmd(a: &SchemaArgs) -> Result<Output> {
    match &a.name {
        None => Ok(Output::json(json!(SCHEMAS.iter().map(|s| s.0).collect::<Vec<_>>()))),
        Some(name) => {
            let text = SCHEMAS.iter().find(|s| s.0 == name).map(|s| s.1).ok_or_else(|| {
                let names: Vec<&str> = SCHEMAS.iter().map(|s| s.0).collect();
                CliError::usage(format!("unknown schema {name:?}; available: {}", names.join(", ")))
            })?;
            let mut out = Output::json(serde_json::from_str(text).expect("bundled schemas are valid JSON"));
            out.bare = true;
            Ok(out)
        }
    }
}
