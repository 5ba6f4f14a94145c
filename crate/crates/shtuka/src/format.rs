//! JSON encodings of fields, series, matrices, root data and count tables.
//!
//! Field elements are coordinate arrays in the basis `1, t, …, t^{deg-1}`; dual-number
//! coefficients are arrays of those, one per power of `ε`. A series without `prec` is an
//! exact Laurent polynomial.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use shtuka_core::adlv::{CountRow, CountTable, Level, RejectionRow, Stratum};
use shtuka_core::engine::{FieldMatrix, SeriesMatrix};
use shtuka_core::root_data::{AffineWeylElement, Coweight, RootDatum, WeylElement};
use shtuka_core::{DualElem, DualNumbers, Field, FieldElement, Series, EXACT};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u32,
    pub deg: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

impl FieldJson {
    pub fn build(&self) -> Result<Field> {
        let q = self.q.unwrap_or(self.p as u64);
        Ok(Field::new(self.p, self.deg, self.modulus.as_deref(), q)?)
    }

    pub fn from_field(f: &Field) -> Self {
        FieldJson { p: f.p(), deg: f.deg(), modulus: Some(f.modulus().to_vec()), q: Some(f.q()) }
    }
}

/// A coefficient: a coordinate array, a dual number (array of coordinate arrays), or an
/// integer read in the prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Coords(Vec<u32>),
    Dual(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ord: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<i64>,
    #[serde(default)]
    pub terms: BTreeMap<String, CoeffJson>,
}

impl SeriesJson {
    fn build<E: Copy + Default + Eq>(&self, mut coeff: impl FnMut(&CoeffJson) -> Result<E>) -> Result<Series<E>> {
        let mut terms: Vec<(i64, E)> = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            let e: i64 = k.trim().parse().map_err(|_| CliError::json("series", format!("exponent {k:?} is not an integer")))?;
            terms.push((e, coeff(c)?));
        }
        terms.sort_by_key(|t| t.0);
        let prec = self.prec.unwrap_or(EXACT);
        if let Some(&(e, _)) = terms.iter().find(|t| t.0 >= prec) {
            return Err(CliError::json("series", format!("term z^{e} lies at or above the precision {prec}")));
        }
        let lowest = terms.first().map(|t| t.0);
        let ord = match (self.ord, lowest) {
            (Some(o), Some(l)) if l < o => {
                return Err(CliError::json("series", format!("term z^{l} lies below ord {o}")));
            }
            (Some(o), _) => o,
            (None, Some(l)) => l,
            (None, None) if prec == EXACT => return Ok(Series::zero()),
            (None, None) => prec,
        };
        if prec == EXACT {
            return Ok(Series::from_terms(&terms, EXACT)?);
        }
        let mut coeffs = vec![E::default(); (prec - ord) as usize];
        for (e, c) in terms {
            coeffs[(e - ord) as usize] = c;
        }
        Ok(Series::new(ord, coeffs, prec)?)
    }

    fn encode<E: Copy + Default + Eq>(s: &Series<E>, mut coeff: impl FnMut(E) -> CoeffJson) -> Self {
        let terms = s.terms().map(|(e, c)| (e.to_string(), coeff(c))).collect();
        if s.is_exact() {
            SeriesJson { ord: None, prec: None, terms }
        } else {
            SeriesJson { ord: Some(s.ord()), prec: Some(s.prec()), terms }
        }
    }
}

fn field_coeff(f: &Field, c: &CoeffJson) -> Result<FieldElement> {
    match c {
        CoeffJson::Int(n) => Ok(f.from_int(*n)),
        CoeffJson::Coords(v) => {
            if v.len() > f.deg() as usize || v.iter().any(|&x| x >= f.p()) {
                return Err(CliError::json(
                    "coefficient",
                    format!("{v:?} is not a coordinate vector of length <= {} with entries < {}", f.deg(), f.p()),
                ));
            }
            Ok(f.from_coords(v))
        }
        CoeffJson::Dual(_) => Err(CliError::json("coefficient", "dual-number coefficient in a matrix over a field")),
    }
}

fn dual_coeff(r: &DualNumbers, c: &CoeffJson) -> Result<DualElem> {
    let f = r.field();
    match c {
        CoeffJson::Dual(parts) => {
            let parts =
                parts.iter().map(|v| field_coeff(f, &CoeffJson::Coords(v.clone()))).collect::<Result<Vec<_>>>()?;
            Ok(r.element(&parts)?)
        }
        other => Ok(DualElem::constant(field_coeff(f, other)?)),
    }
}

fn trimmed_coords(f: &Field, a: FieldElement) -> Vec<u32> {
    let mut c = f.coords(a);
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub r: usize,
    pub field: FieldJson,
    /// Order `e` of `ε` for coefficients in `F[ε]/(ε^e)`; absent or 1 means the field itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfield_s: Option<u32>,
    pub entries: Vec<Vec<SeriesJson>>,
}

/// A matrix over `F((z))` or over `F[ε]/(ε^e)((z))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatrix {
    Field(FieldMatrix),
    Dual(SeriesMatrix<DualNumbers>),
}

impl AnyMatrix {
    pub fn r(&self) -> usize {
        match self {
            AnyMatrix::Field(m) => m.r(),
            AnyMatrix::Dual(m) => m.r(),
        }
    }

    pub fn into_field(self) -> Result<FieldMatrix> {
        match self {
            AnyMatrix::Field(m) => Ok(m),
            AnyMatrix::Dual(_) => Err(CliError::usage(
                "this command needs a matrix over a field; drop \"nilpotency\" or use `bounded`",
            )),
        }
    }
}

impl MatrixJson {
    pub fn build(&self) -> Result<AnyMatrix> {
        if self.entries.len() != self.r || self.entries.iter().any(|row| row.len() != self.r) {
            return Err(CliError::json("matrix", format!("entries must form a {0}x{0} array", self.r)));
        }
        let field = self.field.build()?;
        let m = match self.nilpotency.unwrap_or(1) {
            1 => {
                let rows = self
                    .entries
                    .iter()
                    .map(|row| row.iter().map(|s| s.build(|c| field_coeff(&field, c))).collect())
                    .collect::<Result<Vec<Vec<_>>>>()?;
                let mut m = FieldMatrix::new(field, rows)?;
                if let Some(s) = self.subfield_s {
                    m = m.with_subfield(s)?;
                }
                AnyMatrix::Field(m)
            }
            e => {
                let ring = DualNumbers::new(field, e)?;
                let rows = self
                    .entries
                    .iter()
                    .map(|row| row.iter().map(|s| s.build(|c| dual_coeff(&ring, c))).collect())
                    .collect::<Result<Vec<Vec<_>>>>()?;
                AnyMatrix::Dual(SeriesMatrix::new(ring, rows)?)
            }
        };
        Ok(m)
    }

    pub fn from_field_matrix(m: &FieldMatrix) -> Self {
        let f = m.ring();
        let entries = m
            .rows()
            .iter()
            .map(|row| row.iter().map(|s| SeriesJson::encode(s, |c| CoeffJson::Coords(trimmed_coords(f, c)))).collect())
            .collect();
        MatrixJson {
            description: None,
            r: m.r(),
            field: FieldJson::from_field(f),
            nilpotency: None,
            subfield_s: m.subfield(),
            entries,
        }
    }

    pub fn from_dual_matrix(m: &SeriesMatrix<DualNumbers>) -> Self {
        let ring = m.ring();
        let f = ring.field();
        let entries = m
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        SeriesJson::encode(s, |c| {
                            CoeffJson::Dual((0..ring.order()).map(|i| trimmed_coords(f, c.part(i))).collect())
                        })
                    })
                    .collect()
            })
            .collect();
        MatrixJson {
            description: None,
            r: m.r(),
            field: FieldJson::from_field(f),
            nilpotency: Some(ring.order()),
            subfield_s: None,
            entries,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumJson {
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

impl RootDatumJson {
    pub fn build(&self) -> Result<RootDatum> {
        Ok(RootDatum::new(self.rank, self.simple_roots.clone(), self.simple_coroots.clone())?)
    }

    pub fn from_datum(d: &RootDatum) -> Self {
        RootDatumJson {
            rank: d.rank(),
            simple_roots: d.simple_roots().to_vec(),
            simple_coroots: d.simple_coroots().to_vec(),
        }
    }
}

fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Built-in groups: `GL1`…`GL8`, `SL2`…`SL8`, `PGL2`…`PGL8`.
pub fn builtin_group(name: &str) -> Option<RootDatum> {
    let upper = name.to_ascii_uppercase();
    let (kind, n) = ["PGL", "GL", "SL"]
        .iter()
        .find_map(|k| upper.strip_prefix(k).and_then(|rest| rest.parse::<usize>().ok()).map(|n| (*k, n)))?;
    match kind {
        "GL" if (1..=8).contains(&n) => Some(RootDatum::gl(n)),
        "SL" if (2..=8).contains(&n) => RootDatum::new(n - 1, cartan_a(n - 1), identity(n - 1)).ok(),
        "PGL" if (2..=8).contains(&n) => RootDatum::new(n - 1, identity(n - 1), cartan_a(n - 1)).ok(),
        _ => None,
    }
}

/// `r` when the name is `GL<r>`.
pub fn gl_rank(name: &str) -> Option<usize> {
    let upper = name.to_ascii_uppercase();
    let n: usize = upper.strip_prefix("GL")?.parse().ok()?;
    (1..=8).contains(&n).then_some(n)
}

/// Parses `"(2,0)"` or `"t(0,1)w[1,0]"`.
pub fn parse_stratum(label: &str) -> Result<Stratum> {
    let bad = || CliError::json("stratum", format!("cannot read stratum label {label:?}"));
    let ints = |s: &str| -> Result<Vec<i64>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect()
    };
    if let Some(rest) = label.strip_prefix('(') {
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        return Ok(Stratum::Hodge(Coweight(ints(inner)?)));
    }
    let rest = label.strip_prefix("t(").ok_or_else(bad)?;
    let (lambda, perm) = rest.split_once(")w[").ok_or_else(bad)?;
    let perm = perm.strip_suffix(']').ok_or_else(bad)?;
    let lambda = ints(lambda)?;
    let perm: Vec<usize> = ints(perm)?.into_iter().map(|x| usize::try_from(x).map_err(|_| bad())).collect::<Result<_>>()?;
    let mut sorted = perm.clone();
    sorted.sort_unstable();
    if lambda.len() != perm.len() || sorted != (0..perm.len()).collect::<Vec<_>>() {
        return Err(bad());
    }
    Ok(Stratum::Affine(AffineWeylElement::new(Coweight(lambda), WeylElement::from_permutation(&perm))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRowJson {
    pub m: u32,
    pub stratum: String,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectionJson {
    pub m: u32,
    pub bound: u64,
    pub mazur: u64,
    pub visited: u64,
}

/// The on-disk count table: the table itself plus the run that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountTableJson {
    pub version: String,
    pub fixture: String,
    pub level: String,
    pub q: u64,
    pub r: usize,
    pub window: i64,
    pub mu: Option<Vec<i64>>,
    pub target: Option<String>,
    pub config: Value,
    pub rows: Vec<CountRowJson>,
    pub rejections: Vec<RejectionJson>,
}

impl CountTableJson {
    pub fn from_table(t: &CountTable, fixture: &str, config: Value) -> Self {
        CountTableJson {
            version: crate::VERSION.to_string(),
            fixture: fixture.to_string(),
            level: t.level.name().to_string(),
            q: t.q,
            r: t.r,
            window: t.window,
            mu: t.mu.as_ref().map(|m| m.0.clone()),
            target: t.target.as_ref().map(|x| Stratum::Affine(x.clone()).label()),
            config,
            rows: t.rows.iter().map(|r| CountRowJson { m: r.m, stratum: r.stratum.label(), count: r.count }).collect(),
            rejections: t
                .rejections
                .iter()
                .map(|r| RejectionJson { m: r.m, bound: r.bound, mazur: r.mazur, visited: r.visited })
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<CountTable> {
        let level = Level::from_name(&self.level)
            .ok_or_else(|| CliError::json("count table", format!("unknown level {:?}", self.level)))?;
        let mut t = CountTable::new(level, self.q, self.r, self.window);
        t.mu = self.mu.clone().map(Coweight);
        t.target = match &self.target {
            None => None,
            Some(label) => match parse_stratum(label)? {
                Stratum::Affine(x) => Some(x),
                Stratum::Hodge(_) => return Err(CliError::json("count table", "target must be an affine Weyl element")),
            },
        };
        t.rows = self
            .rows
            .iter()
            .map(|r| Ok(CountRow { m: r.m, stratum: parse_stratum(&r.stratum)?, count: r.count }))
            .collect::<Result<_>>()?;
        t.rejections = self
            .rejections
            .iter()
            .map(|r| RejectionRow { m: r.m, bound: r.bound, mazur: r.mazur, visited: r.visited })
            .collect();
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_round_trip() {
        let json = r#"{"ord":-1,"prec":6,"terms":{"-1":[1],"2":[0,1]}}"#;
        let s: SeriesJson = serde_json::from_str(json).unwrap();
        let f = Field::new(2, 2, None, 2).unwrap();
        let x = s.build(|c| field_coeff(&f, c)).unwrap();
        assert_eq!(x.ord(), -1);
        assert_eq!(x.prec(), 6);
        assert_eq!(x.coeff(2), Some(f.generator()));
        let back = SeriesJson::encode(&x, |c| CoeffJson::Coords(trimmed_coords(&f, c)));
        assert_eq!(back.build(|c| field_coeff(&f, c)).unwrap(), x);
    }

    #[test]
    fn bad_series() {
        let s: SeriesJson = serde_json::from_str(r#"{"prec":2,"terms":{"3":[1]}}"#).unwrap();
        let f = Field::prime(2).unwrap();
        assert!(s.build(|c| field_coeff(&f, c)).is_err());
        let s: SeriesJson = serde_json::from_str(r#"{"terms":{"0":[2]}}"#).unwrap();
        assert!(s.build(|c| field_coeff(&f, c)).is_err());
    }

    #[test]
    fn groups() {
        assert_eq!(builtin_group("GL3").unwrap().rank(), 3);
        let pgl2 = builtin_group("pgl2").unwrap();
        assert_eq!(pgl2.pi1().torsion_orders(), vec![2]);
        assert!(builtin_group("SL2").unwrap().pi1().torsion_orders().is_empty());
        assert!(builtin_group("E8").is_none());
        assert_eq!(gl_rank("GL4"), Some(4));
    }

    #[test]
    fn stratum_labels_round_trip() {
        for label in ["(2,0)", "(-1)", "t(0,1)w[1,0]", "t(1,0,-1)w[0,2,1]"] {
            assert_eq!(parse_stratum(label).unwrap().label(), label);
        }
        assert!(parse_stratum("t(0,1)w[1,1]").is_err());
        assert!(parse_stratum("2,0").is_err());
    }
}
