//! Built-in fixtures, addressable by name wherever a matrix file is accepted.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CliError, Result};
use crate::format::{AnyMatrix, CoeffJson, FieldJson, MatrixJson, SeriesJson};

pub const PRESETS: &[&str] =
    &["superbasic2", "split2", "central2", "superbasic3", "basic20", "exunbounded", "defo-not-smooth"];

fn field(p: u32) -> FieldJson {
    FieldJson { p, deg: 1, modulus: None, q: Some(p as u64) }
}

fn zero() -> SeriesJson {
    SeriesJson { ord: None, prec: None, terms: BTreeMap::new() }
}

/// An exact Laurent polynomial from `(exponent, coefficient)` pairs.
fn poly(terms: &[(i64, CoeffJson)]) -> SeriesJson {
    SeriesJson { ord: None, prec: None, terms: terms.iter().map(|(e, c)| (e.to_string(), c.clone())).collect() }
}

fn z(k: i64) -> SeriesJson {
    poly(&[(k, CoeffJson::Coords(vec![1]))])
}

fn matrix(description: &str, p: u32, entries: Vec<Vec<SeriesJson>>) -> MatrixJson {
    MatrixJson {
        description: Some(description.to_string()),
        r: entries.len(),
        field: field(p),
        nilpotency: None,
        subfield_s: None,
        entries,
    }
}

pub fn preset(name: &str) -> Option<MatrixJson> {
    let m = match name.to_ascii_lowercase().as_str() {
        "superbasic2" => matrix("superbasic GL2: [[0,z],[1,0]] over F_2", 2, vec![vec![zero(), z(1)], vec![z(0), zero()]]),
        "split2" => matrix("split GL2: diag(z,1) over F_2", 2, vec![vec![z(1), zero()], vec![zero(), z(0)]]),
        "central2" => matrix("central GL2: diag(z,z) over F_2", 2, vec![vec![z(1), zero()], vec![zero(), z(1)]]),
        "superbasic3" => matrix(
            "superbasic GL3: [[0,0,z],[1,0,0],[0,1,0]] over F_2",
            2,
            vec![vec![zero(), zero(), z(1)], vec![z(0), zero(), zero()], vec![zero(), z(0), zero()]],
        ),
        "basic20" => {
            matrix("basic GL2 of Hodge type (2,0): [[0,z^2],[1,0]] over F_2", 2, vec![vec![zero(), z(2)], vec![z(0), zero()]])
        }
        "exunbounded" => {
            let mut m = matrix(
                "GL1 over F_3[eps]/(eps^2): b = 1 + eps/z, bounded by no coweight",
                3,
                vec![vec![poly(&[(-1, CoeffJson::Dual(vec![vec![0], vec![1]])), (0, CoeffJson::Dual(vec![vec![1], vec![0]]))])]],
            );
            m.nilpotency = Some(2);
            m
        }
        "defo-not-smooth" | "exdefospnotsmooth" => {
            // z - 2ε = z + ε over F_3
            let mut m = matrix(
                "GL2 over F_3[eps]/(eps^2): diag(z, z - 2 eps), bounded by (2,0) for z - eps",
                3,
                vec![
                    vec![poly(&[(1, CoeffJson::Dual(vec![vec![1], vec![0]]))]), zero()],
                    vec![
                        zero(),
                        poly(&[(0, CoeffJson::Dual(vec![vec![0], vec![1]])), (1, CoeffJson::Dual(vec![vec![1], vec![0]]))]),
                    ],
                ],
            );
            m.nilpotency = Some(2);
            m
        }
        _ => return None,
    };
    Some(m)
}

/// A preset name or a path to a matrix JSON file, with a name for reports.
pub fn load_matrix_json(spec: &str) -> Result<(String, MatrixJson)> {
    if let Some(m) = preset(spec) {
        return Ok((spec.to_ascii_lowercase(), m));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::NotFound { path: path.to_path_buf() },
        _ => CliError::Io { path: path.to_path_buf(), source: e },
    })?;
    let m: MatrixJson = serde_json::from_str(&text).map_err(|e| CliError::json(spec, e))?;
    Ok((spec.to_string(), m))
}

pub fn load_matrix(spec: &str) -> Result<(String, AnyMatrix)> {
    let (name, json) = load_matrix_json(spec)?;
    let m = json.build().map_err(|e| match e {
        CliError::Json { message, .. } => CliError::json(&name, message),
        other => other,
    })?;
    Ok((name, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_build() {
        for name in PRESETS {
            let m = preset(name).unwrap();
            let built = m.build().unwrap();
            assert_eq!(built.r(), m.r);
        }
        assert!(matches!(load_matrix("superbasic2").unwrap().1, AnyMatrix::Field(_)));
        assert!(matches!(load_matrix("exunbounded").unwrap().1, AnyMatrix::Dual(_)));
    }

    #[test]
    fn missing_file() {
        let err = load_matrix("definitely/missing.json").unwrap_err();
        assert_eq!(err.to_string(), "definitely/missing.json: file not found");
        assert_eq!(err.exit_code(), 2);
    }
}
