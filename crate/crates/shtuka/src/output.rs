//! Artifact emission: the JSON envelope, CSV tables, Graphviz DOT and atomic writes.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use shtuka_core::newton::NewtonPoset;
use shtuka_core::Q;

use crate::error::{CliError, Result};

/// `{version, command, config, result}`. Object keys serialize sorted, so equal inputs
/// give byte-identical output.
pub fn envelope(command: &str, config: Value, result: Value) -> Value {
    json!({
        "version": crate::VERSION,
        "command": command,
        "config": config,
        "result": result,
    })
}

pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes `text` to `out` through a temporary file in the same directory, or to stdout.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })
        }
        Some(path) => write_atomic(path, text.as_bytes()),
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| CliError::Io { path: path.to_path_buf(), source: e };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn csv_text<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::usage(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn diff_label(a: &[Q], b: &[Q]) -> String {
    let parts: Vec<String> = a.iter().zip(b).map(|(x, y)| (y - x).to_string()).collect();
    format!("({})", parts.join(","))
}

/// Hasse diagram with nodes labeled by slope vectors and edges by `ν' - ν`.
pub fn poset_dot(poset: &NewtonPoset) -> String {
    let mu: Vec<String> = poset.mu().0.iter().map(|x| x.to_string()).collect();
    let mut s = format!("digraph newton_poset_{} {{\n  rankdir=BT;\n", mu.join("_").replace('-', "m"));
    for (i, nu) in poset.nodes().iter().enumerate() {
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", nu.label()));
    }
    for &(i, j) in poset.covers() {
        let d = diff_label(poset.nodes()[i].coords(), poset.nodes()[j].coords());
        s.push_str(&format!("  n{i} -> n{j} [label=\"{d}\"];\n"));
    }
    s.push_str("}\n");
    s
}

/// `{nodes, edges, longest_chain_table}`.
pub fn poset_json(poset: &NewtonPoset) -> Result<Value> {
    let nodes: Vec<String> = poset.nodes().iter().map(|n| n.label()).collect();
    let edges: Vec<Value> = poset
        .covers()
        .iter()
        .map(|&(i, j)| {
            json!({
                "from": nodes[i],
                "to": nodes[j],
                "difference": diff_label(poset.nodes()[i].coords(), poset.nodes()[j].coords()),
            })
        })
        .collect();
    let table = poset
        .nodes()
        .iter()
        .map(|nu| Ok(json!({ "nu": nu.label(), "longest_chain": poset.longest_chain(nu)? })))
        .collect::<shtuka_core::Result<Vec<Value>>>()?;
    Ok(json!({
        "mu": poset.mu().0,
        "nodes": nodes,
        "edges": edges,
        "longest_chain_table": table,
    }))
}
