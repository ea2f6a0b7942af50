//! The ".dg" digraph text format.
//!
//! ```text
//! c optional comment lines
//! p fmm <n> <m>
//! v <label> [<weight>]     (n lines, weight defaults to 1)
//! a <tail-label> <head-label>   (m lines)
//! ```
//!
//! Labels contain no whitespace; all `v` lines precede all `a` lines and
//! vertex ids are assigned in `v`-line order. UTF-8, LF line endings.

use thiserror::Error;

use crate::digraph::{Digraph, GraphError};
use crate::weights::{WeightError, WeightMap};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DgError {
    #[error("line {line}: expected 'p fmm <n> <m>' header")]
    BadHeader { line: usize },
    #[error("line {line}: {msg}")]
    BadLine { line: usize, msg: String },
    #[error("line {line}: unknown vertex label '{label}'")]
    UnknownLabel { line: usize, label: String },
    #[error("declared {declared} {what} lines but found {found}")]
    CountMismatch { what: &'static str, declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

pub fn read_dg(text: &str) -> Result<(Digraph, WeightMap), DgError> {
    let mut header: Option<(usize, usize)> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut arcs_raw: Vec<(usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(head) = tokens.next() else { continue };
        match head {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(DgError::BadLine { line, msg: "duplicate header".into() });
                }
                let ok = tokens.next() == Some("fmm");
                let n = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let m = tokens.next().and_then(|t| t.parse::<usize>().ok());
                match (ok, n, m, tokens.next()) {
                    (true, Some(n), Some(m), None) => header = Some((n, m)),
                    _ => return Err(DgError::BadHeader { line }),
                }
            }
            "v" => {
                if header.is_none() {
                    return Err(DgError::BadLine { line, msg: "'v' before header".into() });
                }
                if !arcs_raw.is_empty() {
                    return Err(DgError::BadLine { line, msg: "'v' after 'a' lines".into() });
                }
                let Some(label) = tokens.next() else {
                    return Err(DgError::BadLine { line, msg: "missing vertex label".into() });
                };
                let weight = match tokens.next() {
                    None => 1.0,
                    Some(t) => t.parse::<f64>().map_err(|_| DgError::BadLine {
                        line,
                        msg: format!("bad weight '{t}'"),
                    })?,
                };
                if tokens.next().is_some() {
                    return Err(DgError::BadLine { line, msg: "trailing tokens".into() });
                }
                labels.push(label.to_string());
                weights.push(weight);
            }
            "a" => {
                if header.is_none() {
                    return Err(DgError::BadLine { line, msg: "'a' before header".into() });
                }
                let (Some(tail), Some(head), None) = (tokens.next(), tokens.next(), tokens.next())
                else {
                    return Err(DgError::BadLine {
                        line,
                        msg: "expected 'a <tail> <head>'".into(),
                    });
                };
                arcs_raw.push((line, tail.to_string(), head.to_string()));
            }
            _ => {
                return Err(DgError::BadLine { line, msg: format!("unknown line kind '{head}'") });
            }
        }
    }

    let Some((n, m)) = header else {
        return Err(DgError::BadHeader { line: text.lines().count() + 1 });
    };
    if labels.len() != n {
        return Err(DgError::CountMismatch { what: "v", declared: n, found: labels.len() });
    }
    if arcs_raw.len() != m {
        return Err(DgError::CountMismatch { what: "a", declared: m, found: arcs_raw.len() });
    }

    // Resolve labels through a throwaway arc-free digraph so label validation
    // (uniqueness, no whitespace) happens in one place.
    let empty = Digraph::with_labels(labels.clone(), &[])?;
    let mut arcs = Vec::with_capacity(m);
    for (line, tail, head) in arcs_raw {
        let t = empty
            .vertex_by_label(&tail)
            .ok_or(DgError::UnknownLabel { line, label: tail })?;
        let h = empty
            .vertex_by_label(&head)
            .ok_or(DgError::UnknownLabel { line, label: head })?;
        arcs.push((t, h));
    }
    let graph = Digraph::with_labels(labels, &arcs)?;
    let weights = WeightMap::new(weights)?;
    Ok((graph, weights))
}

pub fn write_dg(d: &Digraph, w: &WeightMap) -> String {
    assert_eq!(w.len(), d.n(), "weight map must cover the vertex set");
    let mut out = String::new();
    out.push_str(&format!("p fmm {} {}\n", d.n(), d.m()));
    for v in 0..d.n() {
        out.push_str(&format!("v {} {}\n", d.label(v), w.get(v)));
    }
    for &(u, v) in d.arcs() {
        out.push_str(&format!("a {} {}\n", d.label(u), d.label(v)));
    }
    out
}
