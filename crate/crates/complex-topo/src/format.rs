//! The ".sc" complex text format.
//!
//! Simplicial mode lists maximal simplices and closes them downward:
//!
//! ```text
//! c optional comment lines
//! p sc
//! s <v1> <v2> ...          (one maximal simplex per line)
//! w <v1,v2,...> <weight>   (optional; cell named by its sorted vertices)
//! ```
//!
//! Explicit regular-CW mode spells the poset out:
//!
//! ```text
//! p cw
//! cell <id> <dim>
//! cover <face-id> <coface-id>
//! w <id> <weight>
//! ```
//!
//! Labels contain no whitespace, simplicial vertex labels also no commas.
//! Unweighted cells default to 1. UTF-8, LF line endings.

use std::collections::HashSet;

use thiserror::Error;

use crate::complex::{ComplexError, RegularComplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScError {
    #[error("line {line}: expected 'p sc' or 'p cw' header")]
    BadHeader { line: usize },
    #[error("line {line}: {msg}")]
    BadLine { line: usize, msg: String },
    #[error("line {line}: unknown cell '{label}'")]
    UnknownCell { line: usize, label: String },
    #[error("line {line}: cell '{label}' weighted twice")]
    DuplicateWeight { line: usize, label: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Sc,
    Cw,
}

pub fn read_sc(text: &str) -> Result<RegularComplex, ScError> {
    let mut mode: Option<Mode> = None;
    let mut simplices: Vec<Vec<String>> = Vec::new();
    let mut cw_cells: Vec<(String, usize)> = Vec::new();
    let mut cw_covers: Vec<(String, String)> = Vec::new();
    let mut weight_lines: Vec<(usize, String, f64)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(head) = tokens.next() else { continue };
        if head == "c" {
            continue;
        }
        if head == "p" {
            if mode.is_some() {
                return Err(ScError::BadLine { line, msg: "duplicate header".into() });
            }
            match (tokens.next(), tokens.next()) {
                (Some("sc"), None) => mode = Some(Mode::Sc),
                (Some("cw"), None) => mode = Some(Mode::Cw),
                _ => return Err(ScError::BadHeader { line }),
            }
            continue;
        }
        let Some(current) = mode else {
            return Err(ScError::BadLine { line, msg: format!("'{head}' before header") });
        };
        match (current, head) {
            (Mode::Sc, "s") => {
                let verts: Vec<String> = tokens.map(str::to_string).collect();
                if verts.is_empty() {
                    return Err(ScError::BadLine {
                        line,
                        msg: "a simplex needs at least one vertex".into(),
                    });
                }
                simplices.push(verts);
            }
            (Mode::Cw, "cell") => {
                let (Some(label), Some(dim), None) = (tokens.next(), tokens.next(), tokens.next())
                else {
                    return Err(ScError::BadLine { line, msg: "expected 'cell <id> <dim>'".into() });
                };
                let dim = dim.parse::<usize>().map_err(|_| ScError::BadLine {
                    line,
                    msg: format!("bad dimension '{dim}'"),
                })?;
                cw_cells.push((label.to_string(), dim));
            }
            (Mode::Cw, "cover") => {
                let (Some(face), Some(coface), None) = (tokens.next(), tokens.next(), tokens.next())
                else {
                    return Err(ScError::BadLine {
                        line,
                        msg: "expected 'cover <face-id> <coface-id>'".into(),
                    });
                };
                cw_covers.push((face.to_string(), coface.to_string()));
            }
            (_, "w") => {
                let (Some(spec), Some(wt), None) = (tokens.next(), tokens.next(), tokens.next())
                else {
                    return Err(ScError::BadLine {
                        line,
                        msg: "expected 'w <cell> <weight>'".into(),
                    });
                };
                let weight = wt.parse::<f64>().map_err(|_| ScError::BadLine {
                    line,
                    msg: format!("bad weight '{wt}'"),
                })?;
                if !weight.is_finite() {
                    return Err(ScError::BadLine {
                        line,
                        msg: format!("weight '{wt}' is not finite"),
                    });
                }
                weight_lines.push((line, spec.to_string(), weight));
            }
            _ => {
                return Err(ScError::BadLine { line, msg: format!("unknown line kind '{head}'") });
            }
        }
    }

    let mut complex = match mode {
        Some(Mode::Sc) => RegularComplex::simplicial(&simplices)?,
        Some(Mode::Cw) => RegularComplex::cw(&cw_cells, &cw_covers)?,
        None => return Err(ScError::BadHeader { line: text.lines().count() + 1 }),
    };
    let mut weighted = HashSet::new();
    for (line, spec, weight) in weight_lines {
        let id = complex
            .cell_index(&spec)
            .ok_or(ScError::UnknownCell { line, label: spec.clone() })?;
        if !weighted.insert(id) {
            return Err(ScError::DuplicateWeight { line, label: spec });
        }
        complex.set_weight(id, weight);
    }
    Ok(complex)
}

pub fn write_sc(k: &RegularComplex) -> String {
    let mut out = String::new();
    if k.is_simplicial() {
        out.push_str("p sc\n");
        for (id, cell) in k.cells().iter().enumerate() {
            if k.cofaces(id).is_empty() {
                out.push_str(&format!("s {}\n", cell.verts().join(" ")));
            }
        }
    } else {
        out.push_str("p cw\n");
        for cell in k.cells() {
            out.push_str(&format!("cell {} {}\n", cell.label(), cell.dim()));
        }
        for &(face, coface) in k.covers() {
            out.push_str(&format!("cover {} {}\n", k.cell(face).label(), k.cell(coface).label()));
        }
    }
    for (id, cell) in k.cells().iter().enumerate() {
        let w = k.weights()[id];
        if w != 1.0 {
            out.push_str(&format!("w {} {}\n", cell.label(), w));
        }
    }
    out
}
