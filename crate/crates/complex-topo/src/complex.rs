use std::collections::{BTreeSet, HashMap};

use dp_solver::SolveError;
use graph_core::WeightMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("bad cell label '{label}'")]
    BadLabel { label: String },
    #[error("bad simplex: {msg}")]
    BadSimplex { msg: String },
    #[error("maximal simplex {verts} listed twice")]
    DuplicateSimplex { verts: String },
    #[error("duplicate cell id '{label}'")]
    DuplicateCell { label: String },
    #[error("unknown cell id '{label}'")]
    UnknownCell { label: String },
    #[error("cover pair ({face}, {coface}) does not step up one dimension")]
    DimensionStep { face: String, coface: String },
    #[error("cover pair ({face}, {coface}) listed twice")]
    DuplicateCover { face: String, coface: String },
    #[error("cell id {id} out of range for a complex with {n} cells")]
    CellOutOfRange { id: usize, n: usize },
    #[error("critical-cell weights must be nonnegative; cell '{label}' has {weight}")]
    NegativeWeight { label: String, weight: f64 },
    #[error("erasibility takes simplicial input")]
    NotSimplicial,
    #[error("erasibility is defined for dimension at most 2; the complex has a {dim}-cell")]
    DimensionTooHigh { dim: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// One cell. Simplicial cells carry their sorted vertex tuple and are named
/// by it (vertices joined with commas); explicit CW cells carry only the
/// label they were declared with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    label: String,
    dim: usize,
    verts: Vec<String>,
}

impl Cell {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted vertex tuple; empty for explicit CW cells.
    pub fn verts(&self) -> &[String] {
        &self.verts
    }
}

/// A finite regular complex: cells with dimensions plus the cover relation
/// (face, coface) between adjacent dimensions. Cell ids are indexes into a
/// canonical order, cells sorted by dimension then name, so the same complex
/// gets the same ids no matter how its description was arranged.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularComplex {
    cells: Vec<Cell>,
    covers: Vec<(usize, usize)>,
    weights: Vec<f64>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    simplicial: bool,
    index: HashMap<String, usize>,
}

fn check_cw_label(label: &str) -> Result<(), ComplexError> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(ComplexError::BadLabel { label: label.to_string() });
    }
    Ok(())
}

fn check_vertex_label(label: &str) -> Result<(), ComplexError> {
    check_cw_label(label)?;
    // Commas separate vertices in cell names, so they cannot appear inside.
    if label.contains(',') {
        return Err(ComplexError::BadLabel { label: label.to_string() });
    }
    Ok(())
}

impl RegularComplex {
    /// Downward closure of the given maximal simplices. Every nonempty
    /// subset of a listed simplex becomes a cell; cover pairs are the
    /// one-vertex-dropped facets. All weights start at 1.
    pub fn simplicial(maximal: &[Vec<String>]) -> Result<Self, ComplexError> {
        let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
        for simplex in maximal {
            if simplex.is_empty() {
                return Err(ComplexError::BadSimplex {
                    msg: "a simplex needs at least one vertex".into(),
                });
            }
            if simplex.len() > 32 {
                return Err(ComplexError::BadSimplex {
                    msg: format!("{} vertices; the face closure would not fit", simplex.len()),
                });
            }
            for v in simplex {
                check_vertex_label(v)?;
            }
            let mut sv = simplex.clone();
            sv.sort();
            if sv.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::BadSimplex {
                    msg: format!("repeated vertex in '{}'", simplex.join(" ")),
                });
            }
            if !seen.insert(sv.clone()) {
                return Err(ComplexError::DuplicateSimplex { verts: sv.join(",") });
            }
        }

        let mut closed: BTreeSet<Vec<String>> = BTreeSet::new();
        for sv in &seen {
            for mask in 1u64..(1u64 << sv.len()) {
                let sub: Vec<String> = sv
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                closed.insert(sub);
            }
        }

        let mut ordered: Vec<Vec<String>> = closed.into_iter().collect();
        ordered.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let cells: Vec<Cell> = ordered
            .into_iter()
            .map(|verts| Cell { label: verts.join(","), dim: verts.len() - 1, verts })
            .collect();
        let index: HashMap<String, usize> =
            cells.iter().enumerate().map(|(i, c)| (c.label.clone(), i)).collect();

        let mut covers = Vec::new();
        for (id, cell) in cells.iter().enumerate() {
            if cell.dim == 0 {
                continue;
            }
            for skip in 0..cell.verts.len() {
                let facet: Vec<&str> = cell
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| v.as_str())
                    .collect();
                let face = index[&facet.join(",")];
                covers.push((face, id));
            }
        }
        covers.sort_unstable();
        Ok(Self::finish(cells, covers, true))
    }

    /// Explicit regular-CW input: cells as (label, dimension) plus cover
    /// pairs by label. The poset is taken on trust except for the
    /// dimension-step rule, which is checked.
    pub fn cw(cells: &[(String, usize)], covers: &[(String, String)]) -> Result<Self, ComplexError> {
        for (label, _) in cells {
            check_cw_label(label)?;
        }
        let mut list: Vec<Cell> = cells
            .iter()
            .map(|(label, dim)| Cell { label: label.clone(), dim: *dim, verts: Vec::new() })
            .collect();
        list.sort_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)));
        let mut index = HashMap::with_capacity(list.len());
        for (i, c) in list.iter().enumerate() {
            if index.insert(c.label.clone(), i).is_some() {
                return Err(ComplexError::DuplicateCell { label: c.label.clone() });
            }
        }

        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (face_label, coface_label) in covers {
            let face = *index
                .get(face_label)
                .ok_or_else(|| ComplexError::UnknownCell { label: face_label.clone() })?;
            let coface = *index
                .get(coface_label)
                .ok_or_else(|| ComplexError::UnknownCell { label: coface_label.clone() })?;
            if list[face].dim + 1 != list[coface].dim {
                return Err(ComplexError::DimensionStep {
                    face: face_label.clone(),
                    coface: coface_label.clone(),
                });
            }
            if !pairs.insert((face, coface)) {
                return Err(ComplexError::DuplicateCover {
                    face: face_label.clone(),
                    coface: coface_label.clone(),
                });
            }
        }
        Ok(Self::finish(list, pairs.into_iter().collect(), false))
    }

    fn finish(cells: Vec<Cell>, covers: Vec<(usize, usize)>, simplicial: bool) -> Self {
        let n = cells.len();
        let mut faces = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        for &(f, c) in &covers {
            debug_assert_eq!(cells[f].dim + 1, cells[c].dim);
            faces[c].push(f);
            cofaces[f].push(c);
        }
        let index = cells.iter().enumerate().map(|(i, c)| (c.label.clone(), i)).collect();
        RegularComplex {
            weights: vec![1.0; n],
            cells,
            covers,
            faces,
            cofaces,
            simplicial,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells in canonical id order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    /// Cover pairs (face, coface), sorted ascending.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, face: usize, coface: usize) -> bool {
        self.covers.binary_search(&(face, coface)).is_ok()
    }

    /// Immediate faces of a cell, ascending.
    pub fn faces(&self, id: usize) -> &[usize] {
        &self.faces[id]
    }

    /// Immediate cofaces of a cell, ascending.
    pub fn cofaces(&self, id: usize) -> &[usize] {
        &self.cofaces[id]
    }

    pub fn cell_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    /// Largest cell dimension, None on the empty complex.
    pub fn dim(&self) -> Option<usize> {
        // Cells are sorted by dimension first.
        self.cells.last().map(|c| c.dim)
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1i64 } else { -1i64 }).sum()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_map(&self) -> WeightMap {
        WeightMap::new(self.weights.clone()).expect("stored weights are finite")
    }

    /// `w` must be finite; `id` must be a cell.
    pub fn set_weight(&mut self, id: usize, w: f64) {
        assert!(w.is_finite(), "cell weights must be finite");
        self.weights[id] = w;
    }
}
