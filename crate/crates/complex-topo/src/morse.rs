use dp_solver::{solve_fmo_with_cap, SolveError, StateStats, DEFAULT_BAG_CAP};
use graph_core::{Status, WeightMap};
use treedecomp::{heuristic_td, to_nice, NiceTreeDecomposition, Strategy};

use crate::complex::{ComplexError, RegularComplex};
use crate::hasse::hasse_diagram;

/// A discrete vector field: face/coface pairs plus the cells left critical.
/// Plain data; [`verify_gradient_field`] decides whether it is an actual
/// gradient field of a given complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientField {
    pairs: Vec<(usize, usize)>,
    critical: Vec<usize>,
}

impl GradientField {
    pub fn new(mut pairs: Vec<(usize, usize)>, mut critical: Vec<usize>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        critical.sort_unstable();
        critical.dedup();
        GradientField { pairs, critical }
    }

    /// (face, coface) pairs, sorted ascending.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Critical cell ids, sorted ascending.
    pub fn critical(&self) -> &[usize] {
        &self.critical
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OmmSolution {
    pub field: GradientField,
    /// Total weight of the critical cells, minimal over all gradient fields.
    pub value: f64,
    pub stats: StateStats,
}

/// Minimum-weight optimal Morse matching via the feedback Morse engine on
/// the Hasse diagram, using a min-fill decomposition. Weights must be
/// nonnegative here; a field always exists (the empty one), so this never
/// reports infeasibility.
pub fn solve_omm(k: &RegularComplex, w: &WeightMap) -> Result<OmmSolution, ComplexError> {
    let (d, _) = hasse_diagram(k);
    let td = heuristic_td(&d, Strategy::MinFill);
    let ntd = to_nice(&td, &d).expect("heuristic decompositions are valid");
    solve_omm_on(k, w, &ntd, DEFAULT_BAG_CAP)
}

/// Same as [`solve_omm`] on a caller-chosen nice decomposition of the Hasse
/// diagram and an explicit bag cap.
pub fn solve_omm_on(
    k: &RegularComplex,
    w: &WeightMap,
    ntd: &NiceTreeDecomposition,
    bag_cap: usize,
) -> Result<OmmSolution, ComplexError> {
    if w.len() != k.len() {
        return Err(SolveError::WeightMismatch { have: w.len(), need: k.len() }.into());
    }
    for id in 0..k.len() {
        if w.get(id) < 0.0 {
            return Err(ComplexError::NegativeWeight {
                label: k.cell(id).label().to_string(),
                weight: w.get(id),
            });
        }
    }
    let (d, _) = hasse_diagram(k);
    let (result, stats) = solve_fmo_with_cap(&d, w, ntd, bag_cap)?;
    assert_eq!(
        result.status,
        Status::Optimal,
        "the empty matching is feasible on any Hasse diagram"
    );
    let matching = result.matching.expect("optimal results carry a matching");
    let critical = result.unmatched.expect("optimal results carry the unmatched set");
    let field = GradientField::new(matching.arcs().to_vec(), critical);
    assert_morse_equality(k, &field);
    let value = result.value.expect("optimal results carry a value");
    Ok(OmmSolution { field, value, stats })
}

/// Every pair spans adjacent dimensions and cancels out of the alternating
/// sum, so the critical cells alone must reproduce the Euler characteristic.
fn assert_morse_equality(k: &RegularComplex, field: &GradientField) {
    let critical_alt: i64 = field
        .critical()
        .iter()
        .map(|&c| if k.cell(c).dim() % 2 == 0 { 1i64 } else { -1i64 })
        .sum();
    assert_eq!(
        critical_alt,
        k.euler_characteristic(),
        "gradient field breaks the Morse equality"
    );
}

/// True iff `field` is a gradient field of `k`: every pair is a cover pair,
/// no cell sits in two pairs, reversing the paired arcs leaves the Hasse
/// diagram acyclic, and the critical set is exactly the unpaired cells.
/// Ids outside the complex are an error, not a `false`.
pub fn verify_gradient_field(
    k: &RegularComplex,
    field: &GradientField,
) -> Result<bool, ComplexError> {
    let n = k.len();
    for &(face, coface) in field.pairs() {
        for id in [face, coface] {
            if id >= n {
                return Err(ComplexError::CellOutOfRange { id, n });
            }
        }
    }
    for &c in field.critical() {
        if c >= n {
            return Err(ComplexError::CellOutOfRange { id: c, n });
        }
    }
    if field.pairs().iter().any(|&(face, coface)| !k.is_cover(face, coface)) {
        return Ok(false);
    }
    let mut paired = vec![false; n];
    for &(face, coface) in field.pairs() {
        if paired[face] || paired[coface] {
            return Ok(false);
        }
        paired[face] = true;
        paired[coface] = true;
    }
    let complement: Vec<usize> = (0..n).filter(|&c| !paired[c]).collect();
    if complement != field.critical() {
        return Ok(false);
    }
    let (d, _) = hasse_diagram(k);
    Ok(d.is_feedback_morse_matching(field.pairs()))
}
