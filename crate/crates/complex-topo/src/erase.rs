use dp_solver::{StateStats, DEFAULT_BAG_CAP};
use graph_core::WeightMap;
use treedecomp::{heuristic_td, to_nice, NiceTreeDecomposition, Strategy};

use crate::complex::{ComplexError, RegularComplex};
use crate::hasse::hasse_diagram;
use crate::morse::{solve_omm_on, GradientField};

/// Erasibility question: can the complex be collapsed away after deleting at
/// most `budget` triangles?
#[derive(Debug, Clone, PartialEq)]
pub struct ErasibilityInstance {
    complex: RegularComplex,
    budget: u64,
}

impl ErasibilityInstance {
    /// The complex must come from simplicial input and have no cell above
    /// dimension 2.
    pub fn new(complex: RegularComplex, budget: u64) -> Result<Self, ComplexError> {
        if !complex.is_simplicial() {
            return Err(ComplexError::NotSimplicial);
        }
        if let Some(dim) = complex.dim() {
            if dim > 2 {
                return Err(ComplexError::DimensionTooHigh { dim });
            }
        }
        Ok(ErasibilityInstance { complex, budget })
    }

    pub fn complex(&self) -> &RegularComplex {
        &self.complex
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErasibilityAnswer {
    pub erasible: bool,
    /// Critical triangles of one optimal gradient field: a smallest set
    /// whose deletion lets the rest collapse away.
    pub witness: Vec<usize>,
    pub min_critical_triangles: u64,
    pub field: GradientField,
    pub stats: StateStats,
}

/// Decides erasibility by weighting triangles 1 and everything else 0: the
/// optimal Morse value then counts critical triangles, and the instance is
/// a yes exactly when that count fits the budget.
pub fn solve_erasibility(inst: &ErasibilityInstance) -> Result<ErasibilityAnswer, ComplexError> {
    let (d, _) = hasse_diagram(inst.complex());
    let td = heuristic_td(&d, Strategy::MinFill);
    let ntd = to_nice(&td, &d).expect("heuristic decompositions are valid");
    solve_erasibility_on(inst, &ntd, DEFAULT_BAG_CAP)
}

/// Same as [`solve_erasibility`] on a caller-chosen nice decomposition of
/// the Hasse diagram.
pub fn solve_erasibility_on(
    inst: &ErasibilityInstance,
    ntd: &NiceTreeDecomposition,
    bag_cap: usize,
) -> Result<ErasibilityAnswer, ComplexError> {
    let k = inst.complex();
    let weights: Vec<f64> =
        k.cells().iter().map(|c| if c.dim() == 2 { 1.0 } else { 0.0 }).collect();
    let w = WeightMap::new(weights).expect("zero/one weights are finite");
    let sol = solve_omm_on(k, &w, ntd, bag_cap)?;
    let witness: Vec<usize> =
        sol.field.critical().iter().copied().filter(|&c| k.cell(c).dim() == 2).collect();
    let min = witness.len() as u64;
    assert_eq!(min as f64, sol.value, "the objective counts exactly the critical triangles");
    Ok(ErasibilityAnswer {
        erasible: min <= inst.budget(),
        witness,
        min_critical_triangles: min,
        field: sol.field,
        stats: sol.stats,
    })
}
