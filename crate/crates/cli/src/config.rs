use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use complex_topo::{read_sc, ComplexError, RegularComplex, ScError};
use dp_solver::{SolveError, ENCODING_LIMIT};
use graph_core::{read_dg, DgError, Digraph, WeightMap};
use oracle::OracleError;
use treedecomp::{
    heuristic_td, naive_path_decomposition, read_td_pace, to_nice, NiceTreeDecomposition,
    PaceError, Strategy, TdViolation,
};

/// Failures that end a run early, split by the exit code they map to:
/// input trouble exits 2, an exceeded size cap exits 3. An infeasible or
/// negative answer is not an error; commands report it through their result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Cap(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<DgError> for CliError {
    fn from(e: DgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ScError> for CliError {
    fn from(e: ScError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PaceError> for CliError {
    fn from(e: PaceError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TdViolation> for CliError {
    fn from(e: TdViolation) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BagCapExceeded { bag, cap } => CliError::Cap(format!(
                "decomposition has a bag of {bag} vertices (width {}), over the cap {cap}",
                bag as isize - 1
            )),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Solve(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Cap(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dg,
    Sc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fmm,
    Omm,
    Erasibility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TdStrategy {
    MinFill,
    MinDegree,
    NaivePath,
}

/// Where the solver's decomposition comes from: a PACE `.td` file or one of
/// the built-in constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompSource {
    File(PathBuf),
    Strategy(TdStrategy),
}

/// One solver or verifier invocation, resolved from the command line.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: Option<Format>,
    pub mode: Option<Mode>,
    pub decomposition: DecompSource,
    pub budget: Option<u64>,
    pub bag_cap: usize,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn check_caps(&self) -> Result<(), CliError> {
        if self.bag_cap == 0 || self.bag_cap > ENCODING_LIMIT {
            return Err(CliError::Input(format!(
                "bag cap must be between 1 and {ENCODING_LIMIT}, got {}",
                self.bag_cap
            )));
        }
        Ok(())
    }
}

/// A loaded instance file, ready to solve.
#[derive(Debug, Clone)]
pub enum Instance {
    Digraph(Digraph, WeightMap),
    Complex(RegularComplex),
}

pub fn infer_format(path: &Path, explicit: Option<Format>) -> Result<Format, CliError> {
    if let Some(f) = explicit {
        return Ok(f);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("dg") => Ok(Format::Dg),
        Some("sc") => Ok(Format::Sc),
        _ => Err(CliError::Input(format!(
            "cannot infer the format of '{}'; pass --format dg or --format sc",
            path.display()
        ))),
    }
}

pub fn load_instance(path: &Path, format: Option<Format>) -> Result<Instance, CliError> {
    let format = infer_format(path, format)?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read '{}': {e}", path.display())))?;
    match format {
        Format::Dg => {
            let (d, w) = read_dg(&text)?;
            Ok(Instance::Digraph(d, w))
        }
        Format::Sc => Ok(Instance::Complex(read_sc(&text)?)),
    }
}

/// Resolves the configured decomposition source against a concrete digraph
/// (the input graph, or the Hasse diagram in complex modes). A `.td` file is
/// validated against the graph before conversion to nice form.
pub fn nice_for(d: &Digraph, source: &DecompSource) -> Result<NiceTreeDecomposition, CliError> {
    match source {
        DecompSource::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read '{}': {e}", path.display())))?;
            let td = read_td_pace(&text, d)?;
            Ok(to_nice(&td, d)?)
        }
        DecompSource::Strategy(TdStrategy::NaivePath) => Ok(naive_path_decomposition(d)),
        DecompSource::Strategy(s) => {
            let strategy = match s {
                TdStrategy::MinFill => Strategy::MinFill,
                TdStrategy::MinDegree => Strategy::MinDegree,
                TdStrategy::NaivePath => unreachable!("handled above"),
            };
            let td = heuristic_td(d, strategy);
            Ok(to_nice(&td, d).expect("heuristic decompositions are valid"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_inference_follows_the_extension() {
        assert_eq!(infer_format(Path::new("x.dg"), None).unwrap(), Format::Dg);
        assert_eq!(infer_format(Path::new("x.sc"), None).unwrap(), Format::Sc);
        assert_eq!(infer_format(Path::new("x.txt"), Some(Format::Dg)).unwrap(), Format::Dg);
        assert!(matches!(infer_format(Path::new("x.txt"), None), Err(CliError::Input(_))));
    }

    #[test]
    fn exit_codes_split_input_from_cap() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::Cap("x".into()).exit_code(), 3);
        let e: CliError = SolveError::BagCapExceeded { bag: 15, cap: 14 }.into();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("width 14"));
        let e: CliError = SolveError::WeightMismatch { have: 1, need: 2 }.into();
        assert_eq!(e.exit_code(), 2);
        let e: CliError = OracleError::CapExceeded { what: "vertex", size: 11, cap: 10 }.into();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn bag_cap_bounds_are_enforced() {
        let cfg = RunConfig {
            input: PathBuf::from("x.dg"),
            format: None,
            mode: None,
            decomposition: DecompSource::Strategy(TdStrategy::MinFill),
            budget: None,
            bag_cap: 17,
            output: None,
        };
        assert!(cfg.check_caps().is_err());
        assert!(RunConfig { bag_cap: 14, ..cfg }.check_caps().is_ok());
    }
}
