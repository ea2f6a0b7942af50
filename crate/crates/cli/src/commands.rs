use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use complex_topo::{
    hasse_diagram, solve_erasibility_on, solve_omm_on, ErasibilityInstance, RegularComplex,
};
use dp_solver::solve_fmo_with_cap;
use graph_core::{write_dg, Digraph, Matching, Status, VertexOrder, WeightMap};
use oracle::{
    brute_force_erasibility_capped, brute_force_matchings_capped, brute_force_orders_capped,
    OracleResult, DEFAULT_ERASE_CAP, DEFAULT_MATCHING_CAP, DEFAULT_ORDER_CAP,
};
use serde::Serialize;
use treedecomp::{
    heuristic_td, read_td_pace, validate_discipline, write_td_pace, NodeKind, Strategy,
    TreeDecomposition,
};

use crate::config::{
    load_instance, nice_for, CliError, DecompSource, Format, Instance, Mode, RunConfig, TdStrategy,
};
use crate::gen::{generate, Generated, InstanceSpec};
use crate::report::{
    render_csv, BenchRow, OracleReport, Report, VerifyReport, STATUS_INFEASIBLE, STATUS_OPTIMAL,
};

/// Solves the configured instance. The boolean is the exit signal: false
/// means a clean run whose answer is negative (no feasible order, or not
/// erasible within the budget), which exits 1.
pub fn cmd_solve(cfg: &RunConfig) -> Result<(Report, bool), CliError> {
    cfg.check_caps()?;
    match load_instance(&cfg.input, cfg.format)? {
        Instance::Digraph(d, w) => {
            require_digraph_mode(cfg)?;
            solve_digraph(&d, &w, &cfg.decomposition, cfg.bag_cap)
        }
        Instance::Complex(k) => match cfg.mode {
            None | Some(Mode::Omm) => {
                if cfg.budget.is_some() {
                    return Err(CliError::Input(
                        "--budget only applies to erasibility mode".into(),
                    ));
                }
                solve_complex_omm(&k, &cfg.decomposition, cfg.bag_cap)
            }
            Some(Mode::Erasibility) => {
                let Some(budget) = cfg.budget else {
                    return Err(CliError::Input("erasibility mode needs --budget".into()));
                };
                solve_complex_erasibility(k, budget, &cfg.decomposition, cfg.bag_cap)
            }
            Some(Mode::Fmm) => Err(CliError::Input("fmm mode needs a .dg digraph".into())),
        },
    }
}

fn require_digraph_mode(cfg: &RunConfig) -> Result<(), CliError> {
    match cfg.mode {
        None | Some(Mode::Fmm) => {}
        Some(_) => {
            return Err(CliError::Input("digraph inputs solve in fmm mode".into()));
        }
    }
    if cfg.budget.is_some() {
        return Err(CliError::Input("--budget only applies to erasibility mode".into()));
    }
    Ok(())
}

pub fn solve_digraph(
    d: &Digraph,
    w: &WeightMap,
    source: &DecompSource,
    bag_cap: usize,
) -> Result<(Report, bool), CliError> {
    let ntd = nice_for(d, source)?;
    let started = Instant::now();
    let (result, stats) = solve_fmo_with_cap(d, w, &ntd, bag_cap)?;
    let wall_ms = started.elapsed().as_millis() as u64;
    let feasible = result.status == Status::Optimal;
    let report = Report {
        status: if feasible { STATUS_OPTIMAL } else { STATUS_INFEASIBLE }.into(),
        value: result.value,
        order: result.order.map(|o| o.seq().to_vec()),
        matching: result.matching.map(|m| m.arcs().to_vec()),
        critical: None,
        witness: None,
        erasible: None,
        budget: None,
        cells: None,
        width: ntd.width(),
        bags: ntd.len(),
        peak_states: stats.peak_states,
        wall_ms,
    };
    Ok((report, feasible))
}

/// The order matching a gradient field: reversing the pairs leaves a dag,
/// and the smallest topological order of that dag has the pairs as exactly
/// its backward edges.
fn field_witness(hd: &Digraph, pairs: &[(usize, usize)]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let m = Matching::new(pairs.to_vec()).expect("gradient pairs form a matching");
    let order = hd.order_of_matching(&m).expect("a gradient field reverses to a dag");
    (order.seq().to_vec(), m.arcs().to_vec())
}

fn cell_labels(k: &RegularComplex) -> Vec<String> {
    k.cells().iter().map(|c| c.label().to_string()).collect()
}

pub fn solve_complex_omm(
    k: &RegularComplex,
    source: &DecompSource,
    bag_cap: usize,
) -> Result<(Report, bool), CliError> {
    let (hd, w) = hasse_diagram(k);
    let ntd = nice_for(&hd, source)?;
    let started = Instant::now();
    let sol = solve_omm_on(k, &w, &ntd, bag_cap)?;
    let wall_ms = started.elapsed().as_millis() as u64;
    let (order, matching) = field_witness(&hd, sol.field.pairs());
    let report = Report {
        status: STATUS_OPTIMAL.into(),
        value: Some(sol.value),
        order: Some(order),
        matching: Some(matching),
        critical: Some(sol.field.critical().to_vec()),
        witness: None,
        erasible: None,
        budget: None,
        cells: Some(cell_labels(k)),
        width: ntd.width(),
        bags: ntd.len(),
        peak_states: sol.stats.peak_states,
        wall_ms,
    };
    Ok((report, true))
}

pub fn solve_complex_erasibility(
    k: RegularComplex,
    budget: u64,
    source: &DecompSource,
    bag_cap: usize,
) -> Result<(Report, bool), CliError> {
    let (hd, _) = hasse_diagram(&k);
    let cells = cell_labels(&k);
    let ntd = nice_for(&hd, source)?;
    let inst = ErasibilityInstance::new(k, budget)?;
    let started = Instant::now();
    let ans = solve_erasibility_on(&inst, &ntd, bag_cap)?;
    let wall_ms = started.elapsed().as_millis() as u64;
    let (order, matching) = field_witness(&hd, ans.field.pairs());
    let report = Report {
        status: STATUS_OPTIMAL.into(),
        value: Some(ans.min_critical_triangles as f64),
        order: Some(order),
        matching: Some(matching),
        critical: Some(ans.field.critical().to_vec()),
        witness: Some(ans.witness.clone()),
        erasible: Some(ans.erasible),
        budget: Some(budget),
        cells: Some(cells),
        width: ntd.width(),
        bags: ntd.len(),
        peak_states: ans.stats.peak_states,
        wall_ms,
    };
    Ok((report, ans.erasible))
}

/// Re-derives everything a report claims from the instance itself. Shape
/// problems (unknown vertices, missing fields) are input errors; claims that
/// do not hold up are collected as failures.
pub fn cmd_verify(cfg: &RunConfig, solution: &Path) -> Result<VerifyReport, CliError> {
    let text = fs::read_to_string(solution)
        .map_err(|e| CliError::Input(format!("cannot read '{}': {e}", solution.display())))?;
    let report = Report::from_json(&text)
        .map_err(|e| CliError::Input(format!("bad solution JSON: {e}")))?;

    match load_instance(&cfg.input, cfg.format)? {
        Instance::Digraph(d, w) => {
            require_digraph_mode(cfg)?;
            check_report(&d, &w, &report, None, None)
        }
        Instance::Complex(k) => {
            let (hd, file_weights) = hasse_diagram(&k);
            let triangles: Vec<usize> = (0..k.len()).filter(|&c| k.cell(c).dim() == 2).collect();
            match cfg.mode {
                None | Some(Mode::Omm) => check_report(&hd, &file_weights, &report, None, None),
                Some(Mode::Erasibility) => {
                    let Some(budget) = report.budget.or(cfg.budget) else {
                        return Err(CliError::Input(
                            "erasibility verification needs a budget, in the report or via --budget"
                                .into(),
                        ));
                    };
                    let w = WeightMap::new(
                        (0..k.len()).map(|c| if k.cell(c).dim() == 2 { 1.0 } else { 0.0 }).collect(),
                    )
                    .expect("indicator weights are finite");
                    check_report(&hd, &w, &report, Some(budget), Some(&triangles))
                }
                Some(Mode::Fmm) => Err(CliError::Input("fmm mode needs a .dg digraph".into())),
            }
        }
    }
}

fn check_report(
    d: &Digraph,
    w: &WeightMap,
    report: &Report,
    budget: Option<u64>,
    triangles: Option<&[usize]>,
) -> Result<VerifyReport, CliError> {
    if report.status == STATUS_INFEASIBLE {
        return Err(CliError::Input(
            "the report claims infeasibility; there is no solution to check".into(),
        ));
    }
    if report.status != STATUS_OPTIMAL {
        return Err(CliError::Input(format!("unknown status '{}'", report.status)));
    }
    let Some(arcs) = &report.matching else {
        return Err(CliError::Input("the report lists no matching".into()));
    };
    let n = d.n();
    for &(u, v) in arcs {
        if u >= n || v >= n {
            return Err(CliError::Input(format!(
                "matching arc ({u}, {v}) references an unknown vertex"
            )));
        }
    }
    if let Some(seq) = &report.order {
        if let Some(&v) = seq.iter().find(|&&v| v >= n) {
            return Err(CliError::Input(format!("the order references unknown vertex {v}")));
        }
    }

    let mut failures = Vec::new();
    let absent: Vec<(usize, usize)> =
        arcs.iter().copied().filter(|&(u, v)| !d.has_arc(u, v)).collect();
    for (u, v) in &absent {
        failures.push(format!("arc ({u}, {v}) is not in the graph"));
    }
    if !absent.is_empty() {
        return Ok(VerifyReport::from_failures(failures));
    }

    if !d.is_matching(arcs) {
        failures.push("not a matching: two arcs share a vertex".into());
        return Ok(VerifyReport::from_failures(failures));
    }
    let m = Matching::new(arcs.clone()).expect("checked matching");

    if !d.is_feedback_morse_matching(arcs) {
        failures.push("reversing the matching leaves a cycle".into());
    }

    let recomputed = d.objective(w, &m);
    match report.value {
        None => failures.push("the report lists no value".into()),
        Some(claim) if claim != recomputed => {
            failures.push(format!("objective mismatch (recomputed {recomputed}, reported {claim})"))
        }
        Some(_) => {}
    }

    if let Some(seq) = &report.order {
        match VertexOrder::new(seq.clone()) {
            Err(_) => failures.push("the order is not a permutation of the vertices".into()),
            Ok(order) => {
                if d.backward_edges(&order) != m.arcs() {
                    failures.push("the backward edges of the order differ from the matching".into());
                }
            }
        }
    }

    let unmatched = d.unmatched_vertices(&m);
    if let Some(critical) = &report.critical {
        if critical != &unmatched {
            failures.push("the critical cells differ from the unmatched vertices".into());
        }
    }
    if let Some(witness) = &report.witness {
        if let Some(triangles) = triangles {
            let expect: Vec<usize> =
                unmatched.iter().copied().filter(|v| triangles.contains(v)).collect();
            if witness != &expect {
                failures.push("the witness differs from the unmatched triangles".into());
            }
        }
    }
    if let Some(claim) = report.erasible {
        match budget {
            None => {
                return Err(CliError::Input(
                    "the report claims erasibility but no budget is known".into(),
                ))
            }
            Some(b) => {
                if claim != (recomputed <= b as f64) {
                    failures.push(format!(
                        "the erasibility claim contradicts the recomputed count {recomputed} \
                         against budget {b}"
                    ));
                }
            }
        }
    }

    Ok(VerifyReport::from_failures(failures))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleBy {
    /// Enumerate all vertex orders
    Orders,
    /// Enumerate all matchings
    Matchings,
}

/// Runs the exhaustive reference solver on the instance. Digraphs enumerate
/// orders unless --by picks matchings; complexes enumerate matchings of the
/// Hasse diagram, and erasibility mode enumerates deletion sets.
pub fn cmd_oracle(
    cfg: &RunConfig,
    by: Option<OracleBy>,
    cap: Option<usize>,
) -> Result<(OracleReport, bool), CliError> {
    let result = match load_instance(&cfg.input, cfg.format)? {
        Instance::Digraph(d, w) => {
            require_digraph_mode(cfg)?;
            run_enumeration(&d, &w, by.unwrap_or(OracleBy::Orders), cap)?
        }
        Instance::Complex(k) => match cfg.mode {
            None | Some(Mode::Omm) => {
                let (hd, w) = hasse_diagram(&k);
                run_enumeration(&hd, &w, by.unwrap_or(OracleBy::Matchings), cap)?
            }
            Some(Mode::Erasibility) => {
                let Some(budget) = cfg.budget else {
                    return Err(CliError::Input("erasibility mode needs --budget".into()));
                };
                brute_force_erasibility_capped(&k, budget, cap.unwrap_or(DEFAULT_ERASE_CAP))?
            }
            Some(Mode::Fmm) => return Err(CliError::Input("fmm mode needs a .dg digraph".into())),
        },
    };
    let feasible = result.is_feasible();
    let report = OracleReport {
        feasible,
        value: result.value,
        order: result.order.map(|o| o.seq().to_vec()),
        matching: result.matching.map(|m| m.arcs().to_vec()),
        triangles: result.triangles,
        optimal_count: result.optimal_count,
    };
    Ok((report, feasible))
}

fn run_enumeration(
    d: &Digraph,
    w: &WeightMap,
    by: OracleBy,
    cap: Option<usize>,
) -> Result<OracleResult, CliError> {
    Ok(match by {
        OracleBy::Orders => brute_force_orders_capped(d, w, cap.unwrap_or(DEFAULT_ORDER_CAP))?,
        OracleBy::Matchings => {
            brute_force_matchings_capped(d, w, cap.unwrap_or(DEFAULT_MATCHING_CAP))?
        }
    })
}

/// The digraph a decomposition command works on: the input graph itself, or
/// the Hasse diagram of a complex input.
fn digraph_view(instance: Instance) -> Digraph {
    match instance {
        Instance::Digraph(d, _) => d,
        Instance::Complex(k) => hasse_diagram(&k).0,
    }
}

pub fn cmd_td_compute(
    input: &Path,
    format: Option<Format>,
    strategy: TdStrategy,
) -> Result<String, CliError> {
    let d = digraph_view(load_instance(input, format)?);
    let td = match strategy {
        TdStrategy::MinFill => heuristic_td(&d, Strategy::MinFill),
        TdStrategy::MinDegree => heuristic_td(&d, Strategy::MinDegree),
        // The naive path keeps everything in scope at once; as a plain
        // decomposition that is the single full bag.
        TdStrategy::NaivePath => TreeDecomposition::new(vec![(0..d.n()).collect()], vec![]),
    };
    Ok(write_td_pace(&td, d.n()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TdReport {
    pub valid: bool,
    pub width: isize,
    pub bags: usize,
}

pub fn cmd_td_validate(
    input: &Path,
    format: Option<Format>,
    td_path: &Path,
) -> Result<TdReport, CliError> {
    let d = digraph_view(load_instance(input, format)?);
    let text = fs::read_to_string(td_path)
        .map_err(|e| CliError::Input(format!("cannot read '{}': {e}", td_path.display())))?;
    let td = read_td_pace(&text, &d)?;
    Ok(TdReport { valid: true, width: td.width(), bags: td.bags().len() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NiceNodeReport {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<(usize, usize)>,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NiceReport {
    pub width: isize,
    pub root: usize,
    pub nodes: Vec<NiceNodeReport>,
}

/// Converts the decomposition source into solver-ready nice form and emits
/// it as JSON, one node per entry in index order.
pub fn cmd_td_convert(
    input: &Path,
    format: Option<Format>,
    source: &DecompSource,
) -> Result<NiceReport, CliError> {
    let d = digraph_view(load_instance(input, format)?);
    let ntd = nice_for(&d, source)?;
    validate_discipline(&ntd, &d).expect("conversion output obeys the solver discipline");
    let nodes = ntd
        .nodes()
        .iter()
        .map(|node| {
            let (kind, vertex, arc) = match node.kind {
                NodeKind::Leaf => ("leaf", None, None),
                NodeKind::IntroduceVertex(v) => ("introduce-vertex", Some(v), None),
                NodeKind::IntroduceEdge(t, h) => ("introduce-edge", None, Some((t, h))),
                NodeKind::ForgetVertex(v) => ("forget-vertex", Some(v), None),
                NodeKind::Join => ("join", None, None),
            };
            NiceNodeReport {
                kind: kind.to_string(),
                vertex,
                arc,
                bag: node.bag.clone(),
                children: node.children.clone(),
            }
        })
        .collect();
    Ok(NiceReport { width: ntd.width(), root: ntd.root(), nodes })
}

/// Writes the generated instance; the partial k-tree family also writes its
/// decomposition next to it, under the same stem with extension `.td`.
/// Returns the written paths.
pub fn cmd_gen(spec: &InstanceSpec, output: &Path) -> Result<Vec<PathBuf>, CliError> {
    let write = |path: &Path, text: String| {
        fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write '{}': {e}", path.display())))
    };
    let mut written = Vec::new();
    match generate(spec)? {
        Generated::Digraph { graph, weights, td } => {
            write(output, write_dg(&graph, &weights))?;
            written.push(output.to_path_buf());
            if let Some(td) = td {
                let td_path = output.with_extension("td");
                write(&td_path, write_td_pace(&td, graph.n()))?;
                written.push(td_path);
            }
        }
        Generated::Complex(k) => {
            write(output, complex_topo::write_sc(&k))?;
            written.push(output.to_path_buf());
        }
    }
    Ok(written)
}

/// Solves every `.dg` and `.sc` file in the directory, using a sibling
/// `.td` (same stem) when present and a min-fill decomposition otherwise.
/// Unreadable or oversized entries become warnings, not failures. Returns
/// the CSV text, rows sorted by instance name, plus the warnings.
pub fn cmd_bench(dir: &Path, bag_cap: usize) -> Result<(String, Vec<String>), CliError> {
    let entries = fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("cannot read '{}': {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| matches!(p.extension().and_then(|x| x.to_str()), Some("dg") | Some("sc")))
        .collect();
    files.sort();

    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for path in files {
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        match bench_one(&path, bag_cap) {
            Ok(row) => rows.push(row),
            Err(e) => warnings.push(format!("skipping {name}: {e}")),
        }
    }
    rows.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok((render_csv(&rows), warnings))
}

fn bench_one(path: &Path, bag_cap: usize) -> Result<BenchRow, CliError> {
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let sibling = path.with_extension("td");
    let source = if sibling.is_file() {
        DecompSource::File(sibling)
    } else {
        DecompSource::Strategy(TdStrategy::MinFill)
    };
    let (n, (report, _)) = match load_instance(path, None)? {
        Instance::Digraph(d, w) => (d.n(), solve_digraph(&d, &w, &source, bag_cap)?),
        Instance::Complex(k) => (k.len(), solve_complex_omm(&k, &source, bag_cap)?),
    };
    Ok(BenchRow {
        instance: name,
        n,
        width: report.width,
        bags: report.bags,
        peak_states: report.peak_states,
        wall_ms: report.wall_ms,
        value: report.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
        let path = dir.path().join(name);
        let mut f = fs::File::create(&path).unwrap();
        f.write_all(text.as_bytes()).unwrap();
        path
    }

    fn config(input: PathBuf) -> RunConfig {
        RunConfig {
            input,
            format: None,
            mode: None,
            decomposition: DecompSource::Strategy(TdStrategy::MinFill),
            budget: None,
            bag_cap: dp_solver::DEFAULT_BAG_CAP,
            output: None,
        }
    }

    const THREE_CYCLE: &str = "p fmm 3 3\nv a\nv b\nv c\na a b\na b c\na c a\n";
    const TWO_CYCLE: &str = "p fmm 2 2\nv a\nv b\na a b\na b a\n";
    const BIDIRECTED_TRIANGLE: &str =
        "p fmm 3 6\nv a\nv b\nv c\na a b\na b a\na a c\na c a\na b c\na c b\n";

    #[test]
    fn solve_reports_the_three_cycle_optimum() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "cycle.dg", THREE_CYCLE);
        let (report, ok) = cmd_solve(&config(input)).unwrap();
        assert!(ok);
        assert_eq!(report.status, STATUS_OPTIMAL);
        assert_eq!(report.value, Some(1.0));
        assert_eq!(report.matching.as_ref().unwrap().len(), 1);
        assert!(report.cells.is_none());
    }

    #[test]
    fn solve_flags_the_bidirected_triangle_as_infeasible() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "bi.dg", BIDIRECTED_TRIANGLE);
        let (report, ok) = cmd_solve(&config(input)).unwrap();
        assert!(!ok);
        assert_eq!(report.status, STATUS_INFEASIBLE);
        assert_eq!(report.value, None);
    }

    #[test]
    fn solve_reads_complexes_and_lists_cells() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "tri.sc", "p sc\ns a b c\n");
        let (report, ok) = cmd_solve(&config(input)).unwrap();
        assert!(ok);
        assert_eq!(report.value, Some(1.0));
        assert_eq!(report.critical.as_ref().unwrap().len(), 1);
        let cells = report.cells.as_ref().unwrap();
        assert_eq!(cells.len(), 7);
        assert_eq!(cells[6], "a,b,c");
        let matching = report.matching.as_ref().unwrap();
        let order = VertexOrder::new(report.order.clone().unwrap()).unwrap();
        let (hd, _) = hasse_diagram(&crate::gen::triangle_closure());
        assert_eq!(hd.backward_edges(&order), *matching);
    }

    #[test]
    fn erasibility_mode_requires_and_uses_the_budget() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "sphere.sc", "p sc\ns a b c\ns a b d\ns a c d\ns b c d\n");
        let mut cfg = config(input);
        cfg.mode = Some(Mode::Erasibility);
        assert!(matches!(cmd_solve(&cfg), Err(CliError::Input(_))));

        cfg.budget = Some(0);
        let (report, ok) = cmd_solve(&cfg).unwrap();
        assert!(!ok);
        assert_eq!(report.erasible, Some(false));
        assert_eq!(report.value, Some(1.0));

        cfg.budget = Some(1);
        let (report, ok) = cmd_solve(&cfg).unwrap();
        assert!(ok);
        assert_eq!(report.erasible, Some(true));
        assert_eq!(report.witness.as_ref().unwrap().len(), 1);
    }

    #[test]
    fn mode_and_format_mismatches_are_input_errors() {
        let dir = tempfile::tempdir().unwrap();
        let dg = write_temp(&dir, "x.dg", THREE_CYCLE);
        let sc = write_temp(&dir, "x.sc", "p sc\ns a b c\n");
        let mut cfg = config(dg);
        cfg.mode = Some(Mode::Omm);
        assert!(matches!(cmd_solve(&cfg), Err(CliError::Input(_))));
        let mut cfg = config(sc);
        cfg.mode = Some(Mode::Fmm);
        assert!(matches!(cmd_solve(&cfg), Err(CliError::Input(_))));
    }

    #[test]
    fn naive_path_beyond_the_cap_is_a_cap_error() {
        let dir = tempfile::tempdir().unwrap();
        let mut text = String::from("p fmm 15 0\n");
        for i in 0..15 {
            text.push_str(&format!("v n{i}\n"));
        }
        let input = write_temp(&dir, "wide.dg", &text);
        let mut cfg = config(input);
        cfg.decomposition = DecompSource::Strategy(TdStrategy::NaivePath);
        match cmd_solve(&cfg) {
            Err(e @ CliError::Cap(_)) => assert_eq!(e.exit_code(), 3),
            other => panic!("expected a cap error, got {other:?}"),
        }
    }

    #[test]
    fn verify_accepts_the_solvers_own_output() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "cycle.dg", THREE_CYCLE);
        let cfg = config(input);
        let (report, _) = cmd_solve(&cfg).unwrap();
        let solution = write_temp(&dir, "sol.json", &report.to_json());
        let verdict = cmd_verify(&cfg, &solution).unwrap();
        assert!(verdict.pass, "failures: {:?}", verdict.failures);
    }

    #[test]
    fn verify_catches_a_shared_vertex() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "cycle.dg", THREE_CYCLE);
        let cfg = config(input);
        let (mut report, _) = cmd_solve(&cfg).unwrap();
        report.matching = Some(vec![(0, 1), (1, 2)]);
        report.order = None;
        report.critical = None;
        let solution = write_temp(&dir, "sol.json", &report.to_json());
        let verdict = cmd_verify(&cfg, &solution).unwrap();
        assert!(!verdict.pass);
        assert!(verdict.failures.iter().any(|f| f.contains("not a matching")));
    }

    #[test]
    fn verify_recomputes_the_objective() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "two.dg", TWO_CYCLE);
        let cfg = config(input);
        let report = Report {
            status: STATUS_OPTIMAL.into(),
            value: Some(0.0),
            order: None,
            matching: Some(vec![]),
            critical: None,
            witness: None,
            erasible: None,
            budget: None,
            cells: None,
            width: 1,
            bags: 1,
            peak_states: 1,
            wall_ms: 0,
        };
        let solution = write_temp(&dir, "claim.json", &report.to_json());
        let verdict = cmd_verify(&cfg, &solution).unwrap();
        assert!(!verdict.pass);
        assert!(verdict.failures.iter().any(|f| f.contains("objective mismatch (recomputed 2")));
        assert!(verdict.failures.iter().any(|f| f.contains("leaves a cycle")));
    }

    #[test]
    fn verify_rejects_unknown_vertices() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "cycle.dg", THREE_CYCLE);
        let cfg = config(input);
        let (mut report, _) = cmd_solve(&cfg).unwrap();
        report.matching = Some(vec![(0, 9)]);
        let solution = write_temp(&dir, "sol.json", &report.to_json());
        assert!(matches!(cmd_verify(&cfg, &solution), Err(CliError::Input(_))));
    }

    #[test]
    fn verify_round_trips_complex_reports() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "sphere.sc", "p sc\ns a b c\ns a b d\ns a c d\ns b c d\n");
        let mut cfg = config(input);
        cfg.mode = Some(Mode::Erasibility);
        cfg.budget = Some(1);
        let (report, _) = cmd_solve(&cfg).unwrap();
        let solution = write_temp(&dir, "sol.json", &report.to_json());
        let verdict = cmd_verify(&cfg, &solution).unwrap();
        assert!(verdict.pass, "failures: {:?}", verdict.failures);

        let omm_input = write_temp(&dir, "tri.sc", "p sc\ns a b c\n");
        let cfg = config(omm_input);
        let (report, _) = cmd_solve(&cfg).unwrap();
        let solution = write_temp(&dir, "omm.json", &report.to_json());
        let verdict = cmd_verify(&cfg, &solution).unwrap();
        assert!(verdict.pass, "failures: {:?}", verdict.failures);
    }

    #[test]
    fn oracle_matches_the_solver_on_the_three_cycle() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "cycle.dg", THREE_CYCLE);
        let cfg = config(input);
        let (by_orders, ok) = cmd_oracle(&cfg, None, None).unwrap();
        assert!(ok);
        assert_eq!(by_orders.value, Some(1.0));
        assert_eq!(by_orders.optimal_count, 3);
        let (by_matchings, _) = cmd_oracle(&cfg, Some(OracleBy::Matchings), None).unwrap();
        assert_eq!(by_matchings.value, Some(1.0));
    }

    #[test]
    fn oracle_reports_infeasibility_and_caps() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "bi.dg", BIDIRECTED_TRIANGLE);
        let cfg = config(input);
        let (report, ok) = cmd_oracle(&cfg, None, None).unwrap();
        assert!(!ok && !report.feasible);
        assert_eq!(report.optimal_count, 0);
        match cmd_oracle(&cfg, None, Some(2)) {
            Err(e @ CliError::Cap(_)) => assert_eq!(e.exit_code(), 3),
            other => panic!("expected a cap error, got {other:?}"),
        }
    }

    #[test]
    fn td_commands_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "cycle.dg", THREE_CYCLE);
        let pace = cmd_td_compute(&input, None, TdStrategy::MinFill).unwrap();
        let td_path = write_temp(&dir, "cycle.td", &pace);
        let summary = cmd_td_validate(&input, None, &td_path).unwrap();
        assert!(summary.valid);
        assert_eq!(summary.width, 2);

        let nice = cmd_td_convert(&input, None, &DecompSource::File(td_path)).unwrap();
        assert_eq!(nice.width, 2);
        assert!(nice.nodes.iter().any(|n| n.kind == "introduce-edge"));
        assert_eq!(nice.nodes[nice.root].bag, Vec::<usize>::new());

        let bad = write_temp(&dir, "bad.td", "s td 1 1 3\nb 1 1\n");
        assert!(matches!(cmd_td_validate(&input, None, &bad), Err(CliError::Input(_))));
    }

    #[test]
    fn gen_writes_instances_and_their_decompositions() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("ktree.dg");
        let spec = InstanceSpec {
            family: crate::gen::Family::PartialKtreeDigraph,
            n: Some(20),
            k: 3,
            arc_prob: 1.0,
            seed: 7,
        };
        let written = cmd_gen(&spec, &out).unwrap();
        assert_eq!(written.len(), 2);
        assert!(written[1].ends_with("ktree.td"));
        let summary = cmd_td_validate(&out, None, &written[1]).unwrap();
        assert!(summary.valid && summary.width <= 3);

        // Dense random orientations are often infeasible; either answer is a
        // correct solve of the generated file.
        let (report, ok) = cmd_solve(&config(out)).unwrap();
        assert_eq!(ok, report.status == STATUS_OPTIMAL);
        assert_eq!(report.value.is_some(), ok);
        assert!(report.width <= 3);
    }

    #[test]
    fn bench_sorts_rows_and_warns_on_bad_entries() {
        let dir = tempfile::tempdir().unwrap();
        write_temp(&dir, "b.dg", THREE_CYCLE);
        write_temp(&dir, "a.sc", "p sc\ns a b c\n");
        write_temp(&dir, "broken.dg", "not an instance\n");
        write_temp(&dir, "notes.txt", "ignored\n");
        let (csv, warnings) = cmd_bench(dir.path(), dp_solver::DEFAULT_BAG_CAP).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], crate::report::CSV_HEADER);
        assert!(lines[1].starts_with("a.sc,7,"));
        assert!(lines[2].starts_with("b.dg,3,"));
        assert!(lines[1].ends_with(",1") && lines[2].ends_with(",1"));
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("broken.dg"));
    }

    #[test]
    fn bench_prefers_the_sibling_decomposition() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_temp(&dir, "cycle.dg", THREE_CYCLE);
        let pace = cmd_td_compute(&input, None, TdStrategy::NaivePath).unwrap();
        write_temp(&dir, "cycle.td", &pace);
        let (csv, warnings) = cmd_bench(dir.path(), dp_solver::DEFAULT_BAG_CAP).unwrap();
        assert!(warnings.is_empty());
        // the single full bag yields the naive-path node count 2n + m + 1
        assert!(csv.lines().nth(1).unwrap().starts_with("cycle.dg,3,2,10,"));
    }

    #[test]
    fn bench_on_an_empty_directory_is_just_the_header() {
        let dir = tempfile::tempdir().unwrap();
        let (csv, warnings) = cmd_bench(dir.path(), dp_solver::DEFAULT_BAG_CAP).unwrap();
        assert_eq!(csv, format!("{}\n", crate::report::CSV_HEADER));
        assert!(warnings.is_empty());
    }
}
