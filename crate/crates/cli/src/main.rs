use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fmm_cli::{
    cmd_bench, cmd_gen, cmd_oracle, cmd_solve, cmd_td_compute, cmd_td_convert, cmd_td_validate,
    cmd_verify, CliError, DecompSource, Family, Format, InstanceSpec, Mode, OracleBy, RunConfig,
    TdStrategy,
};

/// Feedback Morse matchings on digraphs and complexes.
///
/// Exit codes: 0 for a positive answer, 1 for a clean negative one (no
/// feasible order, verification failure, not erasible), 2 for input
/// problems, 3 when a size cap is exceeded.
#[derive(Parser)]
#[command(name = "fmm", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance and emit a JSON report
    Solve(SolveArgs),
    /// Recheck a solution report against its instance
    Verify(VerifyArgs),
    /// Run an exhaustive reference enumeration
    Oracle(OracleArgs),
    /// Tree decomposition utilities
    #[command(subcommand)]
    Td(TdCmd),
    /// Write a generated instance to disk
    Gen(GenArgs),
    /// Solve every instance in a directory and emit a CSV table
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance file: a .dg digraph or a .sc complex
    #[arg(long)]
    input: PathBuf,
    /// Input format, when the file extension does not say
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// fmm on digraphs; omm or erasibility on complexes
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Triangles that may be deleted up front (erasibility mode)
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// PACE .td file with the decomposition to use
    #[arg(long, conflicts_with = "td_strategy")]
    td: Option<PathBuf>,
    /// Decomposition construction when no --td is given
    #[arg(long, value_enum, default_value = "min-fill")]
    td_strategy: TdStrategy,
    /// Largest admissible bag size
    #[arg(long, default_value_t = dp_solver::DEFAULT_BAG_CAP)]
    bag_cap: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Solution report (JSON) to check
    #[arg(long)]
    solution: PathBuf,
    /// Write the verdict here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// What to enumerate; defaults to orders on digraphs, matchings on
    /// complexes
    #[arg(long, value_enum)]
    by: Option<OracleBy>,
    /// Override the oracle size cap
    #[arg(long)]
    cap: Option<usize>,
    /// Write the result here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TdCmd {
    /// Build a decomposition and emit it in PACE format
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// min-fill or min-degree elimination; naive-path emits the single
        /// full bag
        #[arg(long, value_enum, default_value = "min-fill")]
        td_strategy: TdStrategy,
        /// Write the .td here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a PACE .td file against the instance
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// Decomposition to check
        #[arg(long)]
        td: PathBuf,
        /// Write the summary here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the solver-ready nice form as JSON
    Convert {
        #[command(flatten)]
        input: InputArgs,
        /// PACE .td file to convert
        #[arg(long, conflicts_with = "td_strategy")]
        td: Option<PathBuf>,
        /// Decomposition construction when no --td is given
        #[arg(long, value_enum, default_value = "min-fill")]
        td_strategy: TdStrategy,
        /// Write the JSON here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Instance family
    #[arg(long, value_enum)]
    family: Family,
    /// Size parameter: vertex count, cycle length, or grid side
    #[arg(short, long)]
    n: Option<usize>,
    /// k-tree width, or triangle count of random-2-complex
    #[arg(short, long, default_value_t = 3)]
    k: usize,
    /// Edge keep probability of partial-ktree-digraph
    #[arg(long, default_value_t = 1.0)]
    arc_prob: f64,
    /// Generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance file to write; partial-ktree-digraph also writes a sibling
    /// .td under the same stem
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of .dg/.sc instances, each optionally with a sibling .td
    #[arg(long)]
    corpus: PathBuf,
    /// Largest admissible bag size
    #[arg(long, default_value_t = dp_solver::DEFAULT_BAG_CAP)]
    bag_cap: usize,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, CliError> {
    match cmd {
        Cmd::Solve(a) => {
            let cfg = run_config(&a);
            let (report, ok) = cmd_solve(&cfg)?;
            emit(&a.output, &report.to_json())?;
            Ok(exit_flag(ok))
        }
        Cmd::Verify(a) => {
            let cfg = RunConfig {
                input: a.input.input.clone(),
                format: a.input.format,
                mode: a.input.mode,
                decomposition: DecompSource::Strategy(TdStrategy::MinFill),
                budget: a.input.budget,
                bag_cap: dp_solver::DEFAULT_BAG_CAP,
                output: a.output.clone(),
            };
            let verdict = cmd_verify(&cfg, &a.solution)?;
            emit(&a.output, &verdict.to_json())?;
            Ok(exit_flag(verdict.pass))
        }
        Cmd::Oracle(a) => {
            let cfg = RunConfig {
                input: a.input.input.clone(),
                format: a.input.format,
                mode: a.input.mode,
                decomposition: DecompSource::Strategy(TdStrategy::MinFill),
                budget: a.input.budget,
                bag_cap: dp_solver::DEFAULT_BAG_CAP,
                output: a.output.clone(),
            };
            let (report, ok) = cmd_oracle(&cfg, a.by, a.cap)?;
            emit(&a.output, &report.to_json())?;
            Ok(exit_flag(ok))
        }
        Cmd::Td(TdCmd::Compute { input, td_strategy, output }) => {
            let text = cmd_td_compute(&input.input, input.format, td_strategy)?;
            emit(&output, &text)?;
            Ok(0)
        }
        Cmd::Td(TdCmd::Validate { input, td, output }) => {
            let summary = cmd_td_validate(&input.input, input.format, &td)?;
            emit(&output, &to_json(&summary))?;
            Ok(0)
        }
        Cmd::Td(TdCmd::Convert { input, td, td_strategy, output }) => {
            let source = match td {
                Some(path) => DecompSource::File(path),
                None => DecompSource::Strategy(td_strategy),
            };
            let nice = cmd_td_convert(&input.input, input.format, &source)?;
            emit(&output, &to_json(&nice))?;
            Ok(0)
        }
        Cmd::Gen(a) => {
            let spec = InstanceSpec {
                family: a.family,
                n: a.n,
                k: a.k,
                arc_prob: a.arc_prob,
                seed: a.seed,
            };
            let written = cmd_gen(&spec, &a.output)?;
            #[derive(Serialize)]
            struct GenReport {
                written: Vec<String>,
            }
            let report = GenReport {
                written: written.iter().map(|p| p.display().to_string()).collect(),
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serialization"));
            Ok(0)
        }
        Cmd::Bench(a) => {
            let (csv, warnings) = cmd_bench(&a.corpus, a.bag_cap)?;
            for warning in warnings {
                eprintln!("warning: {warning}");
            }
            emit(&a.output, &csv)?;
            Ok(0)
        }
    }
}

fn run_config(a: &SolveArgs) -> RunConfig {
    RunConfig {
        input: a.input.input.clone(),
        format: a.input.format,
        mode: a.input.mode,
        decomposition: match &a.td {
            Some(path) => DecompSource::File(path.clone()),
            None => DecompSource::Strategy(a.td_strategy),
        },
        budget: a.input.budget,
        bag_cap: a.bag_cap,
        output: a.output.clone(),
    }
}

fn exit_flag(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write '{}': {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
