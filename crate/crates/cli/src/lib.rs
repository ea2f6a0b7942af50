//! Library half of the `fmm` command line tool: instance loading, the
//! solve/verify/oracle/decomposition/generation/benchmark commands, report
//! schemas, and the deterministic instance generators. The binary is a thin
//! argument-parsing shell over this, so everything here is callable from
//! tests.

mod commands;
mod config;
pub mod gen;
mod report;

pub use commands::{
    cmd_bench, cmd_gen, cmd_oracle, cmd_solve, cmd_td_compute, cmd_td_convert, cmd_td_validate,
    cmd_verify, solve_complex_erasibility, solve_complex_omm, solve_digraph, NiceNodeReport,
    NiceReport, OracleBy, TdReport,
};
pub use config::{
    infer_format, load_instance, nice_for, CliError, DecompSource, Format, Instance, Mode,
    RunConfig, TdStrategy,
};
pub use gen::{generate, Family, Generated, InstanceSpec};
pub use report::{
    render_csv, BenchRow, OracleReport, Report, VerifyReport, CSV_HEADER, STATUS_INFEASIBLE,
    STATUS_OPTIMAL,
};
