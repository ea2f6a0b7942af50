use serde::{Deserialize, Serialize};

/// The solve report. Field names and their order are part of the tool's
/// contract; downstream scripts parse them. Optional fields are omitted when
/// they do not apply (digraph runs carry no cell data, infeasible runs no
/// witness). `wall_ms` is the one field allowed to differ between otherwise
/// identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erasible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Complex runs only: label of the cell behind each solver vertex id, in
    /// canonical order, so orders and matchings are interpretable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<String>>,
    pub width: isize,
    pub bags: usize,
    pub peak_states: usize,
    pub wall_ms: u64,
}

pub const STATUS_OPTIMAL: &str = "OPTIMAL";
pub const STATUS_INFEASIBLE: &str = "INFEASIBLE";

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Outcome of checking a report against its instance: all failed checks, in
/// the order they were run. Empty means the report holds up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn from_failures(failures: Vec<String>) -> Self {
        VerifyReport { pass: failures.is_empty(), failures }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// Result of an exhaustive reference run. Mirrors the solver report where
/// the fields mean the same thing; `optimal_count` is the number of optima
/// tied at the reported value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangles: Option<Vec<usize>>,
    pub optimal_count: u64,
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// One line of benchmark output.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub width: isize,
    pub bags: usize,
    pub peak_states: usize,
    pub wall_ms: u64,
    pub value: Option<f64>,
}

pub const CSV_HEADER: &str = "instance,n,width,bags,peak_states,wall_ms,value";

/// Renders benchmark rows as CSV under the fixed header. The value column is
/// left empty for infeasible instances. Rows are emitted in the given order;
/// the caller sorts them by instance name.
pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let value = r.value.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.instance, r.n, r.width, r.bags, r.peak_states, r.wall_ms, value
        ));
    }
    out
}
