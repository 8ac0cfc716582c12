//! Experiment reports: per-replica CSV plus a JSON summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::experiments::ExperimentConfig;

/// One pass/fail comparison between an observed statistic and its bound.
#[derive(Clone, Debug, Serialize)]
pub struct GateCheck {
    pub name: String,
    pub observed: f64,
    /// `"<="` or `">="`.
    pub op: &'static str,
    pub bound: f64,
    pub passed: bool,
}

impl GateCheck {
    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> GateCheck {
        GateCheck {
            name: name.into(),
            observed,
            op: "<=",
            bound,
            passed: observed <= bound,
        }
    }

    pub fn at_least(name: impl Into<String>, observed: f64, bound: f64) -> GateCheck {
        GateCheck {
            name: name.into(),
            observed,
            op: ">=",
            bound,
            passed: observed >= bound,
        }
    }
}

/// Per-replica results, one value per report column.
#[derive(Clone, Debug, Serialize)]
pub struct ReplicaRow {
    pub replica_index: u32,
    pub seed: u64,
    pub values: Vec<f64>,
}

/// Everything one experiment run produced. The JSON form carries the
/// configuration, summary statistics, and gates; the per-replica rows go
/// to CSV only.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: ExperimentConfig,
    /// Step count the run actually used.
    pub t_used: u64,
    pub columns: Vec<String>,
    #[serde(skip)]
    pub rows: Vec<ReplicaRow>,
    pub summary: BTreeMap<String, f64>,
    /// Principal limit value the experiment compares against, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory_value: Option<f64>,
    pub gates: Vec<GateCheck>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ExperimentReport {
    /// Per-replica table: `replica,seed,<columns...>`, floats in shortest
    /// round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("replica,seed");
        for c in &self.columns {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{},{}", row.replica_index, row.seed);
            for v in &row.values {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Writes `<experiment>.csv` and `<experiment>.json` under `dir`,
    /// creating it if needed. Returns the two paths.
    pub fn write_files(&self, dir: impl AsRef<Path>) -> Result<(PathBuf, PathBuf)> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let csv_path = dir.join(format!("{}.csv", self.experiment));
        let json_path = dir.join(format!("{}.json", self.experiment));
        fs::write(&csv_path, self.to_csv())?;
        fs::write(&json_path, self.to_json())?;
        Ok((csv_path, json_path))
    }
}
