use std::fmt::Write;

use coiso::report::CheckResult;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Parameters {
    pub radius: String,
    pub grid: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorInfo {
    /// Module that raised the error, e.g. `thicken`.
    pub module: String,
    /// Variant name, e.g. `NotDarboux`.
    pub name: String,
    pub message: String,
}

/// Command-specific facts worth reporting beside the checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Summary {
    Structure {
        kind: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        p: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        k: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reeb: Option<String>,
        darboux: bool,
    },
    Darboux {
        p: usize,
        k: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        time_column: Option<usize>,
        /// Rows of the basis matrix; its columns are the Darboux basis.
        basis: Vec<String>,
    },
    Embedding {
        base_dim: usize,
        fiber: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        largest_passing_radius: Option<String>,
    },
    Moser {
        transport: String,
        primitive_eta: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn from_checks(command: &str, checks: Vec<CheckResult>) -> Report {
        let status = if checks.iter().all(|c| c.passed) { Status::Pass } else { Status::Fail };
        Report {
            command: command.into(),
            status,
            checks,
            artifacts: Vec::new(),
            parameters: None,
            summary: None,
            error: None,
        }
    }

    pub fn error(command: &str, error: ErrorInfo) -> Report {
        Report {
            command: command.into(),
            status: Status::Error,
            checks: Vec::new(),
            artifacts: Vec::new(),
            parameters: None,
            summary: None,
            error: Some(error),
        }
    }

    /// Pretty JSON with a trailing newline; identical reports give identical text.
    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let _ = writeln!(out, "{}: {status}", self.command);
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  {}::{}: {}", e.module, e.name, e.message);
        }
        if let Some(p) = &self.parameters {
            let _ = write!(out, "  box radius {} grid {} samples {}", p.radius, p.grid, p.samples);
            if let Some(steps) = p.steps {
                let _ = write!(out, " steps {steps}");
            }
            out.push('\n');
        }
        if !self.checks.is_empty() {
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let _ = writeln!(out, "  {:width$}  {:6}  {:>12}  {:>10}  worst point", "check", "result", "residual", "tol");
            for c in &self.checks {
                let verdict = if c.passed { "ok" } else { "FAIL" };
                let residual = c.residual.map_or("exact".to_string(), |r| format!("{r:.3e}"));
                let tol = c.tolerance.map_or(String::new(), |t| format!("{t:.1e}"));
                let point = c.worst_point.as_ref().map_or(String::new(), |p| format!("({})", p.join(", ")));
                let _ = writeln!(out, "  {:width$}  {verdict:6}  {residual:>12}  {tol:>10}  {point}", c.name);
                if let Some(d) = &c.detail {
                    let _ = writeln!(out, "  {:width$}  {d}", "");
                }
            }
        }
        for a in &self.artifacts {
            let _ = writeln!(out, "  wrote {a}");
        }
        out
    }
}
