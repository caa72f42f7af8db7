//! Verification reports shared by the thickening and Moser checks.

use serde::Serialize;

use crate::rational::{self, Q};

/// One named assertion with either an exact verdict or a measured residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest residual over the samples, for numerical checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Point where the check failed, or where the residual was largest.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn exact(name: impl Into<String>, passed: bool) -> Self {
        CheckResult { name: name.into(), passed, residual: None, tolerance: None, worst_point: None, detail: None }
    }

    /// Passes when `residual < tolerance` and the residual is finite.
    pub fn residual(name: impl Into<String>, residual: f64, tolerance: f64, worst_point: Option<Vec<f64>>) -> Self {
        CheckResult {
            name: name.into(),
            passed: residual.is_finite() && residual < tolerance,
            residual: Some(residual),
            tolerance: Some(tolerance),
            worst_point: worst_point.map(|p| p.iter().map(|x| format!("{x:.6e}")).collect()),
            detail: None,
        }
    }

    pub fn at_point(mut self, point: &[Q]) -> Self {
        self.worst_point = Some(point.iter().map(rational::format).collect());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Outcome of a verification run: the checks plus the parameters that define
/// the certified region.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub subject: String,
    pub checks: Vec<CheckResult>,
    /// Half-width of the sampled box in the transverse coordinates.
    pub radius: String,
    pub grid: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    pub samples: usize,
    /// Largest sampled radius at which every point passed, when measured.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub largest_passing_radius: Option<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
