//! Relative Poincaré primitives and the two-stage Moser flow.
//!
//! The first stage deforms `η_0` into `η_1` along the flow of
//! `Z_s = −φ N_s`, where `dφ = η_1 − η_0` and `N_s` interpolates the Reeb
//! fields. The second stage deforms `Ω_0` into `Ω_1` (with `η` and `ξ` shared)
//! along `Y_s = ♭_s^{-1}(−φ)` with `dφ = Ω_1 − Ω_0` and `φ(ξ) = 0`. Both flows are
//! integrated numerically and certified by pullback residuals at sample points.

mod flow;
pub mod numeric;
mod primitive;
mod reeb;
mod stages;

use thiserror::Error;

use crate::coslinalg::CoslinalgError;
use crate::forms::{Chart, FormsError};
use crate::rational::{self, Q};

pub use flow::{
    flow_jacobian, flow_point, integrate_flow, integrate_flow_with, FlowOptions, FlowResult, FnField, PolyTimeField,
    TimeDependentField,
};
pub use primitive::{is_primitive, numeric_primitive, poincare_primitive, pullback_vanishes, reeb_primitive};
pub use reeb::{InterpolationValue, ReebField, ReebInterpolation};
pub use stages::{
    eta_stage, omega_stage, verify_equivalence, EtaField, EtaStage, OmegaStage, Transport, VerifiedEquivalence,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoserError {
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Linear(#[from] CoslinalgError),
    #[error("forms live on different charts")]
    ChartMismatch,
    #[error("unknown coordinate {0:?} in the submanifold")]
    UnknownLabel(String),
    #[error("the time coordinate {0:?} cannot be a vanishing coordinate")]
    TimeInVanishingSet(String),
    #[error("primitives need a form of positive degree")]
    DegreeZero,
    #[error("form is not closed")]
    NotClosed,
    #[error("form does not vanish on the submanifold")]
    NonvanishingOnM,
    #[error("the Reeb field is not a single coordinate field")]
    XiNotCoordinate,
    #[error("the form does not annihilate the Reeb field")]
    ReebContractionNonzero,
    #[error("the structures do not share the Reeb field and eta required by the omega stage")]
    ReebMismatch,
    #[error("structure {which} is not cosymplectic at {point:?}")]
    NotCosymplectic { which: String, point: Vec<String> },
    #[error("eta_s(xi_s) = {value} <= 0 at point {point:?}, s = {s}")]
    DomainViolation { point: Vec<f64>, s: f64, value: f64 },
    #[error("the path (Omega_s, eta) degenerates at point {point:?}, s = {s}")]
    NotCosymplecticOnPath { point: Vec<f64>, s: f64 },
    #[error("check {check} exceeded its tolerance: residual {residual:e} at {point:?}")]
    ToleranceExceeded { check: String, residual: f64, point: Vec<String> },
}

/// `M` as the common zero locus of some chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmanifoldSpec {
    chart: Chart,
    vanishing: Vec<usize>,
}

impl SubmanifoldSpec {
    pub fn new<S: AsRef<str>>(chart: &Chart, labels: &[S]) -> Result<Self, MoserError> {
        let mut vanishing = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            let i = chart.index_of(l).ok_or_else(|| MoserError::UnknownLabel(l.to_string()))?;
            if chart.time_index() == Some(i) {
                return Err(MoserError::TimeInVanishingSet(l.to_string()));
            }
            if !vanishing.contains(&i) {
                vanishing.push(i);
            }
        }
        vanishing.sort_unstable();
        Ok(SubmanifoldSpec { chart: chart.clone(), vanishing })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Chart positions of the vanishing coordinates, ascending.
    pub fn vanishing(&self) -> &[usize] {
        &self.vanishing
    }

    pub fn labels(&self) -> Vec<&str> {
        self.vanishing.iter().map(|&i| self.chart.name(i)).collect()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.vanishing.iter().all(|&i| p[i] == 0.0)
    }

    pub(crate) fn check_chart(&self, chart: &Chart) -> Result<(), MoserError> {
        if *chart == self.chart {
            Ok(())
        } else {
            Err(MoserError::ChartMismatch)
        }
    }
}

/// Sampling, integration and tolerance parameters shared by the stages.
#[derive(Clone, Debug, PartialEq)]
pub struct StageOptions {
    /// Seeds fill the box `‖p‖∞ ≤ radius` with `grid` points per axis.
    pub radius: Q,
    pub grid: usize,
    pub seed_cap: usize,
    pub steps: usize,
    /// Tolerance for pullback and pushforward residuals.
    pub tol: f64,
    /// Tolerance for displacement of points of `M`.
    pub fixed_tol: f64,
    /// Tolerance for the pointwise linear solves of the omega stage.
    pub solve_tol: f64,
    /// Gauss-Legendre nodes of the numerical homotopy (general transport only).
    pub quadrature_nodes: usize,
}

impl Default for StageOptions {
    fn default() -> Self {
        StageOptions {
            radius: rational::ratio(1, 2),
            grid: 5,
            seed_cap: 729,
            steps: 64,
            tol: 1e-5,
            fixed_tol: 1e-8,
            solve_tol: 1e-12,
            quadrature_nodes: 6,
        }
    }
}
