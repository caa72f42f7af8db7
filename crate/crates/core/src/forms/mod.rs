//! Exterior calculus for differential forms with exact polynomial coefficients
//! on a single coordinate chart.
//!
//! A k-form is stored sparsely as a map from strictly increasing index tuples
//! to [`PolyScalar`] coefficients. Everything here is exact; nothing touches
//! floating point except the explicit `eval_f64` helpers used by the flow code.

mod form;
mod map;
mod poly;
pub mod serial;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub use form::{AlternatingTensor, PolyForm};
pub use map::{PolyMap, PolyVectorField};
pub use poly::{Exponents, PolyScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("chart mismatch: expected [{expected}], found [{found}]")]
    ChartMismatch { expected: String, found: String },
    #[error("duplicate coordinate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown coordinate label {0:?}")]
    UnknownLabel(String),
    #[error("time index {index} out of range for a chart of dimension {dim}")]
    TimeIndexOutOfRange { index: usize, dim: usize },
    #[error("a chart needs at least one coordinate")]
    EmptyChart,
    #[error("interior product needs a form of degree at least 1")]
    DegreeZeroInterior,
    #[error("expected a form of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point has {found} coordinates, chart has {expected}")]
    PointDimension { expected: usize, found: usize },
    #[error("expected {expected} components, got {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("index {index} out of range for a chart of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid coefficient: {0}")]
    Coefficient(String),
}

/// A coordinate chart: ordered labels plus an optional distinguished time coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
    time_index: Option<usize>,
}

impl Chart {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        time_index: Option<usize>,
    ) -> Result<Self, FormsError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(FormsError::EmptyChart);
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(FormsError::DuplicateLabel(n.clone()));
            }
        }
        if let Some(t) = time_index {
            if t >= names.len() {
                return Err(FormsError::TimeIndexOutOfRange { index: t, dim: names.len() });
            }
        }
        Ok(Chart { names, time_index })
    }

    /// Like [`Chart::new`], naming the time coordinate by label.
    pub fn with_time_label<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        time: Option<&str>,
    ) -> Result<Self, FormsError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let time_index = match time {
            Some(label) => Some(
                names.iter().position(|n| n == label).ok_or_else(|| FormsError::UnknownLabel(label.to_string()))?,
            ),
            None => None,
        };
        Self::new(names, time_index)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn time_index(&self) -> Option<usize> {
        self.time_index
    }

    pub fn time_label(&self) -> Option<&str> {
        self.time_index.map(|t| self.names[t].as_str())
    }

    /// A new chart with `extra` labels appended; the time coordinate is kept.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<Chart, FormsError> {
        let mut names = self.names.clone();
        names.extend(extra.into_iter().map(Into::into));
        Chart::new(names, self.time_index)
    }

    pub(crate) fn check_same(&self, other: &Chart) -> Result<(), FormsError> {
        if self == other {
            Ok(())
        } else {
            Err(FormsError::ChartMismatch { expected: self.to_string(), found: other.to_string() })
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if Some(i) == self.time_index {
                write!(f, "{n}*")?;
            } else {
                f.write_str(n)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_rejects_duplicates_and_bad_time() {
        assert_eq!(Chart::new(["x", "x"], None), Err(FormsError::DuplicateLabel("x".into())));
        assert!(matches!(Chart::new(["x"], Some(1)), Err(FormsError::TimeIndexOutOfRange { .. })));
        assert!(Chart::with_time_label(["x", "t"], Some("s")).is_err());
        let c = Chart::with_time_label(["x", "t"], Some("t")).unwrap();
        assert_eq!(c.time_index(), Some(1));
        assert_eq!(c.extended(["b"]).unwrap().dim(), 3);
        assert!(c.extended(["x"]).is_err());
    }
}
