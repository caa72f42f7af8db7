//! JSON structure manifests.
//!
//! ```json
//! {
//!   "chart": {"labels": ["x1", "x2", "t", "z1"], "time": "t"},
//!   "omega": [{"indices": ["x1", "x2"], "coeff_terms": [{"coeff": "1"}]}],
//!   "eta": [{"indices": ["t"], "coeff_terms": [{"coeff": "1"}]}],
//!   "submanifold": ["x1"],
//!   "verification": {"radius": "1/2", "grid": 5, "steps": 64, "tol": 1e-5}
//! }
//! ```
//!
//! Thickened manifests written by `embed` carry an extra `thickening` section
//! naming the base dimension, the fiber labels and the Liouville form.

use coiso::forms::serial::{form_from_records, form_to_records, scalar_from_records, scalar_to_records};
use coiso::forms::serial::{FormRecord, TermRecord};
use coiso::forms::{Chart, PolyForm, PolyScalar};
use coiso::rational::{self, Q};
use coiso::thicken::{ComplementTable, ThickenedStructure};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementDoc {
    /// `a[r][i]` is the coefficient `A^r_i` over the base chart.
    pub a: Vec<Vec<Vec<TermRecord>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c: Vec<Vec<TermRecord>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThickeningDoc {
    pub base_dim: usize,
    pub fiber: Vec<String>,
    pub liouville: Vec<FormRecord>,
}

/// The manifest exactly as written on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestDoc {
    pub chart: ChartDoc,
    pub omega: Vec<FormRecord>,
    pub eta: Vec<FormRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submanifold: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<ComplementDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thickening: Option<ThickeningDoc>,
}

/// Sampling and tolerance parameters with defaults filled in.
#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub radius: Q,
    pub grid: usize,
    pub steps: usize,
    pub tol: f64,
}

impl Default for Verification {
    fn default() -> Self {
        Verification { radius: rational::ratio(1, 2), grid: 5, steps: 64, tol: 1e-5 }
    }
}

impl Verification {
    fn to_doc(&self) -> VerificationDoc {
        VerificationDoc {
            radius: Some(rational::format(&self.radius)),
            grid: Some(self.grid),
            steps: Some(self.steps),
            tol: Some(self.tol),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thickening {
    pub base_dim: usize,
    pub liouville: PolyForm,
}

/// A parsed manifest: everything is exact and lives on `chart`.
#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub chart: Chart,
    pub omega: PolyForm,
    pub eta: PolyForm,
    pub submanifold: Option<Vec<String>>,
    pub complement: Option<ComplementTable>,
    pub verification: Verification,
    pub thickening: Option<Thickening>,
}

fn field_error(field: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{field}: {err}"))
}

fn parse_polys(chart: &Chart, field: &str, rows: &[Vec<Vec<TermRecord>>]) -> Result<Vec<Vec<PolyScalar>>, CliError> {
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(i, terms)| scalar_from_records(chart, terms).map_err(|e| field_error(&format!("{field}[{r}][{i}]"), e)))
                .collect()
        })
        .collect()
}

/// Parses a complement table whose coefficients live on `chart`.
pub fn parse_complement(chart: &Chart, doc: &ComplementDoc) -> Result<ComplementTable, CliError> {
    let a = parse_polys(chart, "complement.a", &doc.a)?;
    let c = doc
        .c
        .iter()
        .enumerate()
        .map(|(r, terms)| scalar_from_records(chart, terms).map_err(|e| field_error(&format!("complement.c[{r}]"), e)))
        .collect::<Result<_, _>>()?;
    Ok(ComplementTable { a, c })
}

pub fn complement_to_doc(chart: &Chart, table: &ComplementTable) -> ComplementDoc {
    ComplementDoc {
        a: table.a.iter().map(|row| row.iter().map(|f| scalar_to_records(chart, f)).collect()).collect(),
        c: table.c.iter().map(|f| scalar_to_records(chart, f)).collect(),
    }
}

/// Reads a standalone complement table (the `--complement <file>` form).
pub fn parse_complement_text(chart: &Chart, text: &str) -> Result<ComplementTable, CliError> {
    let doc: ComplementDoc = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    parse_complement(chart, &doc)
}

fn multi_chart_hint(text: &str) -> Option<CliError> {
    let value: serde_json::Value = serde_json::from_str(text).ok()?;
    let obj = value.as_object()?;
    if obj.contains_key("charts") || obj.get("chart").is_some_and(|c| c.is_array()) {
        Some(CliError::Parse(
            "manifest describes several charts; only single-chart structures are supported".into(),
        ))
    } else {
        None
    }
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, CliError> {
        let doc: ManifestDoc = match serde_json::from_str(text) {
            Ok(doc) => doc,
            Err(e) => return Err(multi_chart_hint(text).unwrap_or_else(|| CliError::Parse(e.to_string()))),
        };
        Manifest::from_doc(&doc)
    }

    pub fn from_doc(doc: &ManifestDoc) -> Result<Manifest, CliError> {
        let chart = Chart::with_time_label(doc.chart.labels.clone(), doc.chart.time.as_deref())
            .map_err(|e| field_error("chart", e))?;
        let omega = form_from_records(&chart, 2, &doc.omega).map_err(|e| field_error("omega", e))?;
        let eta = form_from_records(&chart, 1, &doc.eta).map_err(|e| field_error("eta", e))?;
        if let Some(labels) = &doc.submanifold {
            if let Some(bad) = labels.iter().find(|l| chart.index_of(l).is_none()) {
                return Err(field_error("submanifold", format!("unknown coordinate label {bad:?}")));
            }
        }
        let complement = doc.complement.as_ref().map(|c| parse_complement(&chart, c)).transpose()?;
        let mut verification = Verification::default();
        if let Some(v) = &doc.verification {
            if let Some(r) = &v.radius {
                verification.radius = rational::parse(r).map_err(|e| field_error("verification.radius", e))?;
            }
            verification.grid = v.grid.unwrap_or(verification.grid);
            verification.steps = v.steps.unwrap_or(verification.steps);
            verification.tol = v.tol.unwrap_or(verification.tol);
        }
        let thickening = match &doc.thickening {
            None => None,
            Some(t) => {
                let fiber_ok = t.base_dim <= chart.dim() && chart.names()[t.base_dim..] == t.fiber[..];
                if !fiber_ok {
                    return Err(field_error("thickening.fiber", "must list the chart labels after base_dim"));
                }
                let liouville =
                    form_from_records(&chart, 1, &t.liouville).map_err(|e| field_error("thickening.liouville", e))?;
                Some(Thickening { base_dim: t.base_dim, liouville })
            }
        };
        Ok(Manifest {
            chart,
            omega,
            eta,
            submanifold: doc.submanifold.clone(),
            complement,
            verification,
            thickening,
        })
    }

    pub fn to_doc(&self) -> ManifestDoc {
        ManifestDoc {
            chart: ChartDoc {
                labels: self.chart.names().to_vec(),
                time: self.chart.time_label().map(str::to_string),
            },
            omega: form_to_records(&self.omega),
            eta: form_to_records(&self.eta),
            submanifold: self.submanifold.clone(),
            complement: self.complement.as_ref().map(|c| complement_to_doc(&self.chart, c)),
            verification: Some(self.verification.to_doc()),
            thickening: self.thickening.as_ref().map(|t| ThickeningDoc {
                base_dim: t.base_dim,
                fiber: self.chart.names()[t.base_dim..].to_vec(),
                liouville: form_to_records(&t.liouville),
            }),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("manifest serializes");
        s.push('\n');
        s
    }

    /// The manifest describing a thickened structure.
    pub fn from_thickened(t: &ThickenedStructure, verification: Verification) -> Manifest {
        Manifest {
            chart: t.chart().clone(),
            omega: t.omega().clone(),
            eta: t.eta().clone(),
            submanifold: None,
            complement: None,
            verification,
            thickening: Some(Thickening { base_dim: t.base_dim(), liouville: t.liouville().clone() }),
        }
    }

    pub fn thickened_structure(&self) -> Result<ThickenedStructure, CliError> {
        let t = self
            .thickening
            .as_ref()
            .ok_or_else(|| CliError::Parse("thickening: section required for a thickened manifest".into()))?;
        Ok(ThickenedStructure::from_parts(
            self.chart.clone(),
            self.omega.clone(),
            self.eta.clone(),
            t.liouville.clone(),
            t.base_dim,
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "chart": {"labels": ["x", "y", "t"], "time": "t"},
        "omega": [{"indices": ["x", "y"], "coeff_terms": [{"coeff": "1/3", "monomial": {"x": 2}}]}],
        "eta": [{"indices": ["t"], "coeff_terms": [{"coeff": "1"}]}]
    }"#;

    #[test]
    fn minimal_manifest_gets_defaults() {
        let m = Manifest::parse(MINIMAL).unwrap();
        assert_eq!(m.verification, Verification::default());
        let x = PolyScalar::var(3, 0);
        assert_eq!(m.omega, PolyForm::basis(&m.chart, &[0, 1], (&x * &x).scale(&rational::ratio(1, 3))));
        assert_eq!(Manifest::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn rejects_unknown_fields_duplicates_and_several_charts() {
        let extra = MINIMAL.replacen('{', r#"{"colour": 1,"#, 1);
        assert!(matches!(Manifest::parse(&extra), Err(CliError::Parse(msg)) if msg.contains("colour")));
        let dup = MINIMAL.replace(r#"["x", "y", "t"]"#, r#"["x", "x", "t"]"#);
        assert!(matches!(Manifest::parse(&dup), Err(CliError::Parse(msg)) if msg.contains("duplicate")));
        let multi = r#"{"charts": [], "omega": [], "eta": []}"#;
        assert!(matches!(Manifest::parse(multi), Err(CliError::Parse(msg)) if msg.contains("several charts")));
    }

    #[test]
    fn reports_line_of_syntax_errors() {
        let broken = MINIMAL.replace("\"eta\"", "eta");
        let Err(CliError::Parse(msg)) = Manifest::parse(&broken) else { panic!() };
        assert!(msg.contains("line 4"), "{msg}");
    }
}
