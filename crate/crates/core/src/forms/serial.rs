//! Canonical textual records for polynomial forms.
//!
//! A form is a list of `{indices, coeff_terms}` records; each coefficient term is
//! `{monomial: {label: exponent}, coeff: "p/q"}`. Records come out in the
//! lexicographic order of the index tuples and exponent vectors, so equal forms
//! serialize identically.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Chart, FormsError, PolyForm, PolyScalar};
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    #[serde(default)]
    pub monomial: BTreeMap<String, u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormRecord {
    pub indices: Vec<String>,
    pub coeff_terms: Vec<TermRecord>,
}

pub fn scalar_to_records(chart: &Chart, f: &PolyScalar) -> Vec<TermRecord> {
    f.terms()
        .map(|(e, c)| TermRecord {
            monomial: e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| (chart.name(i).to_string(), k))
                .collect(),
            coeff: rational::format(c),
        })
        .collect()
}

pub fn scalar_from_records(chart: &Chart, terms: &[TermRecord]) -> Result<PolyScalar, FormsError> {
    let mut f = PolyScalar::zero(chart.dim());
    for t in terms {
        let mut e = vec![0; chart.dim()];
        for (label, &k) in &t.monomial {
            let i = chart.index_of(label).ok_or_else(|| FormsError::UnknownLabel(label.clone()))?;
            e[i] += k;
        }
        let c = rational::parse(&t.coeff).map_err(|err| FormsError::Coefficient(err.to_string()))?;
        f.add_term(e, c);
    }
    Ok(f)
}

pub fn form_to_records(form: &PolyForm) -> Vec<FormRecord> {
    let chart = form.chart();
    form.terms()
        .map(|(idx, f)| FormRecord {
            indices: idx.iter().map(|&i| chart.name(i).to_string()).collect(),
            coeff_terms: scalar_to_records(chart, f),
        })
        .collect()
}

/// Parses records into a form of the given degree. Index labels may come in any
/// order; the permutation sign is applied.
pub fn form_from_records(chart: &Chart, degree: usize, records: &[FormRecord]) -> Result<PolyForm, FormsError> {
    let mut terms = Vec::with_capacity(records.len());
    for r in records {
        let idx = r
            .indices
            .iter()
            .map(|l| chart.index_of(l).ok_or_else(|| FormsError::UnknownLabel(l.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        terms.push((idx, scalar_from_records(chart, &r.coeff_terms)?));
    }
    PolyForm::from_terms(chart, degree, terms)
}
