use serde::Serialize;

use crate::coslinalg::{reeb_linear, CosymplecticLinearData, LinearType};
use crate::forms::{Chart, PolyForm};
use crate::rational::{self, Q};
use crate::report::{CheckResult, EquivalenceReport};
use crate::sampling::box_grid;

use super::{PrecosymplecticChartStructure, ThickenError};

/// What `check_structure` found: the constant type of the pair and its Reeb field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureSummary {
    /// `cosymplectic`, `precosymplectic` or `degenerate`.
    pub kind: String,
    pub p: Option<usize>,
    pub k: Option<usize>,
    /// `∂<label>` when the structure is in Darboux form, otherwise the Reeb
    /// vector at the first sample point.
    pub reeb: Option<String>,
    pub darboux: bool,
}

/// Validates a pair on a chart: exact closedness, and at sample points a
/// constant precosymplectic type `(p, k)` together with a Reeb vector.
pub fn check_structure(
    chart: &Chart,
    omega: &PolyForm,
    eta: &PolyForm,
    radius: &Q,
    grid: usize,
    cap: usize,
) -> Result<(StructureSummary, EquivalenceReport), ThickenError> {
    let mut checks = vec![
        CheckResult::exact("omega_closed", omega.d().is_zero()),
        CheckResult::exact("eta_closed", eta.d().is_zero()),
    ];
    let points = box_grid(chart.dim(), radius, grid, cap);
    let mut first: Option<LinearType> = None;
    let mut type_fail: Option<(Vec<Q>, String)> = None;
    let mut reeb_at_first = None;
    for pt in &points {
        let data = CosymplecticLinearData::from_parts(omega.eval_matrix(pt)?, eta.eval_covector(pt)?)?;
        let kind = data.classify();
        if first.is_none() {
            first = Some(kind);
            reeb_at_first = reeb_linear(&data).ok();
        }
        if type_fail.is_none() {
            if kind == LinearType::Degenerate {
                type_fail = Some((pt.clone(), "eta vanishes on ker omega".into()));
            } else if Some(kind) != first {
                type_fail = Some((pt.clone(), format!("type changes from {:?} to {kind:?}", first.unwrap())));
            }
        }
    }
    let mut type_check = CheckResult::exact("precosymplectic_constant_type", type_fail.is_none());
    if let Some((pt, why)) = type_fail {
        type_check = type_check.at_point(&pt).with_detail(why);
    }
    checks.push(type_check);

    let darboux = PrecosymplecticChartStructure::from_forms(chart, omega.clone(), eta.clone()).ok();
    let (kind, p, k) = match first {
        Some(LinearType::Cosymplectic) => ("cosymplectic", Some((chart.dim() - 1) / 2), Some(0)),
        Some(LinearType::Precosymplectic { p, k }) => ("precosymplectic", Some(p), Some(k)),
        _ => ("degenerate", None, None),
    };
    let reeb = match &darboux {
        Some(s) => Some(format!("∂{}", s.chart().name(s.time_index()))),
        None => reeb_at_first.map(|v| v.iter().map(rational::format).collect::<Vec<_>>().join(" ")),
    };
    let summary = StructureSummary { kind: kind.into(), p, k, reeb, darboux: darboux.is_some() };
    let report = EquivalenceReport {
        subject: "check".into(),
        checks,
        radius: rational::format(radius),
        grid,
        steps: None,
        samples: points.len(),
        largest_passing_radius: None,
    };
    Ok((summary, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::PolyScalar;
    use crate::rational::ratio;

    #[test]
    fn darboux_structure_checks_out() {
        let s = PrecosymplecticChartStructure::darboux(1, 1);
        let (sum, rep) = check_structure(s.chart(), s.omega(), s.eta(), &ratio(1, 2), 3, 100).unwrap();
        assert!(rep.passed());
        assert_eq!((sum.p, sum.k, sum.reeb.as_deref()), (Some(1), Some(1), Some("∂t")));
    }

    #[test]
    fn type_change_is_reported() {
        // omega = x dx∧dy degenerates on x = 0
        let c = Chart::new(["x", "y", "t"], Some(2)).unwrap();
        let omega = PolyForm::basis(&c, &[0, 1], PolyScalar::var(3, 0));
        let (_, rep) = check_structure(&c, &omega, &PolyForm::dx(&c, 2), &ratio(1, 2), 3, 100).unwrap();
        assert!(!rep.check("precosymplectic_constant_type").unwrap().passed);
    }
}
