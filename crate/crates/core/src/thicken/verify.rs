use num_traits::{One, Signed, Zero};

use crate::coslinalg::{is_coisotropic, reeb_linear, CosymplecticLinearData, Subspace};
use crate::forms::{PolyForm, PolyVectorField};
use crate::rational::{self, Q};
use crate::report::{CheckResult, EquivalenceReport};
use crate::sampling::box_grid;

use super::{PrecosymplecticChartStructure, ThickenError, ThickenedStructure};

/// Sampling parameters for [`verify_embedding_with`]. Base points come from a
/// `grid`-per-axis box of half-width `radius`, capped at `base_cap` points; the
/// fiber coordinates use the full `grid`-per-axis box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCheckOptions {
    pub radius: Q,
    pub grid: usize,
    pub base_cap: usize,
}

impl Default for EmbeddingCheckOptions {
    fn default() -> Self {
        EmbeddingCheckOptions { radius: rational::ratio(1, 2), grid: 5, base_cap: 32 }
    }
}

pub fn verify_embedding(
    t: &ThickenedStructure,
    s: &PrecosymplecticChartStructure,
    radius: &Q,
    grid: usize,
) -> Result<EquivalenceReport, ThickenError> {
    verify_embedding_with(t, s, &EmbeddingCheckOptions { radius: radius.clone(), grid, ..Default::default() })
}

fn data_at(t: &ThickenedStructure, point: &[Q]) -> Result<CosymplecticLinearData, ThickenError> {
    Ok(CosymplecticLinearData::from_parts(t.omega().eval_matrix(point)?, t.eta().eval_covector(point)?)?)
}

fn full_point(base: &[Q], fiber: &[Q]) -> Vec<Q> {
    base.iter().chain(fiber).cloned().collect()
}

fn sup_norm(v: &[Q]) -> Q {
    v.iter().map(Q::abs).max().unwrap_or_else(Q::zero)
}

/// Result of scanning the volume coefficient over base × fiber samples.
struct VolumeScan {
    first_zero: Option<Vec<Q>>,
    first_flip: Option<Vec<Q>>,
    /// Smallest `|b|∞` among failing points.
    min_fail_level: Option<Q>,
    samples: usize,
}

fn volume_scan(t: &ThickenedStructure, base: &[Vec<Q>], fiber: &[Vec<Q>]) -> Result<VolumeScan, ThickenError> {
    let mut scan = VolumeScan { first_zero: None, first_flip: None, min_fail_level: None, samples: 0 };
    let zero_fiber = vec![Q::zero(); t.fiber_dim()];
    for x in base {
        let v0 = data_at(t, &full_point(x, &zero_fiber))?.volume_coefficient();
        for b in fiber {
            scan.samples += 1;
            let point = full_point(x, b);
            let v = data_at(t, &point)?.volume_coefficient();
            let zero = v.is_zero();
            let flip = !zero && !v0.is_zero() && v.signum() != v0.signum();
            if zero && scan.first_zero.is_none() {
                scan.first_zero = Some(point.clone());
            }
            if flip && scan.first_flip.is_none() {
                scan.first_flip = Some(point.clone());
            }
            if zero || flip {
                let level = sup_norm(b);
                if scan.min_fail_level.as_ref().is_none_or(|m| level < *m) {
                    scan.min_fail_level = Some(level);
                }
            }
        }
    }
    Ok(scan)
}

/// Verifies the conclusions of the existence theorem for a thickening of `s`:
/// exact pullback to the zero section, exact closedness and Liouville
/// decomposition, `∂t` as Reeb field, and at sample points nondegeneracy of
/// `η_G ∧ Ω_G^{p+k}`, coisotropy of the zero section and the rank of `Ω_G` there.
pub fn verify_embedding_with(
    t: &ThickenedStructure,
    s: &PrecosymplecticChartStructure,
    opts: &EmbeddingCheckOptions,
) -> Result<EquivalenceReport, ThickenError> {
    let base_chart = t.base_chart()?;
    if base_chart.names() != s.chart().names() || t.fiber_dim() != s.k() {
        return Err(ThickenError::Inconsistent(format!(
            "thickened chart [{}] does not extend base chart [{}] by {} fiber coordinates",
            t.chart(),
            s.chart(),
            s.k()
        )));
    }
    let n = t.chart().dim();
    let time = s.time_index();
    let mut checks = Vec::new();

    let closed = t.omega().d().is_zero() && t.eta().d().is_zero();
    checks.push(CheckResult::exact("closed", closed));

    let j = t.zero_section()?;
    let pulled_omega = t.omega().pullback(&j)?;
    let pulled_eta = t.eta().pullback(&j)?;
    let same = |a: &PolyForm, b: &PolyForm| a.terms().eq(b.terms()) && a.degree() == b.degree();
    checks.push(CheckResult::exact(
        "zero_section_pullback",
        same(&pulled_omega, s.omega()) && same(&pulled_eta, s.eta()),
    ));

    let pi = t.projection()?;
    let base_omega = PolyForm::from_terms(&base_chart, 2, s.omega().terms().map(|(i, c)| (i.clone(), c.clone())))?;
    let base_eta = PolyForm::from_terms(&base_chart, 1, s.eta().terms().map(|(i, c)| (i.clone(), c.clone())))?;
    let decomposed = base_omega.pullback(&pi)?.add(&t.liouville().d())? == *t.omega()
        && base_eta.pullback(&pi)? == *t.eta()
        && t.liouville().vanishes_on(&t.fiber_indices().collect::<Vec<_>>());
    checks.push(CheckResult::exact("liouville_decomposition", decomposed));

    let dt = PolyVectorField::coordinate(t.chart(), time);
    let reeb_exact = t.omega().interior(&dt)?.is_zero() && t.eta().interior(&dt)?.as_scalar().is_some_and(|f| {
        f.is_constant() && f.constant_term().is_one()
    });
    checks.push(CheckResult::exact("reeb_field_exact", reeb_exact));

    let base_points = box_grid(t.base_dim(), &opts.radius, opts.grid, opts.base_cap);
    let fiber_points = box_grid(t.fiber_dim(), &opts.radius, opts.grid, usize::MAX);
    let zero_fiber = vec![Q::zero(); t.fiber_dim()];
    let tangent = {
        let vecs = (0..t.base_dim())
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = Q::one();
                e
            })
            .collect();
        Subspace::new(n, vecs)?
    };
    let mut e_t = vec![Q::zero(); n];
    e_t[time] = Q::one();

    let expected_rank = 2 * s.p() + 2 * s.k();
    let mut rank_fail = None;
    let mut cois_fail: Option<(Vec<Q>, String)> = None;
    let mut reeb_fail = None;
    for x in &base_points {
        let point = full_point(x, &zero_fiber);
        let data = data_at(t, &point)?;
        if rank_fail.is_none() && data.omega().rank() != expected_rank {
            rank_fail = Some(point.clone());
        }
        if cois_fail.is_none() {
            match is_coisotropic(&data, &tangent) {
                Ok(v) if v.coisotropic => {}
                Ok(v) => {
                    let w = v.witness.unwrap_or_default();
                    cois_fail = Some((point.clone(), format!("witness vector [{}]", fmt_vec(&w))));
                }
                Err(e) => cois_fail = Some((point.clone(), e.to_string())),
            }
        }
        if reeb_fail.is_none() && reeb_linear(&data).ok().as_ref() != Some(&e_t) {
            reeb_fail = Some(point.clone());
        }
    }
    checks.push(exact_at("zero_section_rank", rank_fail.as_deref()));
    let mut cois = CheckResult::exact("zero_section_coisotropic", cois_fail.is_none());
    if let Some((p, why)) = cois_fail {
        cois = cois.at_point(&p).with_detail(why);
    }
    checks.push(cois);
    checks.push(exact_at("zero_section_reeb", reeb_fail.as_deref()));

    let scan = volume_scan(t, &base_points, &fiber_points)?;
    checks.push(exact_at("volume_nonvanishing", scan.first_zero.as_deref()));
    checks.push(
        exact_at("volume_sign_stable", scan.first_flip.as_deref())
            .with_detail("sign of the volume coefficient agrees with the zero section above each base point"),
    );
    let largest = largest_passing(&fiber_points, scan.min_fail_level.as_ref(), &opts.radius);

    Ok(EquivalenceReport {
        subject: "verify-embed".into(),
        checks,
        radius: rational::format(&opts.radius),
        grid: opts.grid,
        steps: None,
        samples: scan.samples,
        largest_passing_radius: largest.map(|r| rational::format(&r)),
    })
}

fn exact_at(name: &str, failure: Option<&[Q]>) -> CheckResult {
    match failure {
        None => CheckResult::exact(name, true),
        Some(p) => CheckResult::exact(name, false).at_point(p),
    }
}

fn fmt_vec(v: &[Q]) -> String {
    v.iter().map(rational::format).collect::<Vec<_>>().join(", ")
}

/// Largest sampled fiber level below the first failing level.
fn largest_passing(fiber: &[Vec<Q>], min_fail: Option<&Q>, radius: &Q) -> Option<Q> {
    match min_fail {
        None => Some(radius.clone()),
        Some(fail) => fiber.iter().map(|b| sup_norm(b)).filter(|l| l < fail).max(),
    }
}

/// Largest radius in `[0, max_radius]` (to `iterations` bisection steps) for
/// which the volume coefficient keeps the zero-section sign at every sample.
pub fn bisect_radius(
    t: &ThickenedStructure,
    max_radius: &Q,
    grid: usize,
    base_cap: usize,
    iterations: usize,
) -> Result<Q, ThickenError> {
    let base_points = box_grid(t.base_dim(), max_radius, grid, base_cap);
    let passes = |r: &Q| -> Result<bool, ThickenError> {
        let fiber = box_grid(t.fiber_dim(), r, grid, usize::MAX);
        let scan = volume_scan(t, &base_points, &fiber)?;
        Ok(scan.min_fail_level.is_none())
    };
    if passes(max_radius)? {
        return Ok(max_radius.clone());
    }
    let two = rational::int(2);
    let (mut lo, mut hi) = (Q::zero(), max_radius.clone());
    for _ in 0..iterations {
        let mid = (&lo + &hi) / &two;
        if passes(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
