use nalgebra::{DMatrix, DVector};
use num_traits::One;

use crate::coslinalg::CosymplecticLinearData;
use crate::forms::{PolyForm, PolyMap, PolyScalar, PolyVectorField};
use crate::rational::{self, Q};
use crate::report::{CheckResult, EquivalenceReport};
use crate::sampling::box_grid;

use super::flow::{flow_jacobian, flow_point, integrate_flow_with, FlowOptions, FlowResult, TimeDependentField};
use super::numeric::{eval_covector, eval_matrix, flat_matrix, solve, sup};
use super::primitive::{numeric_primitive, poincare_primitive, reeb_primitive};
use super::reeb::{ReebField, ReebInterpolation};
use super::{MoserError, StageOptions, SubmanifoldSpec};

/// `Z_s = −φ N_s`, the field of the eta stage.
#[derive(Clone, Debug)]
pub struct EtaField {
    phi: PolyScalar,
    interpolation: ReebInterpolation,
}

impl EtaField {
    pub fn phi(&self) -> &PolyScalar {
        &self.phi
    }

    pub fn interpolation(&self) -> &ReebInterpolation {
        &self.interpolation
    }
}

impl TimeDependentField for EtaField {
    fn dim(&self) -> usize {
        self.phi.nvars()
    }

    fn eval(&self, s: f64, p: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let phi = self.phi.eval_f64(p);
        if phi == 0.0 {
            return vec![0.0; n];
        }
        match self.interpolation.eval(p, s) {
            Some(v) => (v.n * -phi).iter().copied().collect(),
            None => vec![f64::NAN; n],
        }
    }
}

/// Output of [`eta_stage`]: `g` is the time-one flow of `Z_s`.
#[derive(Clone, Debug)]
pub struct EtaStage {
    pub nu: PolyForm,
    pub field: EtaField,
    pub flow: FlowResult,
    pub report: EquivalenceReport,
}

/// Output of [`omega_stage`]: `f` is the time-one flow of `Y_s`.
#[derive(Clone, Debug)]
pub struct OmegaStage {
    /// The exact primitive, when the stage ran on polynomial data.
    pub phi: Option<PolyForm>,
    pub flow: FlowResult,
    pub report: EquivalenceReport,
}

/// How `Ω̄_0 = (g^{-1})*Ω_0` was obtained between the stages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transport {
    /// `η_0 = η_1`, so `g` is the identity.
    Identity,
    /// `∂τ` is the Reeb field of both pairs; then `g(p) = p − φ(p) e_τ`
    /// exactly and the transport is polynomial.
    Shear { coordinate: String },
    /// Backward flow and finite-difference Jacobians at every evaluation point.
    Numeric,
}

/// Both stages and the composed map `ψ = f ∘ g`.
#[derive(Clone, Debug)]
pub struct VerifiedEquivalence {
    pub report: EquivalenceReport,
    pub transport: Transport,
    pub eta: EtaStage,
    pub omega: OmegaStage,
}

/// Running maximum of a residual and where it occurred.
struct Worst {
    value: f64,
    point: Option<Vec<f64>>,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0, point: None }
    }

    fn update(&mut self, value: f64, point: &[f64]) {
        if value.is_nan() || (!self.value.is_nan() && value > self.value) {
            self.value = value;
            self.point = Some(point.to_vec());
        }
    }

    fn check(self, name: &str, tol: f64) -> CheckResult {
        CheckResult::residual(name, self.value, tol, self.point)
    }
}

fn fmt_q(p: &[Q]) -> Vec<String> {
    p.iter().map(rational::format).collect()
}

fn sample_seeds(n: usize, opts: &StageOptions) -> (Vec<Vec<Q>>, Vec<Vec<f64>>) {
    let q = box_grid(n, &opts.radius, opts.grid, opts.seed_cap);
    let f = q.iter().map(|p| p.iter().map(rational::to_f64).collect()).collect();
    (q, f)
}

fn flow_options(opts: &StageOptions) -> FlowOptions {
    FlowOptions { steps: opts.steps, ..FlowOptions::default() }
}

fn require_cosymplectic(which: &str, omega: &PolyForm, eta: &PolyForm, seeds: &[Vec<Q>]) -> Result<(), MoserError> {
    for p in seeds {
        let data = CosymplecticLinearData::from_parts(omega.eval_matrix(p)?, eta.eval_covector(p)?)?;
        if !data.is_cosymplectic() {
            return Err(MoserError::NotCosymplectic { which: which.to_string(), point: fmt_q(p) });
        }
    }
    Ok(())
}

fn same_chart(forms: &[&PolyForm], m: &SubmanifoldSpec) -> Result<(), MoserError> {
    let chart = forms[0].chart();
    if forms.iter().any(|f| f.chart() != chart) {
        return Err(MoserError::ChartMismatch);
    }
    m.check_chart(chart)
}

fn expect_degree(f: &PolyForm, d: usize) -> Result<(), MoserError> {
    if f.degree() == d {
        Ok(())
    } else {
        Err(crate::forms::FormsError::DegreeMismatch { expected: d, found: f.degree() }.into())
    }
}

fn pullback_1_residual(jac: &DMatrix<f64>, target: &DVector<f64>, source: &DVector<f64>) -> f64 {
    sup((jac.transpose() * target - source).iter().copied())
}

fn pullback_2_residual(jac: &DMatrix<f64>, target: &DMatrix<f64>, source: &DMatrix<f64>) -> f64 {
    sup((jac.transpose() * target * jac - source).iter().copied())
}

fn displacement(a: &[f64], b: &[f64]) -> f64 {
    sup(a.iter().zip(b).map(|(x, y)| x - y))
}

fn stage_report(subject: &str, checks: Vec<CheckResult>, opts: &StageOptions, samples: usize) -> EquivalenceReport {
    EquivalenceReport {
        subject: subject.into(),
        checks,
        radius: rational::format(&opts.radius),
        grid: opts.grid,
        steps: Some(opts.steps),
        samples,
        largest_passing_radius: None,
    }
}

fn flow_complete(flow: &FlowResult) -> CheckResult {
    match flow.diverged.iter().position(|&d| d) {
        None => CheckResult::exact("flow_complete", true),
        Some(i) => {
            let seed = flow.seeds[i].iter().map(|x| format!("{x:.6e}")).collect();
            let mut c = CheckResult::exact("flow_complete", false).with_detail("trajectory diverged or left the domain");
            c.worst_point = Some(seed);
            c
        }
    }
}

/// Deforms `η_0` into `η_1` relative to `M`: `g*η_1 ≈ η_0`, `g|_M = id` and
/// `dg(ξ_0) ≈ ξ_1` are certified at the seeds. `Ω_0` and `Ω_1` determine the
/// Reeb fields being interpolated.
pub fn eta_stage(
    eta0: &PolyForm,
    eta1: &PolyForm,
    omega0: &PolyForm,
    omega1: &PolyForm,
    m: &SubmanifoldSpec,
    opts: &StageOptions,
) -> Result<EtaStage, MoserError> {
    same_chart(&[eta0, eta1, omega0, omega1], m)?;
    expect_degree(eta0, 1)?;
    expect_degree(eta1, 1)?;
    expect_degree(omega0, 2)?;
    expect_degree(omega1, 2)?;
    let chart = eta0.chart();
    let n = chart.dim();
    if !eta0.d().is_zero() || !eta1.d().is_zero() {
        return Err(MoserError::NotClosed);
    }
    let nu = eta1.sub(eta0)?;
    if !nu.vanishes_on(m.vanishing()) {
        return Err(MoserError::NonvanishingOnM);
    }
    let phi = if nu.is_zero() {
        PolyScalar::zero(n)
    } else {
        poincare_primitive(&nu, m)?.as_scalar().expect("primitive of a 1-form is a function")
    };
    let interpolation = ReebInterpolation::new(omega0, eta0, omega1, eta1)?;
    let (seeds_q, seeds) = sample_seeds(n, opts);
    require_cosymplectic("0", omega0, eta0, &seeds_q)?;
    require_cosymplectic("1", omega1, eta1, &seeds_q)?;
    if !phi.is_zero() {
        for p in &seeds {
            for k in 0..=opts.steps {
                let s = k as f64 / opts.steps as f64;
                let value = interpolation.eval(p, s).map_or(f64::NAN, |v| v.denominator);
                if value.is_nan() || value <= 0.0 {
                    return Err(MoserError::DomainViolation { point: p.clone(), s, value });
                }
            }
        }
    }
    let field = EtaField { phi, interpolation };
    let flow = integrate_flow_with(&field, &seeds, &flow_options(opts));

    let mut checks = Vec::new();
    checks.push(CheckResult::exact(
        "moser_integrand_exact",
        PolyForm::scalar(chart, field.phi.clone()).d() == nu,
    ));
    checks.push(flow_complete(&flow));

    let mut domain = Worst { value: f64::INFINITY, point: None };
    let mut eta_res = Worst::new();
    let mut reeb_res = Worst::new();
    let mut fixed = Worst::new();
    for (i, p) in seeds.iter().enumerate() {
        let Some(gp) = flow.endpoint(i) else { continue };
        if !field.phi.is_zero() && flow.trajectories[i].len() == opts.steps + 1 {
            for (k, q) in flow.trajectories[i].iter().enumerate() {
                let s = k as f64 / opts.steps as f64;
                let d = field.interpolation.eval(q, s).map_or(f64::NAN, |v| v.denominator);
                if d.is_nan() || d < domain.value {
                    domain.value = d;
                    domain.point = Some(q.clone());
                }
            }
        }
        let Some(jac) = flow.jacobians[i].as_ref() else { continue };
        eta_res.update(pullback_1_residual(jac, &eval_covector(eta1, gp), &eval_covector(eta0, p)), p);
        match (field.interpolation.xi0.eval(p), field.interpolation.xi1.eval(gp)) {
            (Some(x0), Some(x1)) => reeb_res.update(sup((jac * x0 - x1).iter().copied()), p),
            _ => reeb_res.update(f64::NAN, p),
        }
        if m.contains(p) {
            fixed.update(displacement(gp, p), p);
        }
    }
    let domain_ok = domain.value.is_infinite() || domain.value > 0.0;
    let mut domain_check = CheckResult::exact("domain_positive", domain_ok);
    if let Some(q) = domain.point.filter(|_| !domain_ok) {
        domain_check = domain_check.with_detail(format!("eta_s(xi_s) = {:e} at {q:?}", domain.value));
    }
    checks.push(domain_check);
    checks.push(eta_res.check("g_pullback_eta", opts.tol));
    checks.push(reeb_res.check("reeb_pushforward", opts.tol));
    checks.push(fixed.check("g_fixes_M", opts.fixed_tol));

    let report = stage_report("eta-stage", checks, opts, seeds.len());
    Ok(EtaStage { nu, field, flow, report })
}

/// Pointwise data of an omega-stage path `Ω_s = (1 − s) Ω_0 + s Ω_1` with fixed `η`.
trait OmegaPath {
    fn omega0(&self, p: &[f64]) -> DMatrix<f64>;
    fn omega1(&self, p: &[f64]) -> DMatrix<f64>;
    fn eta(&self, p: &[f64]) -> DVector<f64>;
    /// `φ` with `dφ = Ω_1 − Ω_0`, `φ(ξ) = 0`, `φ|_M = 0`.
    fn primitive(&self, p: &[f64]) -> DVector<f64>;
}

struct PolyOmegaPath<'a> {
    omega0: &'a PolyForm,
    omega1: &'a PolyForm,
    eta: &'a PolyForm,
    phi: &'a PolyForm,
}

impl OmegaPath for PolyOmegaPath<'_> {
    fn omega0(&self, p: &[f64]) -> DMatrix<f64> {
        eval_matrix(self.omega0, p)
    }

    fn omega1(&self, p: &[f64]) -> DMatrix<f64> {
        eval_matrix(self.omega1, p)
    }

    fn eta(&self, p: &[f64]) -> DVector<f64> {
        eval_covector(self.eta, p)
    }

    fn primitive(&self, p: &[f64]) -> DVector<f64> {
        eval_covector(self.phi, p)
    }
}

/// `Ω̄_0 = (g^{-1})*Ω_0` evaluated through the backward eta-stage flow.
struct TransportedPath<'a> {
    eta_field: &'a EtaField,
    omega0: &'a PolyForm,
    omega1: &'a PolyForm,
    eta1: &'a PolyForm,
    vanishing: Vec<usize>,
    backward: FlowOptions,
    nodes: usize,
}

impl TransportedPath<'_> {
    fn transported(&self, q: &[f64]) -> DMatrix<f64> {
        let n = q.len();
        let nan = || DMatrix::from_element(n, n, f64::NAN);
        let Some(p) = flow_point(self.eta_field, q, &self.backward, None) else { return nan() };
        let Some(jac) = flow_jacobian(self.eta_field, q, &self.backward) else { return nan() };
        jac.transpose() * eval_matrix(self.omega0, &p) * jac
    }
}

impl OmegaPath for TransportedPath<'_> {
    fn omega0(&self, p: &[f64]) -> DMatrix<f64> {
        self.transported(p)
    }

    fn omega1(&self, p: &[f64]) -> DMatrix<f64> {
        eval_matrix(self.omega1, p)
    }

    fn eta(&self, p: &[f64]) -> DVector<f64> {
        eval_covector(self.eta1, p)
    }

    fn primitive(&self, p: &[f64]) -> DVector<f64> {
        numeric_primitive(|r| eval_matrix(self.omega1, r) - self.transported(r), &self.vanishing, p, self.nodes)
    }
}

/// `Y_s = ♭_s^{-1}(−φ)` for the path.
struct OmegaField<'a> {
    path: &'a dyn OmegaPath,
    dim: usize,
}

impl OmegaField<'_> {
    /// Returns `(Y, F, φ, η)` at `(s, p)`, with `Y = None` where `F` is singular.
    fn solve_at(&self, s: f64, p: &[f64]) -> (Option<DVector<f64>>, DMatrix<f64>, DVector<f64>, DVector<f64>) {
        let w = self.path.omega0(p) * (1.0 - s) + self.path.omega1(p) * s;
        let eta = self.path.eta(p);
        let f = flat_matrix(&w, &eta);
        let phi = self.path.primitive(p);
        (solve(&f, &(-&phi)), f, phi, eta)
    }
}

impl TimeDependentField for OmegaField<'_> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, s: f64, p: &[f64]) -> Vec<f64> {
        match self.solve_at(s, p).0 {
            Some(y) => y.iter().copied().collect(),
            None => vec![f64::NAN; self.dim],
        }
    }
}

/// Runs the omega-stage flow from `seeds` and measures its residuals.
fn run_omega(
    path: &dyn OmegaPath,
    dim: usize,
    seeds: &[Vec<f64>],
    m: &SubmanifoldSpec,
    opts: &StageOptions,
) -> Result<(FlowResult, Vec<CheckResult>), MoserError> {
    let field = OmegaField { path, dim };
    let mut solve_res = Worst::new();
    let mut eta_y = Worst::new();
    for p in seeds {
        for k in 0..=opts.steps {
            let s = k as f64 / opts.steps as f64;
            let (y, f, phi, eta) = field.solve_at(s, p);
            let Some(y) = y else {
                return Err(MoserError::NotCosymplecticOnPath { point: p.clone(), s });
            };
            solve_res.update(sup((&f * &y + &phi).iter().copied()), p);
            eta_y.update(eta.dot(&y).abs(), p);
        }
    }
    let flow = integrate_flow_with(&field, seeds, &flow_options(opts));
    let mut omega_res = Worst::new();
    let mut eta_res = Worst::new();
    let mut fixed = Worst::new();
    for (i, p) in seeds.iter().enumerate() {
        let (Some(fp), Some(jac)) = (flow.endpoint(i), flow.jacobians[i].as_ref()) else { continue };
        omega_res.update(pullback_2_residual(jac, &path.omega1(fp), &path.omega0(p)), p);
        eta_res.update(pullback_1_residual(jac, &path.eta(fp), &path.eta(p)), p);
        if m.contains(p) {
            fixed.update(displacement(fp, p), p);
        }
    }
    let checks = vec![
        flow_complete(&flow),
        solve_res.check("flat_solve_residual", opts.solve_tol),
        eta_y.check("eta_of_y", opts.solve_tol),
        omega_res.check("f_pullback_omega", opts.tol),
        eta_res.check("f_pullback_eta", opts.tol),
        fixed.check("f_fixes_M", opts.fixed_tol),
    ];
    Ok((flow, checks))
}

fn unit(f: &PolyForm) -> bool {
    f.as_scalar().is_some_and(|g| g.is_constant() && g.constant_term().is_one())
}

/// Deforms `Ω_0` into `Ω_1` relative to `M` with `η` and the Reeb field `ξ`
/// shared: `f*Ω_1 ≈ Ω_0`, `f*η ≈ η` and `f|_M = id` are certified at the seeds.
pub fn omega_stage(
    omega0: &PolyForm,
    omega1: &PolyForm,
    eta: &PolyForm,
    xi: &PolyVectorField,
    m: &SubmanifoldSpec,
    opts: &StageOptions,
) -> Result<OmegaStage, MoserError> {
    same_chart(&[omega0, omega1, eta], m)?;
    expect_degree(omega0, 2)?;
    expect_degree(omega1, 2)?;
    expect_degree(eta, 1)?;
    if xi.chart() != eta.chart() {
        return Err(MoserError::ChartMismatch);
    }
    if !omega0.interior(xi)?.is_zero() || !omega1.interior(xi)?.is_zero() || !unit(&eta.interior(xi)?) {
        return Err(MoserError::ReebMismatch);
    }
    let (seeds_q, seeds) = sample_seeds(eta.chart().dim(), opts);
    require_cosymplectic("0", omega0, eta, &seeds_q)?;
    require_cosymplectic("1", omega1, eta, &seeds_q)?;
    omega_stage_from(omega0, omega1, eta, xi, m, opts, &seeds)
}

fn omega_stage_from(
    omega0: &PolyForm,
    omega1: &PolyForm,
    eta: &PolyForm,
    xi: &PolyVectorField,
    m: &SubmanifoldSpec,
    opts: &StageOptions,
    seeds: &[Vec<f64>],
) -> Result<OmegaStage, MoserError> {
    let w = omega1.sub(omega0)?;
    let phi = if w.is_zero() { PolyForm::zero(w.chart(), 1) } else { reeb_primitive(&w, m, xi)? };
    let path = PolyOmegaPath { omega0, omega1, eta, phi: &phi };
    let (flow, run_checks) = run_omega(&path, eta.chart().dim(), seeds, m, opts)?;
    let mut checks = vec![
        CheckResult::exact("moser_integrand_exact", phi.d() == w),
        CheckResult::exact("reeb_contraction_exact", phi.interior(xi)?.is_zero()),
    ];
    checks.extend(run_checks);
    let report = stage_report("omega-stage", checks, opts, seeds.len());
    Ok(OmegaStage { phi: Some(phi), flow, report })
}

fn prefixed(prefix: &str, checks: &[CheckResult]) -> Vec<CheckResult> {
    checks
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.name = format!("{prefix}.{}", c.name);
            c
        })
        .collect()
}

/// Runs both stages and certifies the composite `ψ = f ∘ g`:
/// `ψ*Ω_1 ≈ Ω_0`, `ψ*η_1 ≈ η_0` and `ψ|_M = id` at the seeds.
pub fn verify_equivalence(
    omega0: &PolyForm,
    eta0: &PolyForm,
    omega1: &PolyForm,
    eta1: &PolyForm,
    m: &SubmanifoldSpec,
    opts: &StageOptions,
) -> Result<VerifiedEquivalence, MoserError> {
    equivalence(omega0, eta0, omega1, eta1, m, opts, true)
}

fn equivalence(
    omega0: &PolyForm,
    eta0: &PolyForm,
    omega1: &PolyForm,
    eta1: &PolyForm,
    m: &SubmanifoldSpec,
    opts: &StageOptions,
    exact_transport: bool,
) -> Result<VerifiedEquivalence, MoserError> {
    same_chart(&[omega0, eta0, omega1, eta1], m)?;
    if !omega0.d().is_zero() || !omega1.d().is_zero() {
        return Err(MoserError::NotClosed);
    }
    if !omega1.sub(omega0)?.vanishes_on(m.vanishing()) {
        return Err(MoserError::NonvanishingOnM);
    }
    let eta = eta_stage(eta0, eta1, omega0, omega1, m, opts)?;
    let chart = eta0.chart();
    let n = chart.dim();
    let xi1 = match ReebField::of(omega1, eta1)? {
        ReebField::Polynomial(v) => v,
        ReebField::Pointwise { .. } => return Err(MoserError::XiNotCoordinate),
    };
    let tau = xi1.as_coordinate().expect("polynomial Reeb fields are coordinate fields");
    let phi = eta.field.phi();
    let shared_reeb = eta.field.interpolation().xi0.as_polynomial() == Some(&xi1);
    let transport = if !exact_transport {
        Transport::Numeric
    } else if eta.nu.is_zero() {
        Transport::Identity
    } else if shared_reeb && !phi.depends_on(tau) {
        Transport::Shear { coordinate: chart.name(tau).to_string() }
    } else {
        Transport::Numeric
    };

    let images: Vec<usize> = (0..eta.flow.seeds.len()).filter(|&i| eta.flow.endpoint(i).is_some()).collect();
    let omega_seeds: Vec<Vec<f64>> = images.iter().map(|&i| eta.flow.endpoint(i).unwrap().to_vec()).collect();
    let omega = match &transport {
        Transport::Identity | Transport::Shear { .. } => {
            let bar = match transport {
                Transport::Identity => omega0.clone(),
                _ => {
                    let comps = (0..n)
                        .map(|i| if i == tau { &PolyScalar::var(n, i) + phi } else { PolyScalar::var(n, i) })
                        .collect();
                    omega0.pullback(&PolyMap::new(chart, chart, comps)?)?
                }
            };
            if !bar.interior(&xi1)?.is_zero() || !omega1.interior(&xi1)?.is_zero() || !unit(&eta1.interior(&xi1)?) {
                return Err(MoserError::ReebMismatch);
            }
            omega_stage_from(&bar, omega1, eta1, &xi1, m, opts, &omega_seeds)?
        }
        Transport::Numeric => {
            let path = TransportedPath {
                eta_field: &eta.field,
                omega0,
                omega1,
                eta1,
                vanishing: m.vanishing().to_vec(),
                backward: FlowOptions {
                    steps: opts.steps,
                    t_start: 1.0,
                    t_end: 0.0,
                    jacobians: false,
                    keep_trajectories: false,
                    ..FlowOptions::default()
                },
                nodes: opts.quadrature_nodes,
            };
            let (flow, checks) = run_omega(&path, n, &omega_seeds, m, opts)?;
            let report = stage_report("omega-stage", checks, opts, omega_seeds.len());
            OmegaStage { phi: None, flow, report }
        }
    };

    let mut psi_omega = Worst::new();
    let mut psi_eta = Worst::new();
    let mut psi_fixed = Worst::new();
    for (j, &i) in images.iter().enumerate() {
        let p = &eta.flow.seeds[i];
        let (Some(dg), Some(fp), Some(df)) =
            (eta.flow.jacobians[i].as_ref(), omega.flow.endpoint(j), omega.flow.jacobians[j].as_ref())
        else {
            psi_omega.update(f64::NAN, p);
            continue;
        };
        let dpsi = df * dg;
        psi_omega.update(pullback_2_residual(&dpsi, &eval_matrix(omega1, fp), &eval_matrix(omega0, p)), p);
        psi_eta.update(pullback_1_residual(&dpsi, &eval_covector(eta1, fp), &eval_covector(eta0, p)), p);
        if m.contains(p) {
            psi_fixed.update(displacement(fp, p), p);
        }
    }
    if images.len() < eta.flow.seeds.len() {
        psi_omega.update(f64::NAN, &eta.flow.seeds[(0..eta.flow.seeds.len()).find(|i| !images.contains(i)).unwrap()]);
    }

    let transport_detail = match &transport {
        Transport::Identity => "identity".to_string(),
        Transport::Shear { coordinate } => format!("shear along {coordinate}"),
        Transport::Numeric => "numerical backward flow".to_string(),
    };
    let mut checks = vec![CheckResult::exact("transport", true).with_detail(transport_detail)];
    checks.extend(prefixed("eta_stage", &eta.report.checks));
    checks.extend(prefixed("omega_stage", &omega.report.checks));
    checks.push(psi_omega.check("psi_pullback_omega", opts.tol));
    checks.push(psi_eta.check("psi_pullback_eta", opts.tol));
    checks.push(psi_fixed.check("psi_fixes_M", opts.fixed_tol));
    let report = stage_report("moser", checks, opts, eta.flow.seeds.len());
    Ok(VerifiedEquivalence { report, transport, eta, omega })
}
