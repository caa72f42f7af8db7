use std::fs;
use std::path::{Path, PathBuf};

use coiso::coslinalg::text::{format_matrix, parse_covector, parse_matrix};
use coiso::coslinalg::{darboux_precosymplectic, darboux_presymplectic, CosymplecticLinearData, DarbouxBasis, SkewForm};
use coiso::forms::PolyForm;
use coiso::moser::{verify_equivalence, StageOptions, SubmanifoldSpec, Transport};
use coiso::rational::{self, Q};
use coiso::report::{CheckResult, EquivalenceReport};
use coiso::thicken::{
    check_structure, choose_complement, thickened_structure, verify_embedding_with, ComplementPolicy,
    EmbeddingCheckOptions, PrecosymplecticChartStructure, ThickenedStructure,
};

use crate::manifest::{parse_complement_text, Manifest, Verification};
use crate::report::{Parameters, Report, Status, Summary};
use crate::CliError;

/// Sample cap for `check`; a 5-point grid fills it up to dimension 4.
const CHECK_CAP: usize = 729;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check { manifest: PathBuf },
    Darboux { matrix: PathBuf, eta: Option<PathBuf> },
    /// `complement` is `coordinate` or the path of a complement table.
    Embed { manifest: PathBuf, complement: Option<String>, out: PathBuf },
    VerifyEmbed { manifest: PathBuf, thickened: PathBuf },
    Moser { m0: PathBuf, m1: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Darboux { .. } => "darboux",
            Command::Embed { .. } => "embed",
            Command::VerifyEmbed { .. } => "verify-embed",
            Command::Moser { .. } => "moser",
        }
    }
}

/// Command-line values that replace the manifest's verification settings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub radius: Option<Q>,
    pub grid: Option<usize>,
    pub steps: Option<usize>,
    pub tol: Option<f64>,
}

impl Overrides {
    fn apply(&self, v: &Verification) -> Verification {
        Verification {
            radius: self.radius.clone().unwrap_or_else(|| v.radius.clone()),
            grid: self.grid.unwrap_or(v.grid),
            steps: self.steps.unwrap_or(v.steps),
            tol: self.tol.unwrap_or(v.tol),
        }
    }
}

/// Runs a command and returns its report with the process exit code.
pub fn run(cmd: &Command, overrides: &Overrides) -> (Report, i32) {
    let result = match cmd {
        Command::Check { manifest } => check(manifest, overrides),
        Command::Darboux { matrix, eta } => darboux(matrix, eta.as_deref()),
        Command::Embed { manifest, complement, out } => embed(manifest, complement.as_deref(), out, overrides),
        Command::VerifyEmbed { manifest, thickened } => verify_embed(manifest, thickened, overrides),
        Command::Moser { m0, m1 } => moser(m0, m1, overrides),
    };
    match result {
        Ok(report) => {
            let code = if report.status == Status::Pass { 0 } else { 1 };
            (report, code)
        }
        Err(e) => (Report::error(cmd.name(), e.info()), e.exit_code()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Read { path: path.to_path_buf(), message: e.to_string() })
}

fn read_manifest(path: &Path) -> Result<Manifest, CliError> {
    Manifest::parse(&read(path)?).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn parameters(report: &EquivalenceReport, tol: Option<f64>) -> Parameters {
    Parameters {
        radius: report.radius.clone(),
        grid: report.grid,
        steps: report.steps,
        tol,
        samples: report.samples,
    }
}

fn check(path: &Path, overrides: &Overrides) -> Result<Report, CliError> {
    let m = read_manifest(path)?;
    let v = overrides.apply(&m.verification);
    let (summary, inner) = check_structure(&m.chart, &m.omega, &m.eta, &v.radius, v.grid, CHECK_CAP)?;
    let mut report = Report::from_checks("check", inner.checks.clone());
    report.parameters = Some(parameters(&inner, None));
    report.summary = Some(Summary::Structure {
        kind: summary.kind,
        p: summary.p,
        k: summary.k,
        reeb: summary.reeb,
        darboux: summary.darboux,
    });
    Ok(report)
}

fn darboux(matrix: &Path, eta: Option<&Path>) -> Result<Report, CliError> {
    let text_err = |path: &Path, e: coiso::coslinalg::text::TextError| CliError::Parse(format!("{}: {e}", path.display()));
    let mat = parse_matrix(&read(matrix)?).map_err(|e| text_err(matrix, e))?;
    let n = mat.rows();
    let (basis, mut checks): (DarbouxBasis, Vec<CheckResult>) = match eta {
        None => {
            let f = SkewForm::new(mat)?;
            let b = darboux_presymplectic(&f);
            let canonical = &f.congruence(&b.basis) == SkewForm::canonical(n, b.p).matrix();
            (b, vec![CheckResult::exact("congruence_canonical", canonical)])
        }
        Some(path) => {
            let eta = parse_covector(&read(path)?).map_err(|e| text_err(path, e))?;
            let data = CosymplecticLinearData::from_parts(mat, eta)?;
            let b = darboux_precosymplectic(&data)?;
            let canonical = &data.omega().congruence(&b.basis) == SkewForm::canonical(n, b.p).matrix();
            let normalised = (0..n).all(|j| {
                let expected = if Some(j) == b.time_column { rational::one() } else { rational::zero() };
                data.eta_of(&b.column(j)) == expected
            });
            (
                b,
                vec![
                    CheckResult::exact("congruence_canonical", canonical),
                    CheckResult::exact("eta_dual_to_time_column", normalised),
                ],
            )
        }
    };
    checks.push(CheckResult::exact("basis_invertible", basis.basis.rank() == n));
    let mut report = Report::from_checks("darboux", checks);
    report.summary = Some(Summary::Darboux {
        p: basis.p,
        k: basis.k,
        time_column: basis.time_column,
        basis: format_matrix(&basis.basis).lines().map(str::to_string).collect(),
    });
    Ok(report)
}

fn base_structure(m: &Manifest) -> Result<PrecosymplecticChartStructure, CliError> {
    Ok(PrecosymplecticChartStructure::from_forms(&m.chart, m.omega.clone(), m.eta.clone())?)
}

fn embedding_report(
    command: &str,
    t: &ThickenedStructure,
    s: &PrecosymplecticChartStructure,
    v: &Verification,
) -> Result<Report, CliError> {
    let opts = EmbeddingCheckOptions { radius: v.radius.clone(), grid: v.grid, ..Default::default() };
    let inner = verify_embedding_with(t, s, &opts)?;
    let mut report = Report::from_checks(command, inner.checks.clone());
    report.parameters = Some(parameters(&inner, None));
    report.summary = Some(Summary::Embedding {
        base_dim: t.base_dim(),
        fiber: t.chart().names()[t.base_dim()..].to_vec(),
        largest_passing_radius: inner.largest_passing_radius.clone(),
    });
    Ok(report)
}

fn embed(path: &Path, complement: Option<&str>, out: &Path, overrides: &Overrides) -> Result<Report, CliError> {
    let m = read_manifest(path)?;
    let v = overrides.apply(&m.verification);
    let s = base_structure(&m)?;
    let policy = match complement {
        Some("coordinate") => ComplementPolicy::Coordinate,
        Some(file) => {
            let file = Path::new(file);
            let table = parse_complement_text(&m.chart, &read(file)?)
                .map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))?;
            ComplementPolicy::Custom(table)
        }
        None => match &m.complement {
            Some(table) => ComplementPolicy::Custom(table.clone()),
            None => ComplementPolicy::Coordinate,
        },
    };
    let choice = choose_complement(&s, policy)?;
    let t = thickened_structure(&s, &choice)?;
    let mut report = embedding_report("embed", &t, &s, &v)?;
    let text = Manifest::from_thickened(&t, v).to_text();
    fs::write(out, text).map_err(|e| CliError::Write { path: out.to_path_buf(), message: e.to_string() })?;
    report.artifacts.push(out.display().to_string());
    Ok(report)
}

fn verify_embed(path: &Path, thickened: &Path, overrides: &Overrides) -> Result<Report, CliError> {
    let m = read_manifest(path)?;
    let v = overrides.apply(&m.verification);
    let s = base_structure(&m)?;
    let t = read_manifest(thickened)?.thickened_structure()?;
    embedding_report("verify-embed", &t, &s, &v)
}

fn moser(p0: &Path, p1: &Path, overrides: &Overrides) -> Result<Report, CliError> {
    let m0 = read_manifest(p0)?;
    let m1 = read_manifest(p1)?;
    let labels = match (&m0.submanifold, &m1.submanifold) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::Usage("the two manifests name different submanifolds".into()));
        }
        (Some(a), _) | (None, Some(a)) => a.clone(),
        (None, None) => return Err(CliError::Usage("moser needs a submanifold in one of the manifests".into())),
    };
    let spec = SubmanifoldSpec::new(&m0.chart, &labels)?;
    let v = overrides.apply(&m0.verification);
    let opts = StageOptions { radius: v.radius.clone(), grid: v.grid, steps: v.steps, tol: v.tol, ..Default::default() };
    let eq = verify_equivalence(&m0.omega, &m0.eta, &m1.omega, &m1.eta, &spec, &opts)?;
    let mut report = Report::from_checks("moser", eq.report.checks.clone());
    report.parameters = Some(parameters(&eq.report, Some(v.tol)));
    let transport = match &eq.transport {
        Transport::Identity => "identity".to_string(),
        Transport::Shear { coordinate } => format!("shear:{coordinate}"),
        Transport::Numeric => "numeric".to_string(),
    };
    let phi = PolyForm::scalar(&m0.chart, eq.eta.field.phi().clone());
    report.summary = Some(Summary::Moser { transport, primitive_eta: phi.to_string() });
    Ok(report)
}
