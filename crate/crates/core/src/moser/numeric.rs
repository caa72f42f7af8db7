//! Floating-point evaluation helpers for the flow code.

use nalgebra::{DMatrix, DVector};

use crate::forms::{PolyForm, PolyScalar};

pub fn eval_matrix(form: &PolyForm, p: &[f64]) -> DMatrix<f64> {
    let n = form.chart().dim();
    let mut m = DMatrix::zeros(n, n);
    for (idx, f) in form.terms() {
        let c = f.eval_f64(p);
        m[(idx[0], idx[1])] = c;
        m[(idx[1], idx[0])] = -c;
    }
    m
}

pub fn eval_covector(form: &PolyForm, p: &[f64]) -> DVector<f64> {
    let mut v = DVector::zeros(form.chart().dim());
    for (idx, f) in form.terms() {
        v[idx[0]] = f.eval_f64(p);
    }
    v
}

/// `F = Ωᵀ + η ηᵀ`, the matrix of `X ↦ i_X Ω + η(X) η`.
pub fn flat_matrix(omega: &DMatrix<f64>, eta: &DVector<f64>) -> DMatrix<f64> {
    omega.transpose() + eta * eta.transpose()
}

/// Solves `F x = rhs`, or `None` when `F` is numerically singular.
pub fn solve(f: &DMatrix<f64>, rhs: &DVector<f64>) -> Option<DVector<f64>> {
    let scale = f.amax().max(1.0);
    let lu = f.clone().lu();
    let det = lu.determinant();
    if !det.is_finite() || det.abs() <= 1e-13 * scale.powi(f.nrows() as i32) {
        return None;
    }
    lu.solve(rhs)
}

/// Reeb vector `♭⁻¹(η)` at a point.
pub fn reeb_at(omega: &DMatrix<f64>, eta: &DVector<f64>) -> Option<DVector<f64>> {
    solve(&flat_matrix(omega, eta), eta)
}

/// Jacobian matrix of a polynomial map at a point.
pub fn poly_jacobian(components: &[PolyScalar], p: &[f64]) -> DMatrix<f64> {
    let n = p.len();
    DMatrix::from_fn(components.len(), n, |i, j| components[i].derivative(j).eval_f64(p))
}

pub fn sup(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| if x.is_nan() { f64::NAN } else { m.max(x.abs()) })
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Newton iteration on P_n from the Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}
