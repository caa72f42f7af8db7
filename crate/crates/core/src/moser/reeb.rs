use nalgebra::DVector;
use num_traits::One;

use crate::forms::{Chart, PolyForm, PolyScalar, PolyVectorField};

use super::numeric::{eval_covector, eval_matrix, reeb_at};
use super::MoserError;

/// The Reeb field of a cosymplectic pair: exact when some coordinate field
/// satisfies `i_ξ Ω = 0, η(ξ) = 1` identically, otherwise solved pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReebField {
    Polynomial(PolyVectorField),
    Pointwise { omega: PolyForm, eta: PolyForm },
}

impl ReebField {
    pub fn of(omega: &PolyForm, eta: &PolyForm) -> Result<Self, MoserError> {
        let chart = omega.chart();
        if eta.chart() != chart {
            return Err(MoserError::ChartMismatch);
        }
        // prefer the chart's time coordinate, then any other coordinate
        let order: Vec<usize> = chart.time_index().into_iter().chain(0..chart.dim()).collect();
        for i in order {
            let v = PolyVectorField::coordinate(chart, i);
            let unit = eta.interior(&v)?.as_scalar().is_some_and(|f| f.is_constant() && f.constant_term().is_one());
            if unit && omega.interior(&v)?.is_zero() {
                return Ok(ReebField::Polynomial(v));
            }
        }
        Ok(ReebField::Pointwise { omega: omega.clone(), eta: eta.clone() })
    }

    pub fn as_polynomial(&self) -> Option<&PolyVectorField> {
        match self {
            ReebField::Polynomial(v) => Some(v),
            ReebField::Pointwise { .. } => None,
        }
    }

    /// Value at a point; `None` where the pair degenerates.
    pub fn eval(&self, p: &[f64]) -> Option<DVector<f64>> {
        match self {
            ReebField::Polynomial(v) => Some(DVector::from_vec(v.eval_f64(p))),
            ReebField::Pointwise { omega, eta } => reeb_at(&eval_matrix(omega, p), &eval_covector(eta, p)),
        }
    }
}

/// `ξ_s = a(s) ξ_0 + b(s) ξ_1` with `a(s) = (1 − s + s η_1(ξ_0))(1 − s)` and
/// `b(s) = (s + (1 − s) η_0(ξ_1)) s`, normalised to `N_s = ξ_s / η_s(ξ_s)` for
/// `η_s = η_0 + s (η_1 − η_0)`.
#[derive(Clone, Debug)]
pub struct ReebInterpolation {
    pub xi0: ReebField,
    pub xi1: ReebField,
    eta0: PolyForm,
    eta1: PolyForm,
}

/// Pointwise values of the interpolation at `(p, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationValue {
    pub a: f64,
    pub b: f64,
    pub xi: DVector<f64>,
    /// `η_s(ξ_s)`, which must stay positive.
    pub denominator: f64,
    pub n: DVector<f64>,
}

impl ReebInterpolation {
    pub fn new(omega0: &PolyForm, eta0: &PolyForm, omega1: &PolyForm, eta1: &PolyForm) -> Result<Self, MoserError> {
        Ok(ReebInterpolation {
            xi0: ReebField::of(omega0, eta0)?,
            xi1: ReebField::of(omega1, eta1)?,
            eta0: eta0.clone(),
            eta1: eta1.clone(),
        })
    }

    /// `a` and `b` as polynomials in `(chart coordinates, s)`, available when
    /// both Reeb fields are polynomial.
    pub fn coefficient_polynomials(&self) -> Option<(PolyScalar, PolyScalar)> {
        let xi0 = self.xi0.as_polynomial()?;
        let xi1 = self.xi1.as_polynomial()?;
        let n = self.eta0.chart().dim();
        let widen = |f: PolyScalar| f.reindex(&(0..n).collect::<Vec<_>>(), n + 1);
        let e1x0 = widen(self.eta1.interior(xi0).ok()?.as_scalar()?);
        let e0x1 = widen(self.eta0.interior(xi1).ok()?.as_scalar()?);
        let s = PolyScalar::var(n + 1, n);
        let one = PolyScalar::one(n + 1);
        let one_minus_s = &one - &s;
        let a = &(&one_minus_s + &(&s * &e1x0)) * &one_minus_s;
        let b = &(&s + &(&one_minus_s * &e0x1)) * &s;
        Some((a, b))
    }

    pub fn eval(&self, p: &[f64], s: f64) -> Option<InterpolationValue> {
        let xi0 = self.xi0.eval(p)?;
        let xi1 = self.xi1.eval(p)?;
        let e0 = eval_covector(&self.eta0, p);
        let e1 = eval_covector(&self.eta1, p);
        let a = (1.0 - s + s * e1.dot(&xi0)) * (1.0 - s);
        let b = (s + (1.0 - s) * e0.dot(&xi1)) * s;
        let xi = &xi0 * a + &xi1 * b;
        let eta_s = &e0 * (1.0 - s) + &e1 * s;
        let denominator = eta_s.dot(&xi);
        let n = &xi / denominator;
        Some(InterpolationValue { a, b, xi, denominator, n })
    }

    pub fn chart(&self) -> &Chart {
        self.eta0.chart()
    }
}
