use nalgebra::{DMatrix, DVector};

use crate::forms::{PolyForm, PolyScalar, PolyVectorField};
use crate::rational;

use super::numeric::gauss_legendre;
use super::{MoserError, SubmanifoldSpec};

/// True iff the pullback of `w` to `M` vanishes: every term without a
/// differential of a vanishing coordinate has a coefficient in their ideal.
pub fn pullback_vanishes(w: &PolyForm, m: &SubmanifoldSpec) -> bool {
    let v = m.vanishing();
    w.terms().filter(|(idx, _)| !idx.iter().any(|i| v.contains(i))).all(|(_, f)| f.in_ideal(v))
}

/// `∫_0^1 (1/s) h_s*(i_E w) ds` where `h_s` scales the coordinates in `scaled`
/// by `s` and `E` is their Euler field. Each term of `i_E w` with a monomial of
/// degree `a` and `c` differentials in the scaled coordinates contributes its
/// coefficient divided by `a + c`.
fn scaling_homotopy(w: &PolyForm, scaled: &[usize]) -> Result<PolyForm, MoserError> {
    let chart = w.chart();
    let n = chart.dim();
    let mut euler = vec![PolyScalar::zero(n); n];
    for &v in scaled {
        euler[v] = PolyScalar::var(n, v);
    }
    let contracted = w.interior(&PolyVectorField::new(chart, euler)?)?;
    let mut out = PolyForm::zero(chart, w.degree() - 1);
    for (idx, f) in contracted.terms() {
        let c = idx.iter().filter(|i| scaled.contains(i)).count() as u32;
        let mut g = PolyScalar::zero(n);
        for (e, coeff) in f.terms() {
            let a: u32 = scaled.iter().map(|&v| e[v]).sum();
            // every monomial of i_E w carries at least one scaled variable
            let denom = rational::int(i64::from(a + c));
            g.add_term(e.clone(), coeff / denom);
        }
        out.add_term(idx, g);
    }
    Ok(out)
}

/// A primitive of a closed form whose pullback to `M` vanishes, itself
/// vanishing at `M`, from the radial homotopy towards `M`.
pub fn poincare_primitive(w: &PolyForm, m: &SubmanifoldSpec) -> Result<PolyForm, MoserError> {
    m.check_chart(w.chart())?;
    if w.degree() == 0 {
        return Err(MoserError::DegreeZero);
    }
    if !w.d().is_zero() {
        return Err(MoserError::NotClosed);
    }
    if !pullback_vanishes(w, m) {
        return Err(MoserError::NonvanishingOnM);
    }
    scaling_homotopy(w, m.vanishing())
}

/// Like [`poincare_primitive`] for a form with `i_ξ w = 0`, where `ξ` is a
/// coordinate field; the result also satisfies `i_ξ φ = 0`. The form must
/// vanish at `M` as a form on the ambient tangent spaces.
pub fn reeb_primitive(w: &PolyForm, m: &SubmanifoldSpec, xi: &PolyVectorField) -> Result<PolyForm, MoserError> {
    m.check_chart(w.chart())?;
    let tau = xi.as_coordinate().ok_or(MoserError::XiNotCoordinate)?;
    if m.vanishing().contains(&tau) {
        return Err(MoserError::TimeInVanishingSet(w.chart().name(tau).to_string()));
    }
    if w.degree() == 0 {
        return Err(MoserError::DegreeZero);
    }
    if !w.d().is_zero() {
        return Err(MoserError::NotClosed);
    }
    if !w.interior(xi)?.is_zero() {
        return Err(MoserError::ReebContractionNonzero);
    }
    if !w.vanishes_on(m.vanishing()) {
        return Err(MoserError::NonvanishingOnM);
    }
    scaling_homotopy(w, m.vanishing())
}

/// Numerical version of the homotopy for a 2-form known only pointwise:
/// `φ_q = -∫_0^1 S_s W(h_s q) E_q ds`, with `S_s` the scaling matrix and
/// `E_q` the Euler field of the scaled coordinates at `q`.
pub fn numeric_primitive<W>(two_form: W, scaled: &[usize], q: &[f64], nodes: usize) -> DVector<f64>
where
    W: Fn(&[f64]) -> DMatrix<f64>,
{
    let n = q.len();
    let mut e = DVector::zeros(n);
    for &v in scaled {
        e[v] = q[v];
    }
    let mut acc = DVector::zeros(n);
    for (s, weight) in gauss_legendre(nodes) {
        let mut hq = q.to_vec();
        for &v in scaled {
            hq[v] *= s;
        }
        let mut term = two_form(&hq) * &e;
        for &v in scaled {
            term[v] *= s;
        }
        acc -= term * weight;
    }
    acc
}

/// Exact integrand check: `d φ = w`.
pub fn is_primitive(phi: &PolyForm, w: &PolyForm) -> bool {
    phi.d() == *w
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Chart;
    use crate::rational::ratio;

    fn plane() -> Chart {
        Chart::new(["x", "y"], None).unwrap()
    }

    #[test]
    fn area_form_at_origin() {
        let c = plane();
        let w = PolyForm::dx(&c, 0).wedge(&PolyForm::dx(&c, 1)).unwrap();
        let m = SubmanifoldSpec::new(&c, &["x", "y"]).unwrap();
        let phi = poincare_primitive(&w, &m).unwrap();
        let x = PolyScalar::var(2, 0).scale(&ratio(1, 2));
        let y = PolyScalar::var(2, 1).scale(&ratio(-1, 2));
        let expected = PolyForm::from_terms(&c, 1, [(vec![1], x), (vec![0], y)]).unwrap();
        assert_eq!(phi, expected);
        assert!(is_primitive(&phi, &w));
    }

    #[test]
    fn zero_and_exact_one_form() {
        let c = plane();
        let m = SubmanifoldSpec::new(&c, &["x", "y"]).unwrap();
        assert!(poincare_primitive(&PolyForm::zero(&c, 2), &m).unwrap().is_zero());
        let w = PolyForm::basis(&c, &[0], PolyScalar::var(2, 0));
        let phi = poincare_primitive(&w, &m).unwrap();
        let x = PolyScalar::var(2, 0);
        assert_eq!(phi.as_scalar().unwrap(), (&x * &x).scale(&ratio(1, 2)));
    }

    #[test]
    fn rejects_open_and_nonvanishing_forms() {
        let c = plane();
        let m = SubmanifoldSpec::new(&c, &["x"]).unwrap();
        let open = PolyForm::basis(&c, &[0], PolyScalar::var(2, 1));
        assert_eq!(poincare_primitive(&open, &m), Err(MoserError::NotClosed));
        let dy = PolyForm::dx(&c, 1);
        assert_eq!(poincare_primitive(&dy, &m), Err(MoserError::NonvanishingOnM));
    }

    #[test]
    fn reeb_variant_example() {
        let c = Chart::new(["x", "y", "t"], Some(2)).unwrap();
        let x = PolyScalar::var(3, 0);
        let y = PolyScalar::var(3, 1);
        let w = PolyForm::basis(&c, &[0, 1], x.clone());
        let m = SubmanifoldSpec::new(&c, &["x", "y"]).unwrap();
        let xi = PolyVectorField::coordinate(&c, 2);
        let phi = reeb_primitive(&w, &m, &xi).unwrap();
        let third = ratio(1, 3);
        let expected = PolyForm::from_terms(
            &c,
            1,
            [(vec![1], (&x * &x).scale(&third)), (vec![0], (&x * &y).scale(&-third.clone()))],
        )
        .unwrap();
        assert_eq!(phi, expected);
        assert!(is_primitive(&phi, &w));
        assert!(phi.interior(&xi).unwrap().is_zero());

        assert!(reeb_primitive(&PolyForm::zero(&c, 2), &m, &xi).unwrap().is_zero());
        let area = PolyForm::dx(&c, 0).wedge(&PolyForm::dx(&c, 1)).unwrap();
        assert_eq!(reeb_primitive(&area, &m, &xi), Err(MoserError::NonvanishingOnM));
        let skew = PolyVectorField::new(&c, vec![PolyScalar::zero(3), PolyScalar::one(3), PolyScalar::one(3)]).unwrap();
        assert_eq!(reeb_primitive(&w, &m, &skew), Err(MoserError::XiNotCoordinate));
        let tilted = PolyForm::basis(&c, &[0, 2], x);
        assert_eq!(reeb_primitive(&tilted, &m, &xi), Err(MoserError::ReebContractionNonzero));
    }

    #[test]
    fn numeric_homotopy_matches_exact() {
        let c = Chart::new(["x", "y", "t"], Some(2)).unwrap();
        let x = PolyScalar::var(3, 0);
        let w = PolyForm::basis(&c, &[0, 1], &x * &x);
        let m = SubmanifoldSpec::new(&c, &["x"]).unwrap();
        let exact = reeb_primitive(&w, &m, &PolyVectorField::coordinate(&c, 2)).unwrap();
        let q = [0.3, -0.2, 0.1];
        let got = numeric_primitive(|p| super::super::numeric::eval_matrix(&w, p), m.vanishing(), &q, 6);
        let want = super::super::numeric::eval_covector(&exact, &q);
        assert!((got - want).amax() < 1e-14);
    }
}
