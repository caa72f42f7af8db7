//! Coisotropic thickening of a precosymplectic structure.
//!
//! Given `(Ω, η)` on a chart with Darboux coordinates `(x^1..x^{2p}, t, z^1..z^k)`,
//! the thickening lives on the chart `(x, t, z, b_1..b_k)` of the dual of the
//! characteristic bundle `K = ker Ω ∩ ker η`. With a complement `G ∋ ∂t` of `K`
//! described by a table `A^r_i`, the Liouville form is
//! `λ = Σ_r b_r (dz^r + Σ_i A^r_i dx^i)` and the thickened pair is
//! `Ω_G = π*Ω + dλ`, `η_G = π*η`.

mod check;
mod complement;
mod verify;

use thiserror::Error;

use crate::coslinalg::CoslinalgError;
use crate::forms::{Chart, FormsError, PolyForm, PolyMap, PolyScalar, PolyVectorField};

pub use check::{check_structure, StructureSummary};
pub use complement::{choose_complement, liouville_form, ComplementChoice, ComplementPolicy, ComplementTable};
pub use verify::{bisect_radius, verify_embedding, verify_embedding_with, EmbeddingCheckOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThickenError {
    #[error("structure is not in Darboux form: {0}")]
    NotDarboux(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Linear(#[from] CoslinalgError),
    #[error("complement table has the wrong shape: {0}")]
    ComplementShape(String),
    #[error("complement coefficient A[{r}][{i}] depends on the time coordinate")]
    TimeDependentComplement { r: usize, i: usize },
    #[error("complement coefficient depends on a fiber coordinate")]
    FiberDependentComplement,
    #[error("the projection of the Reeb field to K must vanish, but C[{0}] is nonzero")]
    NonzeroTimeComponent(usize),
    #[error("thickened structure does not match its base: {0}")]
    Inconsistent(String),
}

/// A precosymplectic pair given in Darboux coordinates: `Ω = Σ dx^{a_i} ∧ dx^{b_i}`
/// with constant unit coefficients on disjoint pairs and `η = dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecosymplecticChartStructure {
    chart: Chart,
    omega: PolyForm,
    eta: PolyForm,
    p: usize,
    k: usize,
    x: Vec<usize>,
    t: usize,
    z: Vec<usize>,
}

impl PrecosymplecticChartStructure {
    /// The model structure on `(x1..x{2p}, t, z1..zk)`.
    pub fn darboux(p: usize, k: usize) -> Self {
        let mut names: Vec<String> = (1..=2 * p).map(|i| format!("x{i}")).collect();
        names.push("t".into());
        names.extend((1..=k).map(|r| format!("z{r}")));
        let chart = Chart::new(names, Some(2 * p)).expect("labels are distinct");
        let n = chart.dim();
        let mut omega = PolyForm::zero(&chart, 2);
        for i in 0..p {
            omega.add_term(&[i, p + i], PolyScalar::one(n));
        }
        let eta = PolyForm::dx(&chart, 2 * p);
        Self::from_forms(&chart, omega, eta).expect("model structure is Darboux")
    }

    /// Recognises Darboux form. The x-block is ordered as the first members of
    /// the pairs (by chart position) followed by their partners.
    pub fn from_forms(chart: &Chart, omega: PolyForm, eta: PolyForm) -> Result<Self, ThickenError> {
        let n = chart.dim();
        let not = |m: &str| Err(ThickenError::NotDarboux(m.to_string()));
        if omega.chart() != chart || eta.chart() != chart {
            return not("forms live on a different chart");
        }
        if omega.degree() != 2 || eta.degree() != 1 {
            return not("expected a 2-form and a 1-form");
        }
        let one = PolyScalar::one(n);
        let mut eta_terms = eta.terms();
        let t = match (eta_terms.next(), eta_terms.next()) {
            (Some((idx, c)), None) if *c == one => idx[0],
            _ => return not("eta is not dt for a single coordinate t"),
        };
        if let Some(ti) = chart.time_index() {
            if ti != t {
                return not("eta is not the differential of the chart's time coordinate");
            }
        }
        let mut used = vec![false; n];
        used[t] = true;
        let mut pairs = Vec::new();
        for (idx, c) in omega.terms() {
            let (a, b) = (idx[0], idx[1]);
            if used[a] || used[b] {
                return not("omega terms share a coordinate or involve t");
            }
            used[a] = true;
            used[b] = true;
            if *c == one {
                pairs.push((a, b));
            } else if *c == -one.clone() {
                pairs.push((b, a));
            } else {
                return not("omega has a coefficient other than 1 or -1");
            }
        }
        pairs.sort();
        let p = pairs.len();
        let mut x: Vec<usize> = pairs.iter().map(|&(a, _)| a).collect();
        x.extend(pairs.iter().map(|&(_, b)| b));
        let z: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
        let chart = if chart.time_index().is_some() { chart.clone() } else { Chart::new(chart.names().to_vec(), Some(t))? };
        let omega = PolyForm::from_terms(&chart, 2, omega.terms().map(|(i, c)| (i.clone(), c.clone())))?;
        let eta = PolyForm::dx(&chart, t);
        Ok(PrecosymplecticChartStructure { chart, omega, eta, p, k: z.len(), x, t, z })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn omega(&self) -> &PolyForm {
        &self.omega
    }

    pub fn eta(&self) -> &PolyForm {
        &self.eta
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// Chart positions of `x^1..x^{2p}`, with `x^i` paired to `x^{p+i}`.
    pub fn x_indices(&self) -> &[usize] {
        &self.x
    }

    pub fn time_index(&self) -> usize {
        self.t
    }

    pub fn z_indices(&self) -> &[usize] {
        &self.z
    }

    /// `ξ = ∂t`.
    pub fn reeb_field(&self) -> PolyVectorField {
        PolyVectorField::coordinate(&self.chart, self.t)
    }
}

/// The fields `∂/∂z^μ`, which span `ker Ω ∩ ker η` in Darboux coordinates.
pub fn characteristic_distribution(s: &PrecosymplecticChartStructure) -> Vec<PolyVectorField> {
    s.z.iter().map(|&i| PolyVectorField::coordinate(&s.chart, i)).collect()
}

/// Fiber labels `b1..bk`, prefixed further with `b` until they avoid the base labels.
pub fn fiber_labels(base: &Chart, k: usize) -> Vec<String> {
    (1..=k)
        .map(|r| {
            let mut label = format!("b{r}");
            while base.index_of(&label).is_some() {
                label.insert(0, 'b');
            }
            label
        })
        .collect()
}

/// `(Ω_G, η_G)` on the chart of `K*` together with the Liouville form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickenedStructure {
    chart: Chart,
    omega_g: PolyForm,
    eta_g: PolyForm,
    liouville: PolyForm,
    base_dim: usize,
    fiber_dim: usize,
}

impl ThickenedStructure {
    /// Reassembles a thickening from its parts; the first `base_dim` coordinates
    /// are the base and the rest are the fiber coordinates `b`.
    pub fn from_parts(
        chart: Chart,
        omega_g: PolyForm,
        eta_g: PolyForm,
        liouville: PolyForm,
        base_dim: usize,
    ) -> Result<Self, ThickenError> {
        if base_dim > chart.dim() {
            return Err(ThickenError::Inconsistent("base dimension exceeds chart dimension".into()));
        }
        for (f, d) in [(&omega_g, 2), (&eta_g, 1), (&liouville, 1)] {
            if f.chart() != &chart {
                return Err(ThickenError::Inconsistent("form on a different chart".into()));
            }
            if f.degree() != d {
                return Err(FormsError::DegreeMismatch { expected: d, found: f.degree() }.into());
            }
        }
        let fiber_dim = chart.dim() - base_dim;
        Ok(ThickenedStructure { chart, omega_g, eta_g, liouville, base_dim, fiber_dim })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn omega(&self) -> &PolyForm {
        &self.omega_g
    }

    pub fn eta(&self) -> &PolyForm {
        &self.eta_g
    }

    pub fn liouville(&self) -> &PolyForm {
        &self.liouville
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn fiber_indices(&self) -> std::ops::Range<usize> {
        self.base_dim..self.chart.dim()
    }

    /// The base chart: the first `base_dim` labels.
    pub fn base_chart(&self) -> Result<Chart, FormsError> {
        let (chart, _) = PolyMap::zero_locus_inclusion(&self.chart, &self.fiber_indices().collect::<Vec<_>>())?;
        Ok(chart)
    }

    /// Inclusion of the zero section `b = 0`.
    pub fn zero_section(&self) -> Result<PolyMap, FormsError> {
        let (_, map) = PolyMap::zero_locus_inclusion(&self.chart, &self.fiber_indices().collect::<Vec<_>>())?;
        Ok(map)
    }

    /// The bundle projection `(x, t, z, b) ↦ (x, t, z)`.
    pub fn projection(&self) -> Result<PolyMap, FormsError> {
        let base = self.base_chart()?;
        let n = self.chart.dim();
        let comps = (0..self.base_dim).map(|i| PolyScalar::var(n, i)).collect();
        PolyMap::new(&self.chart, &base, comps)
    }
}

/// `Ω_G = π*Ω + dλ`, `η_G = π*η`.
pub fn thickened_structure(
    s: &PrecosymplecticChartStructure,
    c: &ComplementChoice,
) -> Result<ThickenedStructure, ThickenError> {
    if c.base_chart() != s.chart() {
        return Err(ThickenError::Inconsistent("complement was chosen for another structure".into()));
    }
    let liouville = liouville_form(c)?;
    let chart = liouville.chart().clone();
    let base_map: Vec<usize> = (0..s.dim()).collect();
    let omega_g = s.omega.embed(&chart, &base_map).add(&liouville.d())?;
    let eta_g = s.eta.embed(&chart, &base_map);
    ThickenedStructure::from_parts(chart, omega_g, eta_g, liouville, s.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::serial;

    #[test]
    fn darboux_roles() {
        let s = PrecosymplecticChartStructure::darboux(1, 1);
        assert_eq!(s.chart().names(), &["x1", "x2", "t", "z1"]);
        assert_eq!((s.x_indices(), s.time_index(), s.z_indices()), (&[0, 1][..], 2, &[3][..]));
        assert_eq!(characteristic_distribution(&s).len(), 1);
        assert!(characteristic_distribution(&PrecosymplecticChartStructure::darboux(2, 0)).is_empty());
        assert_eq!(characteristic_distribution(&PrecosymplecticChartStructure::darboux(0, 2)).len(), 2);
    }

    #[test]
    fn recognises_permuted_darboux_form() {
        let c = Chart::new(["q", "t", "u", "v"], None).unwrap();
        let n = c.dim();
        let omega = PolyForm::basis(&c, &[0, 3], -PolyScalar::one(n));
        let s = PrecosymplecticChartStructure::from_forms(&c, omega, PolyForm::dx(&c, 1)).unwrap();
        assert_eq!((s.p(), s.k()), (1, 1));
        assert_eq!(s.x_indices(), &[3, 0]);
        assert_eq!(s.z_indices(), &[2]);
        assert_eq!(s.chart().time_index(), Some(1));
    }

    #[test]
    fn rejects_non_darboux() {
        let c = Chart::new(["x", "y", "t"], None).unwrap();
        let x = PolyScalar::var(3, 0);
        let omega = PolyForm::basis(&c, &[0, 1], &x + &PolyScalar::one(3));
        let r = PrecosymplecticChartStructure::from_forms(&c, omega, PolyForm::dx(&c, 2));
        assert!(matches!(r, Err(ThickenError::NotDarboux(_))));
        let omega = PolyForm::basis(&c, &[0, 1], PolyScalar::one(3));
        let r = PrecosymplecticChartStructure::from_forms(&c, omega, PolyForm::dx(&c, 0).scale(&crate::rational::int(2)));
        assert!(matches!(r, Err(ThickenError::NotDarboux(_))));
    }

    #[test]
    fn fiber_labels_avoid_clashes() {
        let c = Chart::new(["b1", "t"], None).unwrap();
        assert_eq!(fiber_labels(&c, 2), vec!["bb1".to_string(), "b2".to_string()]);
    }

    #[test]
    fn thickening_with_zero_table() {
        let s = PrecosymplecticChartStructure::darboux(1, 1);
        let c = choose_complement(&s, ComplementPolicy::Coordinate).unwrap();
        let th = thickened_structure(&s, &c).unwrap();
        assert_eq!(th.chart().names(), &["x1", "x2", "t", "z1", "b1"]);
        let n = 5;
        let expected = PolyForm::from_terms(
            th.chart(),
            2,
            [(vec![0, 1], PolyScalar::one(n)), (vec![4, 3], PolyScalar::one(n))],
        )
        .unwrap();
        assert_eq!(th.omega(), &expected);
        assert_eq!(th.eta(), &PolyForm::dx(th.chart(), 2));
        assert_eq!(serial::form_to_records(th.liouville()).len(), 1);
    }

    #[test]
    fn thickening_without_symplectic_part() {
        let s = PrecosymplecticChartStructure::darboux(0, 1);
        let c = choose_complement(&s, ComplementPolicy::Coordinate).unwrap();
        let th = thickened_structure(&s, &c).unwrap();
        assert_eq!(th.chart().dim(), 3);
        let vol = th.eta().wedge(th.omega()).unwrap();
        // dt ∧ db1 ∧ dz1 = -dt ∧ dz1 ∧ db1 in chart order (t, z1, b1)
        assert_eq!(vol.coefficient(&[0, 1, 2]), -PolyScalar::one(3));
    }

    #[test]
    fn tilted_complement_adds_curvature_term() {
        let s = PrecosymplecticChartStructure::darboux(1, 1);
        let table = ComplementTable { a: vec![vec![PolyScalar::var(4, 1), PolyScalar::zero(4)]], c: vec![] };
        let c = choose_complement(&s, ComplementPolicy::Custom(table)).unwrap();
        let th = thickened_structure(&s, &c).unwrap();
        let n = 5;
        let b = PolyScalar::var(n, 4);
        let x2 = PolyScalar::var(n, 1);
        // dx1∧dx2 + db1∧dz1 + x2 db1∧dx1 + b1 dx2∧dx1
        let expected = PolyForm::from_terms(
            th.chart(),
            2,
            [
                (vec![0, 1], PolyScalar::one(n)),
                (vec![4, 3], PolyScalar::one(n)),
                (vec![4, 0], x2),
                (vec![1, 0], b),
            ],
        )
        .unwrap();
        assert_eq!(th.omega(), &expected);
    }
}
