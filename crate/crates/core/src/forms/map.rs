use super::{Chart, FormsError, PolyScalar};
use crate::rational::Q;

/// A polynomial map between charts: one component (over `source`) per `target` coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    source: Chart,
    target: Chart,
    components: Vec<PolyScalar>,
}

impl PolyMap {
    pub fn new(source: &Chart, target: &Chart, components: Vec<PolyScalar>) -> Result<Self, FormsError> {
        if components.len() != target.dim() {
            return Err(FormsError::ComponentCount { expected: target.dim(), found: components.len() });
        }
        if let Some(c) = components.iter().find(|c| c.nvars() != source.dim()) {
            return Err(FormsError::ComponentCount { expected: source.dim(), found: c.nvars() });
        }
        Ok(PolyMap { source: source.clone(), target: target.clone(), components })
    }

    pub fn identity(chart: &Chart) -> Self {
        let n = chart.dim();
        PolyMap { source: chart.clone(), target: chart.clone(), components: (0..n).map(|i| PolyScalar::var(n, i)).collect() }
    }

    /// Inclusion of the locus where the listed target coordinates vanish, written
    /// on the chart of the remaining coordinates (`source`, in target order).
    pub fn zero_locus_inclusion(target: &Chart, vanishing: &[usize]) -> Result<(Chart, PolyMap), FormsError> {
        let keep: Vec<usize> = (0..target.dim()).filter(|i| !vanishing.contains(i)).collect();
        let time = target.time_index().and_then(|t| keep.iter().position(|&k| k == t));
        let source = Chart::new(keep.iter().map(|&i| target.name(i).to_string()), time)?;
        let comps = (0..target.dim())
            .map(|i| match keep.iter().position(|&k| k == i) {
                Some(j) => PolyScalar::var(keep.len(), j),
                None => PolyScalar::zero(keep.len()),
            })
            .collect();
        let map = PolyMap::new(&source, target, comps)?;
        Ok((source, map))
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn components(&self) -> &[PolyScalar] {
        &self.components
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn after(&self, inner: &PolyMap) -> Result<PolyMap, FormsError> {
        self.source.check_same(&inner.target)?;
        let comps = self.components.iter().map(|c| c.compose(&inner.components)).collect();
        PolyMap::new(&inner.source, &self.target, comps)
    }

    pub fn evaluate(&self, point: &[Q]) -> Vec<Q> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }
}

/// A vector field with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    chart: Chart,
    components: Vec<PolyScalar>,
}

impl PolyVectorField {
    pub fn new(chart: &Chart, components: Vec<PolyScalar>) -> Result<Self, FormsError> {
        if components.len() != chart.dim() {
            return Err(FormsError::ComponentCount { expected: chart.dim(), found: components.len() });
        }
        if let Some(c) = components.iter().find(|c| c.nvars() != chart.dim()) {
            return Err(FormsError::ComponentCount { expected: chart.dim(), found: c.nvars() });
        }
        Ok(PolyVectorField { chart: chart.clone(), components })
    }

    pub fn zero(chart: &Chart) -> Self {
        PolyVectorField { chart: chart.clone(), components: vec![PolyScalar::zero(chart.dim()); chart.dim()] }
    }

    /// The coordinate field `∂/∂x_i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.components[i] = PolyScalar::one(chart.dim());
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[PolyScalar] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PolyScalar::is_zero)
    }

    /// If this is exactly `∂/∂x_i`, returns `i`.
    pub fn as_coordinate(&self) -> Option<usize> {
        let n = self.chart.dim();
        let one = PolyScalar::one(n);
        let mut found = None;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if *c != one || found.is_some() {
                return None;
            }
            found = Some(i);
        }
        found
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &PolyScalar) -> PolyScalar {
        let mut acc = PolyScalar::zero(self.chart.dim());
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &f.derivative(i));
            }
        }
        acc
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField, FormsError> {
        self.chart.check_same(&other.chart)?;
        let comps = self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect();
        PolyVectorField::new(&self.chart, comps)
    }

    pub fn mul_scalar(&self, g: &PolyScalar) -> PolyVectorField {
        PolyVectorField { chart: self.chart.clone(), components: self.components.iter().map(|c| c * g).collect() }
    }

    pub fn evaluate(&self, point: &[Q]) -> Vec<Q> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }
}
