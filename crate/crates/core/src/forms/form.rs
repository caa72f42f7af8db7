use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{Chart, FormsError, PolyMap, PolyScalar, PolyVectorField};
use crate::matrix::QMatrix;
use crate::rational::{self, Q};

/// A differential form of fixed degree with polynomial coefficients.
///
/// Keys are strictly increasing coordinate index tuples. Zero coefficients are
/// dropped on construction, and forms of degree larger than the chart
/// dimension are always the zero form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyForm {
    chart: Chart,
    degree: usize,
    terms: BTreeMap<Vec<usize>, PolyScalar>,
}

/// The value of a form at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlternatingTensor {
    Scalar(Q),
    Covector(Vec<Q>),
    /// Skew matrix `m[(i, j)] = a(e_i, e_j)`.
    Matrix(QMatrix),
    /// Degree 3 and up: coefficients on increasing index tuples.
    Table { degree: usize, entries: BTreeMap<Vec<usize>, Q> },
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl PolyForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        PolyForm { chart: chart.clone(), degree, terms: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn scalar(chart: &Chart, f: PolyScalar) -> Self {
        assert_eq!(f.nvars(), chart.dim(), "coefficient variable count must equal chart dimension");
        let mut out = Self::zero(chart, 0);
        out.add_raw(Vec::new(), f);
        out
    }

    pub fn constant(chart: &Chart, c: Q) -> Self {
        Self::scalar(chart, PolyScalar::constant(chart.dim(), c))
    }

    /// `dx_i` for coordinate index `i`.
    pub fn dx(chart: &Chart, i: usize) -> Self {
        Self::basis(chart, &[i], PolyScalar::one(chart.dim()))
    }

    /// `f dx_{i1} ^ ... ^ dx_{ik}` for indices in any order (the sign is absorbed).
    pub fn basis(chart: &Chart, indices: &[usize], f: PolyScalar) -> Self {
        let mut out = Self::zero(chart, indices.len());
        out.add_term(indices, f);
        out
    }

    /// Builds a form from `(indices, coefficient)` pairs; unsorted tuples are
    /// reordered with the matching sign and repeated indices contribute nothing.
    pub fn from_terms(
        chart: &Chart,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, PolyScalar)>,
    ) -> Result<Self, FormsError> {
        let mut out = Self::zero(chart, degree);
        for (idx, f) in terms {
            if idx.len() != degree {
                return Err(FormsError::DegreeMismatch { expected: degree, found: idx.len() });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= chart.dim()) {
                return Err(FormsError::IndexOutOfRange { index: bad, dim: chart.dim() });
            }
            if f.nvars() != chart.dim() {
                return Err(FormsError::ComponentCount { expected: chart.dim(), found: f.nvars() });
            }
            out.add_term(&idx, f);
        }
        Ok(out)
    }

    /// Adds `f dx_idx` in place.
    pub fn add_term(&mut self, idx: &[usize], f: PolyScalar) {
        assert_eq!(idx.len(), self.degree);
        let mut sorted = idx.to_vec();
        let Some(sign) = sort_sign(&mut sorted) else {
            return;
        };
        let f = if sign < 0 { -&f } else { f };
        self.add_raw(sorted, f);
    }

    fn add_raw(&mut self, idx: Vec<usize>, f: PolyScalar) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(existing) => {
                *existing = &*existing + &f;
                if existing.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, f);
            }
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &PolyScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient on the given increasing index tuple.
    pub fn coefficient(&self, idx: &[usize]) -> PolyScalar {
        self.terms.get(idx).cloned().unwrap_or_else(|| PolyScalar::zero(self.chart.dim()))
    }

    /// For a 0-form, its scalar function.
    pub fn as_scalar(&self) -> Option<PolyScalar> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        self.chart.check_same(&other.chart)?;
        if self.degree != other.degree {
            return Err(FormsError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (idx, f) in &other.terms {
            out.add_raw(idx.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        self.map_coefficients(|f| -f)
    }

    pub fn scale(&self, s: &Q) -> PolyForm {
        self.map_coefficients(|f| f.scale(s))
    }

    /// Multiplies every coefficient by the function `g`.
    pub fn mul_scalar(&self, g: &PolyScalar) -> PolyForm {
        self.map_coefficients(|f| f * g)
    }

    pub fn map_coefficients(&self, mut op: impl FnMut(&PolyScalar) -> PolyScalar) -> PolyForm {
        let mut out = PolyForm::zero(&self.chart, self.degree);
        for (idx, f) in &self.terms {
            out.add_raw(idx.clone(), op(f));
        }
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        self.chart.check_same(&other.chart)?;
        let mut out = PolyForm::zero(&self.chart, self.degree + other.degree);
        if self.degree + other.degree > self.chart.dim() {
            return Ok(out);
        }
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                if i.iter().any(|a| j.contains(a)) {
                    continue;
                }
                // sign = parity of pairs (a in I, b in J) with a > b
                let inversions: usize = i.iter().map(|a| j.iter().filter(|b| a > b).count()).sum();
                let mut idx: Vec<usize> = i.iter().chain(j).copied().collect();
                idx.sort_unstable();
                let prod = f * g;
                out.add_raw(idx, if inversions % 2 == 1 { -&prod } else { prod });
            }
        }
        Ok(out)
    }

    /// `k`-fold exterior power; `power(0)` is the constant 1.
    pub fn power(&self, k: usize) -> Result<PolyForm, FormsError> {
        let mut out = PolyForm::constant(&self.chart, rational::one());
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> PolyForm {
        let n = self.chart.dim();
        let mut out = PolyForm::zero(&self.chart, self.degree + 1);
        if self.degree + 1 > n {
            return out;
        }
        for (idx, f) in &self.terms {
            for j in 0..n {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.derivative(j);
                if df.is_zero() {
                    continue;
                }
                let pos = idx.iter().filter(|&&a| a < j).count();
                let mut new_idx = idx.clone();
                new_idx.insert(pos, j);
                out.add_raw(new_idx, if pos % 2 == 1 { -&df } else { df });
            }
        }
        out
    }

    /// Interior product `i_X a`, contracting the first slot.
    pub fn interior(&self, x: &PolyVectorField) -> Result<PolyForm, FormsError> {
        self.chart.check_same(x.chart())?;
        if self.degree == 0 {
            return Err(FormsError::DegreeZeroInterior);
        }
        let mut out = PolyForm::zero(&self.chart, self.degree - 1);
        for (idx, f) in &self.terms {
            for (s, &i) in idx.iter().enumerate() {
                let xi = &x.components()[i];
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(s);
                let c = xi * f;
                out.add_raw(rest, if s % 2 == 1 { -&c } else { c });
            }
        }
        Ok(out)
    }

    /// Pullback along a polynomial map whose target chart is this form's chart.
    pub fn pullback(&self, m: &PolyMap) -> Result<PolyForm, FormsError> {
        self.chart.check_same(m.target())?;
        let src = m.source();
        let differentials: Vec<PolyForm> = m
            .components()
            .iter()
            .map(|c| PolyForm::scalar(src, c.clone()).d())
            .collect();
        let mut out = PolyForm::zero(src, self.degree);
        'terms: for (idx, f) in &self.terms {
            let coeff = f.compose(m.components());
            if coeff.is_zero() {
                continue;
            }
            let mut acc = PolyForm::scalar(src, coeff);
            for &i in idx {
                acc = acc.wedge(&differentials[i])?;
                if acc.is_zero() {
                    continue 'terms;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// True iff every coefficient lies in the ideal of the given coordinates,
    /// i.e. the form vanishes at every point of their common zero locus.
    pub fn vanishes_on(&self, vars: &[usize]) -> bool {
        self.terms.values().all(|f| f.in_ideal(vars))
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Q]) -> Result<AlternatingTensor, FormsError> {
        let n = self.chart.dim();
        if point.len() != n {
            return Err(FormsError::PointDimension { expected: n, found: point.len() });
        }
        Ok(match self.degree {
            0 => AlternatingTensor::Scalar(self.coefficient(&[]).evaluate(point)),
            1 => {
                let mut v = vec![Q::zero(); n];
                for (idx, f) in &self.terms {
                    v[idx[0]] = f.evaluate(point);
                }
                AlternatingTensor::Covector(v)
            }
            2 => {
                let mut m = QMatrix::zeros(n, n);
                for (idx, f) in &self.terms {
                    let c = f.evaluate(point);
                    m[(idx[1], idx[0])] = -c.clone();
                    m[(idx[0], idx[1])] = c;
                }
                AlternatingTensor::Matrix(m)
            }
            k => AlternatingTensor::Table {
                degree: k,
                entries: self
                    .terms
                    .iter()
                    .map(|(idx, f)| (idx.clone(), f.evaluate(point)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            },
        })
    }

    /// Value of a 1-form at a point as a covector.
    pub fn eval_covector(&self, point: &[Q]) -> Result<Vec<Q>, FormsError> {
        match self.evaluate(point)? {
            AlternatingTensor::Covector(v) => Ok(v),
            _ => Err(FormsError::DegreeMismatch { expected: 1, found: self.degree }),
        }
    }

    /// Value of a 2-form at a point as a skew matrix.
    pub fn eval_matrix(&self, point: &[Q]) -> Result<QMatrix, FormsError> {
        match self.evaluate(point)? {
            AlternatingTensor::Matrix(m) => Ok(m),
            _ => Err(FormsError::DegreeMismatch { expected: 2, found: self.degree }),
        }
    }

    /// Re-expresses the form on a larger chart. `map[i]` is the index in
    /// `target` of this chart's coordinate `i`.
    pub fn embed(&self, target: &Chart, map: &[usize]) -> PolyForm {
        assert_eq!(map.len(), self.chart.dim());
        let mut out = PolyForm::zero(target, self.degree);
        for (idx, f) in &self.terms {
            let new_idx: Vec<usize> = idx.iter().map(|&i| map[i]).collect();
            out.add_term(&new_idx, f.reindex(map, target.dim()));
        }
        out
    }
}

impl AlternatingTensor {
    pub fn degree(&self) -> usize {
        match self {
            AlternatingTensor::Scalar(_) => 0,
            AlternatingTensor::Covector(_) => 1,
            AlternatingTensor::Matrix(_) => 2,
            AlternatingTensor::Table { degree, .. } => *degree,
        }
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.chart.names();
        for (k, (idx, coeff)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "(")?;
            for (m, (e, c)) in coeff.terms().enumerate() {
                if m > 0 {
                    f.write_str(" + ")?;
                }
                f.write_str(&rational::format(c))?;
                for (i, &p) in e.iter().enumerate() {
                    match p {
                        0 => {}
                        1 => write!(f, "*{}", names[i])?,
                        _ => write!(f, "*{}^{}", names[i], p)?,
                    }
                }
            }
            write!(f, ")")?;
            let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", names[i])).collect();
            if !basis.is_empty() {
                write!(f, " {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}
