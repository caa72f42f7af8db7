use crate::matrix::QMatrix;
use crate::rational::Q;

use super::CoslinalgError;

/// A linear subspace of `Q^n`, stored as an `n × m` matrix of independent columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
}

impl Subspace {
    /// Builds a subspace from vectors that must be linearly independent.
    pub fn new(ambient: usize, vectors: Vec<Vec<Q>>) -> Result<Self, CoslinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(CoslinalgError::DimensionMismatch { expected: ambient, found: v.len() });
        }
        let s = Self::from_independent(ambient, vectors);
        if s.basis.rank() != s.dim() {
            return Err(CoslinalgError::LinearlyDependent);
        }
        Ok(s)
    }

    /// The span of arbitrary vectors; dependent ones are dropped greedily.
    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        let mut kept: Vec<Vec<Q>> = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector of the wrong length");
            kept.push(v.clone());
            if QMatrix::from_columns(ambient, &kept).rank() < kept.len() {
                kept.pop();
            }
        }
        Self::from_independent(ambient, kept)
    }

    pub(crate) fn from_independent(ambient: usize, vectors: Vec<Vec<Q>>) -> Self {
        Subspace { ambient, basis: QMatrix::from_columns(ambient, &vectors) }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_independent(ambient, Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: QMatrix::identity(ambient) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Q>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        if self.dim() == 0 {
            return v.iter().all(num_traits::Zero::is_zero);
        }
        self.basis.solve(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.vectors().iter().all(|v| other.contains(v))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// `self ∩ other`, from the kernel of `[A | -B]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.ambient;
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(n);
        }
        let stacked = self.basis.hstack(&other.basis.neg());
        let vecs = stacked
            .kernel()
            .into_iter()
            .map(|k| self.basis.mul_vec(&k[..self.dim()]))
            .collect::<Vec<_>>();
        Subspace::span(n, &vecs)
    }
}
