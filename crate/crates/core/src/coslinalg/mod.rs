//! Exact linear algebra of (pre)symplectic and (pre)cosymplectic vector spaces.
//!
//! Conventions: a [`SkewForm`] with matrix `M` evaluates as `f(u, v) = uᵀ M v`,
//! and the contraction `i_X f` is the covector `j ↦ Σ_i X^i M[i][j]`.
//! The canonical Darboux matrix of rank `2p` pairs coordinate `i` with
//! coordinate `p + i`, i.e. `Σ_{i<p} e^i ∧ e^{p+i}`.

mod darboux;
mod lagrangian;
mod subspace;
pub mod text;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{dot, QMatrix};
use crate::rational::{self, Q};

pub use darboux::{darboux_precosymplectic, darboux_presymplectic, DarbouxBasis};
pub use lagrangian::{canonical_lagrangian_form, lagrangian_normal_form, LagrangianNormalForm};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoslinalgError {
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("data is not precosymplectic: eta vanishes on ker omega")]
    NotPrecosymplectic,
    #[error("data is not cosymplectic")]
    NotCosymplectic,
    #[error("form is not symplectic (degenerate or odd dimension)")]
    NotSymplectic,
    #[error("no Reeb vector: the system omega v = 0, eta(v) = 1 is inconsistent")]
    NoReebVector,
    #[error("subspace is not coisotropic; witness {witness:?}")]
    NotCoisotropic { witness: Vec<String> },
    #[error("ker omega is not contained in the subspace")]
    KernelNotContained,
    #[error("subspace is not Lagrangian: {0}")]
    NotLagrangian(&'static str),
}

/// A skew-symmetric bilinear form on `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    mat: QMatrix,
}

impl SkewForm {
    pub fn new(mat: QMatrix) -> Result<Self, CoslinalgError> {
        if !mat.is_skew() {
            return Err(CoslinalgError::NotSkew);
        }
        Ok(SkewForm { mat })
    }

    pub fn zero(n: usize) -> Self {
        SkewForm { mat: QMatrix::zeros(n, n) }
    }

    /// `Σ_{i<p} e^i ∧ e^{p+i}` on `Q^n`.
    pub fn canonical(n: usize, p: usize) -> Self {
        assert!(2 * p <= n);
        let mut m = QMatrix::zeros(n, n);
        for i in 0..p {
            m[(i, p + i)] = Q::one();
            m[(p + i, i)] = -Q::one();
        }
        SkewForm { mat: m }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }

    pub fn eval(&self, u: &[Q], v: &[Q]) -> Q {
        dot(u, &self.mat.mul_vec(v))
    }

    /// `i_X f` as a covector.
    pub fn contract(&self, x: &[Q]) -> Vec<Q> {
        self.mat.transpose().mul_vec(x)
    }

    /// `Bᵀ M B`: the form expressed in the basis given by the columns of `b`.
    pub fn congruence(&self, b: &QMatrix) -> QMatrix {
        &(&b.transpose() * &self.mat) * b
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }
}

/// Which linear structure a pair `(Ω, η)` carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearType {
    /// `η ∧ Ω^n ≠ 0` on a `2n + 1` dimensional space.
    Cosymplectic,
    /// `Ω` of rank `2p` with `η ∧ Ω^p ≠ 0`; `k = dim(ker Ω ∩ ker η)`.
    Precosymplectic { p: usize, k: usize },
    Degenerate,
}

/// A skew form together with a covector on the same space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosymplecticLinearData {
    omega: SkewForm,
    eta: Vec<Q>,
}

impl CosymplecticLinearData {
    pub fn new(omega: SkewForm, eta: Vec<Q>) -> Result<Self, CoslinalgError> {
        if eta.len() != omega.dim() {
            return Err(CoslinalgError::DimensionMismatch { expected: omega.dim(), found: eta.len() });
        }
        Ok(CosymplecticLinearData { omega, eta })
    }

    pub fn from_parts(omega: QMatrix, eta: Vec<Q>) -> Result<Self, CoslinalgError> {
        Self::new(SkewForm::new(omega)?, eta)
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn omega(&self) -> &SkewForm {
        &self.omega
    }

    pub fn eta(&self) -> &[Q] {
        &self.eta
    }

    pub fn eta_of(&self, v: &[Q]) -> Q {
        dot(&self.eta, v)
    }

    pub fn classify(&self) -> LinearType {
        let (rank, kernel) = skew_rank_kernel(&self.omega);
        if !kernel.vectors().iter().any(|k| !self.eta_of(k).is_zero()) {
            return LinearType::Degenerate;
        }
        let p = rank / 2;
        let k = self.dim() - rank - 1;
        if k == 0 {
            LinearType::Cosymplectic
        } else {
            LinearType::Precosymplectic { p, k }
        }
    }

    pub fn is_cosymplectic(&self) -> bool {
        self.classify() == LinearType::Cosymplectic
    }

    pub fn is_precosymplectic(&self) -> bool {
        self.classify() != LinearType::Degenerate
    }

    /// Coefficient of `e^0 ∧ … ∧ e^{n-1}` in `η ∧ Ω^m` for `n = 2m + 1`,
    /// computed by expanding along `η` with Pfaffians. Zero for even `n`.
    pub fn volume_coefficient(&self) -> Q {
        let n = self.dim();
        if n.is_multiple_of(2) {
            return Q::zero();
        }
        let m = (n - 1) / 2;
        let mut acc = Q::zero();
        for (j, ej) in self.eta.iter().enumerate() {
            if ej.is_zero() {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|&i| i != j).collect();
            let minor = principal_minor(self.omega.matrix(), &keep);
            let term = ej * pfaffian(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc * factorial(m)
    }

    /// The matrix of `♭`: `flat(X) = F X` with `F = Mᵀ + η ηᵀ`.
    pub fn flat_matrix(&self) -> QMatrix {
        let n = self.dim();
        let mut f = self.omega.matrix().transpose();
        for i in 0..n {
            for j in 0..n {
                if !self.eta[i].is_zero() && !self.eta[j].is_zero() {
                    f[(i, j)] += &self.eta[i] * &self.eta[j];
                }
            }
        }
        f
    }
}

fn factorial(m: usize) -> Q {
    (1..=m).fold(Q::one(), |acc, k| acc * rational::int(k as i64))
}

fn principal_minor(m: &QMatrix, keep: &[usize]) -> QMatrix {
    let mut out = QMatrix::zeros(keep.len(), keep.len());
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            out[(a, b)] = m[(i, j)].clone();
        }
    }
    out
}

/// Pfaffian of a skew matrix by congruence elimination; zero for odd size.
pub fn pfaffian(skew: &QMatrix) -> Q {
    let n = skew.rows();
    if n % 2 == 1 {
        return Q::zero();
    }
    let mut a = skew.clone();
    let mut pf = Q::one();
    let mut k = 0;
    while k < n {
        let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return Q::zero();
        };
        if j != k + 1 {
            swap_sym(&mut a, j, k + 1);
            pf = -pf;
        }
        let piv = a[(k, k + 1)].clone();
        pf *= &piv;
        for i in k + 2..n {
            // v_i <- v_i - alpha v_k - beta v_{k+1}
            let beta = &a[(k, i)] / &piv;
            let alpha = &a[(k + 1, i)] / &(-&piv);
            if alpha.is_zero() && beta.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = &a[(r, i)] - &(&alpha * &a[(r, k)]) - &beta * &a[(r, k + 1)];
                a[(r, i)] = v;
            }
            for c in 0..n {
                let v = &a[(i, c)] - &(&alpha * &a[(k, c)]) - &beta * &a[(k + 1, c)];
                a[(i, c)] = v;
            }
        }
        k += 2;
    }
    pf
}

fn swap_sym(a: &mut QMatrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Rank (always even) and kernel of a skew form.
pub fn skew_rank_kernel(f: &SkewForm) -> (usize, Subspace) {
    let n = f.dim();
    let kernel = f.matrix().kernel();
    let rank = n - kernel.len();
    debug_assert!(rank.is_multiple_of(2));
    (rank, Subspace::from_independent(n, kernel))
}

/// `♭(X) = i_X Ω + η(X) η`.
pub fn flat(data: &CosymplecticLinearData, x: &[Q]) -> Vec<Q> {
    let mut out = data.omega.contract(x);
    let ex = data.eta_of(x);
    if !ex.is_zero() {
        for (o, e) in out.iter_mut().zip(&data.eta) {
            *o += &ex * e;
        }
    }
    out
}

pub fn flat_inverse(data: &CosymplecticLinearData, a: &[Q]) -> Result<Vec<Q>, CoslinalgError> {
    if a.len() != data.dim() {
        return Err(CoslinalgError::DimensionMismatch { expected: data.dim(), found: a.len() });
    }
    if !data.is_cosymplectic() {
        return Err(CoslinalgError::NotCosymplectic);
    }
    data.flat_matrix().solve(a).ok_or(CoslinalgError::NotCosymplectic)
}

/// Solution of `Ω v = 0, η(v) = 1`. Among several solutions, the first vector
/// of the computed kernel basis with `η ≠ 0`, rescaled, is returned.
pub fn reeb_linear(data: &CosymplecticLinearData) -> Result<Vec<Q>, CoslinalgError> {
    let (_, kernel) = skew_rank_kernel(&data.omega);
    let k = kernel
        .vectors()
        .into_iter()
        .find(|k| !data.eta_of(k).is_zero())
        .ok_or(CoslinalgError::NoReebVector)?;
    let s = data.eta_of(&k).recip();
    Ok(k.iter().map(|x| x * &s).collect())
}

/// `{X : f(X, w) = 0 for all w ∈ W}`.
pub fn symplectic_complement(f: &SkewForm, w: &Subspace) -> Subspace {
    complement_with(f, w, None)
}

/// `{X : η(X) = 0 and Ω(X, w) = 0 for all w ∈ W}`.
pub fn cosymplectic_complement(data: &CosymplecticLinearData, w: &Subspace) -> Subspace {
    complement_with(&data.omega, w, Some(&data.eta))
}

fn complement_with(f: &SkewForm, w: &Subspace, eta: Option<&[Q]>) -> Subspace {
    let n = f.dim();
    assert_eq!(w.ambient_dim(), n, "subspace lives in a different space");
    let mut rows: Vec<Vec<Q>> = w.vectors().iter().map(|v| f.matrix().mul_vec(v)).collect();
    if let Some(e) = eta {
        rows.push(e.to_vec());
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Subspace::from_independent(n, QMatrix::from_rows(&rows).kernel())
}

/// Outcome of a coisotropy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoisotropyVerdict {
    pub coisotropic: bool,
    /// A vector violating the definition when `coisotropic` is false: either the
    /// Reeb vector (not in `W`) or a complement vector outside `W`.
    pub witness: Option<Vec<Q>>,
    pub reeb_in_subspace: bool,
}

pub fn is_coisotropic(data: &CosymplecticLinearData, w: &Subspace) -> Result<CoisotropyVerdict, CoslinalgError> {
    if !data.is_cosymplectic() {
        return Err(CoslinalgError::NotCosymplectic);
    }
    if w.ambient_dim() != data.dim() {
        return Err(CoslinalgError::DimensionMismatch { expected: data.dim(), found: w.ambient_dim() });
    }
    let xi = reeb_linear(data)?;
    if !w.contains(&xi) {
        return Ok(CoisotropyVerdict { coisotropic: false, witness: Some(xi), reeb_in_subspace: false });
    }
    let perp = cosymplectic_complement(data, w);
    let witness = perp.vectors().into_iter().find(|v| !w.contains(v));
    Ok(CoisotropyVerdict { coisotropic: witness.is_none(), witness, reeb_in_subspace: true })
}

/// Rank of the restricted form against the rank predicted for a coisotropic subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectRankCheck {
    pub restricted_rank: usize,
    pub predicted: i64,
    pub matches: bool,
}

fn restricted_rank(f: &SkewForm, w: &Subspace) -> usize {
    f.congruence(w.basis()).rank()
}

fn format_witness(v: &[Q]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

/// For `W` coisotropic in cosymplectic data, the pullback of `Ω` to `W` has
/// rank `2 dim W - n - 1`.
pub fn direct_rank_check(data: &CosymplecticLinearData, w: &Subspace) -> Result<DirectRankCheck, CoslinalgError> {
    let verdict = is_coisotropic(data, w)?;
    if !verdict.coisotropic {
        return Err(CoslinalgError::NotCoisotropic { witness: format_witness(&verdict.witness.unwrap_or_default()) });
    }
    // The dimension count uses dim(ker Ω ∩ W) = dim ker Ω = 1; assert it rather than assume it.
    let (_, kernel) = skew_rank_kernel(&data.omega);
    if !kernel.is_subspace_of(w) {
        return Err(CoslinalgError::KernelNotContained);
    }
    let rank = restricted_rank(&data.omega, w);
    let predicted = 2 * w.dim() as i64 - data.dim() as i64 - 1;
    Ok(DirectRankCheck { restricted_rank: rank, predicted, matches: rank as i64 == predicted })
}

/// Symplectic variant: `W` coisotropic for nondegenerate `f` gives rank `2 dim W - n`.
pub fn direct_rank_check_symplectic(f: &SkewForm, w: &Subspace) -> Result<DirectRankCheck, CoslinalgError> {
    let n = f.dim();
    if f.rank() != n {
        return Err(CoslinalgError::NotSymplectic);
    }
    let perp = symplectic_complement(f, w);
    if let Some(v) = perp.vectors().into_iter().find(|v| !w.contains(v)) {
        return Err(CoslinalgError::NotCoisotropic { witness: format_witness(&v) });
    }
    let rank = restricted_rank(f, w);
    let predicted = 2 * w.dim() as i64 - n as i64;
    Ok(DirectRankCheck { restricted_rank: rank, predicted, matches: rank as i64 == predicted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn e(n: usize, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::one();
        v
    }

    fn darboux3() -> CosymplecticLinearData {
        CosymplecticLinearData::new(SkewForm::canonical(3, 1), e(3, 2)).unwrap()
    }

    #[test]
    fn rank_kernel_examples() {
        let (r, k) = skew_rank_kernel(&SkewForm::canonical(2, 1));
        assert_eq!((r, k.dim()), (2, 0));
        let (r, k) = skew_rank_kernel(&SkewForm::zero(3));
        assert_eq!((r, k.dim()), (0, 3));
        // (1,2) = 1, (1,3) = 1 in 1-based indices, skew completed
        let mut m = QMatrix::zeros(4, 4);
        m[(0, 1)] = int(1);
        m[(1, 0)] = int(-1);
        m[(0, 2)] = int(1);
        m[(2, 0)] = int(-1);
        let (r, k) = skew_rank_kernel(&SkewForm::new(m).unwrap());
        assert_eq!((r, k.dim()), (2, 2));
    }

    #[test]
    fn flat_examples() {
        let d = darboux3();
        let xi = reeb_linear(&d).unwrap();
        assert_eq!(xi, e(3, 2));
        assert_eq!(flat(&d, &xi), d.eta().to_vec());
        assert_eq!(flat(&d, &e(3, 0)), e(3, 1));
        assert_eq!(flat_inverse(&d, &e(3, 1)).unwrap(), e(3, 0));
        let degenerate = CosymplecticLinearData::new(SkewForm::zero(3), e(3, 2)).unwrap();
        assert_eq!(flat_inverse(&degenerate, &e(3, 0)), Err(CoslinalgError::NotCosymplectic));
    }

    #[test]
    fn reeb_examples() {
        let d = CosymplecticLinearData::new(SkewForm::zero(1), vec![int(1)]).unwrap();
        assert_eq!(reeb_linear(&d).unwrap(), vec![int(1)]);
        let none = CosymplecticLinearData::new(SkewForm::canonical(3, 1), e(3, 0)).unwrap();
        assert_eq!(reeb_linear(&none), Err(CoslinalgError::NoReebVector));
    }

    #[test]
    fn classification() {
        assert_eq!(darboux3().classify(), LinearType::Cosymplectic);
        let pre = CosymplecticLinearData::new(SkewForm::zero(2), e(2, 0)).unwrap();
        assert_eq!(pre.classify(), LinearType::Precosymplectic { p: 0, k: 1 });
        // eta = 0 with full even rank on an odd-dimensional space
        let bad = CosymplecticLinearData::new(SkewForm::canonical(3, 1), vec![Q::zero(); 3]).unwrap();
        assert_eq!(bad.classify(), LinearType::Degenerate);
        assert_eq!(darboux3().volume_coefficient(), int(1));
        assert!(bad.volume_coefficient().is_zero());
    }

    #[test]
    fn pfaffian_small_cases() {
        // paired convention: pf = a01 a23 - a02 a13 + a03 a12 = -1
        assert_eq!(pfaffian(SkewForm::canonical(4, 2).matrix()), int(-1));
        assert_eq!(pfaffian(SkewForm::canonical(2, 1).matrix()), int(1));
        let mut m = QMatrix::zeros(4, 4);
        let set = |m: &mut QMatrix, i, j, v: Q| {
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        };
        set(&mut m, 0, 1, int(2));
        set(&mut m, 0, 2, int(3));
        set(&mut m, 0, 3, int(5));
        set(&mut m, 1, 2, int(7));
        set(&mut m, 1, 3, int(11));
        set(&mut m, 2, 3, ratio(1, 2));
        // pf = a01 a23 - a02 a13 + a03 a12
        assert_eq!(pfaffian(&m), ratio(1, 1) - int(33) + int(35));
        assert_eq!(pfaffian(&m) * pfaffian(&m), m.determinant());
    }

    #[test]
    fn complements() {
        let d = darboux3();
        let full = Subspace::full(3);
        assert_eq!(symplectic_complement(&SkewForm::canonical(2, 1), &Subspace::full(2)).dim(), 0);
        assert_eq!(symplectic_complement(d.omega(), &Subspace::zero(3)).dim(), 3);
        let w = Subspace::new(3, vec![e(3, 0)]).unwrap();
        let c = symplectic_complement(d.omega(), &w);
        assert!(c.same_span(&Subspace::new(3, vec![e(3, 0), e(3, 2)]).unwrap()));
        let ker_eta = cosymplectic_complement(&d, &Subspace::zero(3));
        assert!(ker_eta.same_span(&Subspace::new(3, vec![e(3, 0), e(3, 1)]).unwrap()));
        assert_eq!(cosymplectic_complement(&d, &full).dim(), 0);
    }

    #[test]
    fn coisotropy_examples() {
        let d = darboux3();
        assert!(is_coisotropic(&d, &Subspace::full(3)).unwrap().coisotropic);
        let ker_eta = Subspace::new(3, vec![e(3, 0), e(3, 1)]).unwrap();
        let v = is_coisotropic(&d, &ker_eta).unwrap();
        assert!(!v.coisotropic && !v.reeb_in_subspace);
        assert_eq!(v.witness, Some(e(3, 2)));

        // dim 5, p = 2, coordinates (x1, x2, x3, x4, t); W = span(ξ, ∂x1, ∂x2)
        let d5 = CosymplecticLinearData::new(SkewForm::canonical(5, 2), e(5, 4)).unwrap();
        let w = Subspace::new(5, vec![e(5, 4), e(5, 0), e(5, 1)]).unwrap();
        let perp = cosymplectic_complement(&d5, &w);
        assert!(perp.same_span(&Subspace::new(5, vec![e(5, 0), e(5, 1)]).unwrap()));
        assert!(is_coisotropic(&d5, &w).unwrap().coisotropic);
    }

    #[test]
    fn direct_rank_examples() {
        let d5 = CosymplecticLinearData::new(SkewForm::canonical(5, 2), e(5, 4)).unwrap();
        let w = Subspace::new(5, vec![e(5, 4), e(5, 0), e(5, 1)]).unwrap();
        let r = direct_rank_check(&d5, &w).unwrap();
        assert_eq!((r.restricted_rank, r.predicted, r.matches), (0, 0, true));
        let r = direct_rank_check(&d5, &Subspace::full(5)).unwrap();
        assert_eq!((r.restricted_rank, r.predicted, r.matches), (4, 4, true));
        let bad = Subspace::new(5, vec![e(5, 0)]).unwrap();
        assert!(matches!(direct_rank_check(&d5, &bad), Err(CoslinalgError::NotCoisotropic { .. })));

        // symplectic Q^4 with e0^e2 + e1^e3; W = span(e0, e1, e2) contains the Lagrangian span(e0, e1)
        let f = SkewForm::canonical(4, 2);
        let w = Subspace::new(4, vec![e(4, 0), e(4, 1), e(4, 2)]).unwrap();
        let r = direct_rank_check_symplectic(&f, &w).unwrap();
        assert_eq!((r.restricted_rank, r.predicted, r.matches), (2, 2, true));
    }
}
