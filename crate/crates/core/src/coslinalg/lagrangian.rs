use num_traits::{One, Zero};

use crate::matrix::QMatrix;
use crate::rational::{self, Q};

use super::{CoslinalgError, SkewForm, Subspace};

/// `φ : Q^n → L ⊕ L*` with `f = φ*ω_L` and `φ|_L` the identity.
///
/// Coordinates on `L ⊕ L*` are taken in the basis of `L` stored in the
/// subspace and its dual basis, so `ω_L` has the block matrix `[[0, I], [-I, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianNormalForm {
    pub phi: QMatrix,
    pub omega_l: QMatrix,
}

impl LagrangianNormalForm {
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.phi.mul_vec(v)
    }
}

/// Matrix of `ω_L((l ⊕ l*), (m ⊕ m*)) = m*(l) − l*(m)` on `Q^m ⊕ Q^m`.
pub fn canonical_lagrangian_form(m: usize) -> QMatrix {
    let mut out = QMatrix::zeros(2 * m, 2 * m);
    for a in 0..m {
        out[(a, m + a)] = Q::one();
        out[(m + a, a)] = -Q::one();
    }
    out
}

pub fn lagrangian_normal_form(f: &SkewForm, l: &Subspace) -> Result<LagrangianNormalForm, CoslinalgError> {
    let n = f.dim();
    if n % 2 == 1 || f.rank() != n {
        return Err(CoslinalgError::NotSymplectic);
    }
    if l.ambient_dim() != n {
        return Err(CoslinalgError::DimensionMismatch { expected: n, found: l.ambient_dim() });
    }
    let m = n / 2;
    if l.dim() != m {
        return Err(CoslinalgError::NotLagrangian("dimension is not half the ambient dimension"));
    }
    if !f.congruence(l.basis()).is_zero() {
        return Err(CoslinalgError::NotLagrangian("form does not vanish on the subspace"));
    }
    let ls = l.vectors();

    // complement from standard basis vectors
    let mut chosen = ls.clone();
    let mut ds = Vec::new();
    for i in 0..n {
        if ds.len() == m {
            break;
        }
        let mut e = vec![Q::zero(); n];
        e[i] = Q::one();
        chosen.push(e.clone());
        if QMatrix::from_columns(n, &chosen).rank() == chosen.len() {
            ds.push(e);
        } else {
            chosen.pop();
        }
    }

    // c'_b with f(l_a, c'_b) = δ_ab
    let g = QMatrix::from_rows(&ls.iter().map(|la| ds.iter().map(|d| f.eval(la, d)).collect()).collect::<Vec<_>>());
    let g_inv = g.inverse().ok_or(CoslinalgError::NotSymplectic)?;
    let dmat = QMatrix::from_columns(n, &ds);
    let cprime = (&dmat * &g_inv).columns();
    // make the c's isotropic: c_b = c'_b + ½ Σ_a f(c'_a, c'_b) l_a
    let half = rational::ratio(1, 2);
    let cs: Vec<Vec<Q>> = (0..m)
        .map(|b| {
            let mut c = cprime[b].clone();
            for a in 0..m {
                let h = f.eval(&cprime[a], &cprime[b]);
                if !h.is_zero() {
                    let s = &half * &h;
                    for (ci, li) in c.iter_mut().zip(&ls[a]) {
                        *ci += &s * li;
                    }
                }
            }
            c
        })
        .collect();

    let mut cols = ls;
    cols.extend(cs);
    let phi = QMatrix::from_columns(n, &cols).inverse().ok_or(CoslinalgError::NotSymplectic)?;
    Ok(LagrangianNormalForm { phi, omega_l: canonical_lagrangian_form(m) })
}
