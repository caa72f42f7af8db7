use num_traits::Zero;

use crate::matrix::QMatrix;
use crate::rational::Q;

use super::{reeb_linear, skew_rank_kernel, CoslinalgError, CosymplecticLinearData, SkewForm};

/// An adapted basis (as the columns of `basis`) in which the form becomes
/// canonical. Column layout is `[x_1..x_p, x_{p+1}..x_{2p}, t?, z_1..z_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxBasis {
    pub basis: QMatrix,
    pub p: usize,
    pub k: usize,
    /// The Reeb column, present only for precosymplectic data.
    pub time_column: Option<usize>,
}

impl DarbouxBasis {
    pub fn column(&self, j: usize) -> Vec<Q> {
        self.basis.column(j)
    }
}

/// Symplectic Gram-Schmidt on the standard basis. At each step the
/// lexicographically smallest pair `(i, j)` of remaining vectors with
/// `f(v_i, v_j) ≠ 0` is used as the next Darboux pair.
pub fn darboux_presymplectic(f: &SkewForm) -> DarbouxBasis {
    let n = f.dim();
    let mut vecs: Vec<Vec<Q>> = QMatrix::identity(n).columns();
    // gram[a][b] = f(v_a, v_b), kept in step with `vecs`
    let mut gram = f.matrix().clone();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut us = Vec::new();
    let mut ws = Vec::new();

    loop {
        let mut pivot = None;
        'search: for (ai, &i) in alive.iter().enumerate() {
            for &j in &alive[ai + 1..] {
                if !gram[(i, j)].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = pivot else { break };
        let c = gram[(i, j)].clone();
        let u = vecs[i].clone();
        let w: Vec<Q> = vecs[j].iter().map(|x| x / &c).collect();
        alive.retain(|&a| a != i && a != j);
        // alpha_v = f(v, u), beta_v = f(v, w)
        let coeffs: Vec<(usize, Q, Q)> = alive
            .iter()
            .map(|&a| (a, gram[(a, i)].clone(), &gram[(a, j)] / &c))
            .collect();
        for &(a, ref alpha, ref beta) in &coeffs {
            for r in 0..n {
                let delta = alpha * &w[r] - beta * &u[r];
                if !delta.is_zero() {
                    vecs[a][r] += delta;
                }
            }
        }
        // f(v_a', v_b') = f(v_a, v_b) - alpha_a beta_b + alpha_b beta_a
        for &(a, ref aa, ref ba) in &coeffs {
            for &(b, ref ab, ref bb) in &coeffs {
                if a != b {
                    let delta = ab * ba - aa * bb;
                    if !delta.is_zero() {
                        gram[(a, b)] += delta;
                    }
                }
            }
        }
        us.push(u);
        ws.push(w);
    }

    let p = us.len();
    let mut columns = us;
    columns.extend(ws);
    columns.extend(alive.iter().map(|&a| vecs[a].clone()));
    DarbouxBasis { basis: QMatrix::from_columns(n, &columns), p, k: n - 2 * p, time_column: None }
}

/// Darboux basis for a precosymplectic pair: `Ω` canonical on the x-block,
/// `η` dual to the t-column, and the z-block spanning `ker Ω ∩ ker η`.
pub fn darboux_precosymplectic(data: &CosymplecticLinearData) -> Result<DarbouxBasis, CoslinalgError> {
    let n = data.dim();
    let v = reeb_linear(data).map_err(|_| CoslinalgError::NotPrecosymplectic)?;
    let (_, kernel) = skew_rank_kernel(data.omega());
    let shift = |k: &[Q]| -> Vec<Q> {
        let e = data.eta_of(k);
        k.iter().zip(&v).map(|(a, b)| a - &e * b).collect()
    };
    let pres = darboux_presymplectic(data.omega());
    let p = pres.p;
    let mut columns: Vec<Vec<Q>> = (0..2 * p).map(|j| shift(&pres.basis.column(j))).collect();
    columns.push(v.clone());
    // The Reeb vector is a multiple of the first kernel vector with eta != 0; that one is dropped.
    let mut dropped = false;
    for k in kernel.vectors() {
        if !dropped && !data.eta_of(&k).is_zero() {
            dropped = true;
            continue;
        }
        columns.push(shift(&k));
    }
    debug_assert_eq!(columns.len(), n);
    Ok(DarbouxBasis { basis: QMatrix::from_columns(n, &columns), p, k: n - 2 * p - 1, time_column: Some(2 * p) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn presymplectic_trivial_cases() {
        let b = darboux_presymplectic(&SkewForm::canonical(2, 1));
        assert_eq!((b.basis.clone(), b.p), (QMatrix::identity(2), 1));
        let b = darboux_presymplectic(&SkewForm::zero(3));
        assert_eq!((b.basis.clone(), b.p), (QMatrix::identity(3), 0));
    }

    #[test]
    fn presymplectic_congruence_is_canonical() {
        let m = QMatrix::from_i64(4, 4, &[0, 2, 1, 0, -2, 0, 3, 1, -1, -3, 0, 5, 0, -1, -5, 0]);
        let f = SkewForm::new(m).unwrap();
        let b = darboux_presymplectic(&f);
        assert_eq!(b.p, 2);
        assert_eq!(f.congruence(&b.basis), *SkewForm::canonical(4, 2).matrix());
    }

    #[test]
    fn precosymplectic_trivial_cases() {
        let d = CosymplecticLinearData::new(SkewForm::canonical(3, 1), vec![int(0), int(0), int(1)]).unwrap();
        let b = darboux_precosymplectic(&d).unwrap();
        assert_eq!((b.p, b.k, b.time_column), (1, 0, Some(2)));
        assert_eq!(b.basis, QMatrix::identity(3));

        let d = CosymplecticLinearData::new(SkewForm::zero(2), vec![int(1), int(0)]).unwrap();
        let b = darboux_precosymplectic(&d).unwrap();
        assert_eq!((b.p, b.k), (0, 1));
        assert_eq!(b.column(0), vec![int(1), int(0)]);
    }

    #[test]
    fn precosymplectic_rejects_eta_on_image() {
        let d = CosymplecticLinearData::new(SkewForm::canonical(3, 1), vec![int(1), int(0), int(0)]).unwrap();
        assert_eq!(darboux_precosymplectic(&d), Err(CoslinalgError::NotPrecosymplectic));
    }
}
