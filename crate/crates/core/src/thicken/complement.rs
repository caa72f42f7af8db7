use num_traits::Zero;

use crate::forms::{Chart, PolyForm, PolyScalar, PolyVectorField};
use crate::rational::Q;

use super::{fiber_labels, PrecosymplecticChartStructure, ThickenError};

/// A user-supplied tilt of the complement: `A[r][i]` multiplies `dx^i` in the
/// `r`-th fiber direction; `C[r]` is the `K`-component of the projected Reeb
/// field and must vanish. Polynomials are over the base chart.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ComplementTable {
    pub a: Vec<Vec<PolyScalar>>,
    /// Empty means identically zero.
    pub c: Vec<PolyScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplementPolicy {
    /// `G = span(∂x^1..∂x^{2p}, ∂t)`.
    Coordinate,
    Custom(ComplementTable),
}

/// A complement `G` of `K` containing `ξ = ∂t`, with `G` spanned by
/// `∂x^i − Σ_r A^r_i ∂z^r` and `∂t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementChoice {
    base: Chart,
    x: Vec<usize>,
    z: Vec<usize>,
    a: Vec<Vec<PolyScalar>>,
    k_fields: Vec<PolyVectorField>,
    g_fields: Vec<PolyVectorField>,
}

impl ComplementChoice {
    pub fn base_chart(&self) -> &Chart {
        &self.base
    }

    pub fn a_table(&self) -> &[Vec<PolyScalar>] {
        &self.a
    }

    pub fn k_fields(&self) -> &[PolyVectorField] {
        &self.k_fields
    }

    /// The `2p` tilted fields followed by `∂t`.
    pub fn g_fields(&self) -> &[PolyVectorField] {
        &self.g_fields
    }

    /// `p_G(v)` at a base point: the `K`-component of `v` in the splitting `K ⊕ G`.
    pub fn project_to_k(&self, point: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.base.dim()];
        for (r, &zr) in self.z.iter().enumerate() {
            let mut acc = v[zr].clone();
            for (i, &xi) in self.x.iter().enumerate() {
                if !v[xi].is_zero() {
                    acc += self.a[r][i].evaluate(point) * &v[xi];
                }
            }
            out[zr] = acc;
        }
        out
    }

    /// `v − p_G(v)`.
    pub fn project_to_g(&self, point: &[Q], v: &[Q]) -> Vec<Q> {
        let k = self.project_to_k(point, v);
        v.iter().zip(&k).map(|(a, b)| a - b).collect()
    }

    /// The chart `(base, b_1..b_k)`.
    pub fn thickened_chart(&self) -> Chart {
        self.base.extended(fiber_labels(&self.base, self.z.len())).expect("fiber labels avoid base labels")
    }
}

pub fn choose_complement(
    s: &PrecosymplecticChartStructure,
    policy: ComplementPolicy,
) -> Result<ComplementChoice, ThickenError> {
    let n = s.dim();
    let (p2, k) = (2 * s.p(), s.k());
    let a = match policy {
        ComplementPolicy::Coordinate => vec![vec![PolyScalar::zero(n); p2]; k],
        ComplementPolicy::Custom(table) => {
            if table.a.len() != k || table.a.iter().any(|row| row.len() != p2) {
                return Err(ThickenError::ComplementShape(format!("expected {k} rows of {p2} entries")));
            }
            if !(table.c.is_empty() || table.c.len() == k) {
                return Err(ThickenError::ComplementShape(format!("expected {k} C entries")));
            }
            if let Some(r) = table.c.iter().position(|c| !c.is_zero()) {
                return Err(ThickenError::NonzeroTimeComponent(r));
            }
            for (r, row) in table.a.iter().enumerate() {
                for (i, f) in row.iter().enumerate() {
                    if f.nvars() != n {
                        return Err(ThickenError::ComplementShape(format!(
                            "A[{r}][{i}] has {} variables, the base chart has {n}",
                            f.nvars()
                        )));
                    }
                    // A t-dependent tilt makes i_{∂t} dλ nonzero off the zero section.
                    if f.depends_on(s.time_index()) {
                        return Err(ThickenError::TimeDependentComplement { r, i });
                    }
                }
            }
            table.a
        }
    };
    debug_assert!(a.iter().all(|row| row.len() == p2));
    let chart = s.chart();
    let k_fields = s.z_indices().iter().map(|&zr| PolyVectorField::coordinate(chart, zr)).collect();
    let mut g_fields = Vec::with_capacity(p2 + 1);
    for (i, &xi) in s.x_indices().iter().enumerate() {
        let mut comps = vec![PolyScalar::zero(n); n];
        comps[xi] = PolyScalar::one(n);
        for (r, &zr) in s.z_indices().iter().enumerate() {
            comps[zr] = -a[r][i].clone();
        }
        g_fields.push(PolyVectorField::new(chart, comps)?);
    }
    g_fields.push(s.reeb_field());
    Ok(ComplementChoice {
        base: chart.clone(),
        x: s.x_indices().to_vec(),
        z: s.z_indices().to_vec(),
        a,
        k_fields,
        g_fields,
    })
}

/// `λ = Σ_r b_r (dz^r + Σ_i A^r_i dx^i)` on the thickened chart.
pub fn liouville_form(c: &ComplementChoice) -> Result<PolyForm, ThickenError> {
    let chart = c.thickened_chart();
    let n = chart.dim();
    let base_map: Vec<usize> = (0..c.base.dim()).collect();
    let mut lambda = PolyForm::zero(&chart, 1);
    for (r, &zr) in c.z.iter().enumerate() {
        let b = PolyScalar::var(n, c.base.dim() + r);
        lambda.add_term(&[zr], b.clone());
        for (i, &xi) in c.x.iter().enumerate() {
            let a = c.a[r][i].reindex(&base_map, n);
            if !a.is_zero() {
                lambda.add_term(&[xi], &b * &a);
            }
        }
    }
    Ok(lambda)
}
