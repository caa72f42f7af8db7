use nalgebra::DMatrix;

use crate::forms::{Chart, FormsError, PolyScalar};

/// A vector field depending on a time parameter.
pub trait TimeDependentField {
    fn dim(&self) -> usize;
    fn eval(&self, t: f64, p: &[f64]) -> Vec<f64>;
}

/// A field with polynomial components in `(chart coordinates, s)`, where the
/// extra last variable `s` is the flow parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTimeField {
    chart: Chart,
    components: Vec<PolyScalar>,
}

impl PolyTimeField {
    pub fn new(chart: &Chart, components: Vec<PolyScalar>) -> Result<Self, FormsError> {
        let n = chart.dim();
        if components.len() != n {
            return Err(FormsError::ComponentCount { expected: n, found: components.len() });
        }
        if let Some(c) = components.iter().find(|c| c.nvars() != n + 1) {
            return Err(FormsError::ComponentCount { expected: n + 1, found: c.nvars() });
        }
        Ok(PolyTimeField { chart: chart.clone(), components })
    }

    pub fn components(&self) -> &[PolyScalar] {
        &self.components
    }
}

impl TimeDependentField for PolyTimeField {
    fn dim(&self) -> usize {
        self.chart.dim()
    }

    fn eval(&self, t: f64, p: &[f64]) -> Vec<f64> {
        let mut q = p.to_vec();
        q.push(t);
        self.components.iter().map(|c| c.eval_f64(&q)).collect()
    }
}

/// Adapts a closure `(t, p) -> X_t(p)`.
pub struct FnField<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(f64, &[f64]) -> Vec<f64>> FnField<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnField { dim, f }
    }
}

impl<F: Fn(f64, &[f64]) -> Vec<f64>> TimeDependentField for FnField<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, t: f64, p: &[f64]) -> Vec<f64> {
        (self.f)(t, p)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowOptions {
    pub steps: usize,
    /// Central-difference step for the Jacobian estimates.
    pub jacobian_step: f64,
    /// A trajectory is abandoned once its sup norm exceeds this or turns non-finite.
    pub divergence_bound: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub jacobians: bool,
    /// Keep every intermediate point, not only the endpoints.
    pub keep_trajectories: bool,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            steps: 64,
            jacobian_step: 1e-5,
            divergence_bound: 1e6,
            t_start: 0.0,
            t_end: 1.0,
            jacobians: true,
            keep_trajectories: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowResult {
    pub seeds: Vec<Vec<f64>>,
    /// Per seed, the points at `t_start + k (t_end - t_start) / steps`; only
    /// the endpoints when trajectories are not kept. Truncated on divergence.
    pub trajectories: Vec<Vec<Vec<f64>>>,
    pub step_count: usize,
    /// Central-difference Jacobian of the time-`t_end` map at each seed.
    pub jacobians: Vec<Option<DMatrix<f64>>>,
    pub diverged: Vec<bool>,
}

impl FlowResult {
    /// Image of seed `i`, unless its trajectory diverged.
    pub fn endpoint(&self, i: usize) -> Option<&[f64]> {
        if self.diverged[i] {
            None
        } else {
            self.trajectories[i].last().map(Vec::as_slice)
        }
    }
}

fn axpy(p: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    p.iter().zip(k).map(|(x, y)| x + a * y).collect()
}

fn escaped(p: &[f64], bound: f64) -> bool {
    p.iter().any(|x| !x.is_finite() || x.abs() > bound)
}

/// Classical RK4 from `t_start` to `t_end`; `None` on divergence.
pub fn flow_point<F: TimeDependentField + ?Sized>(
    field: &F,
    seed: &[f64],
    opts: &FlowOptions,
    mut record: Option<&mut Vec<Vec<f64>>>,
) -> Option<Vec<f64>> {
    let h = (opts.t_end - opts.t_start) / opts.steps as f64;
    let mut p = seed.to_vec();
    if let Some(r) = record.as_deref_mut() {
        r.push(p.clone());
    }
    for k in 0..opts.steps {
        let t = opts.t_start + k as f64 * h;
        let k1 = field.eval(t, &p);
        let k2 = field.eval(t + h / 2.0, &axpy(&p, h / 2.0, &k1));
        let k3 = field.eval(t + h / 2.0, &axpy(&p, h / 2.0, &k2));
        let k4 = field.eval(t + h, &axpy(&p, h, &k3));
        for i in 0..p.len() {
            p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if escaped(&p, opts.divergence_bound) {
            return None;
        }
        if let Some(r) = record.as_deref_mut() {
            r.push(p.clone());
        }
    }
    Some(p)
}

/// Central-difference Jacobian of the flow map at `seed`.
pub fn flow_jacobian<F: TimeDependentField + ?Sized>(field: &F, seed: &[f64], opts: &FlowOptions) -> Option<DMatrix<f64>> {
    let n = seed.len();
    let h = opts.jacobian_step;
    let mut jac = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut plus = seed.to_vec();
        let mut minus = seed.to_vec();
        plus[j] += h;
        minus[j] -= h;
        let a = flow_point(field, &plus, opts, None)?;
        let b = flow_point(field, &minus, opts, None)?;
        for i in 0..n {
            jac[(i, j)] = (a[i] - b[i]) / (2.0 * h);
        }
    }
    Some(jac)
}

/// Integrates `dp/dt = field(t, p)` for every seed.
pub fn integrate_flow<F: TimeDependentField + ?Sized>(field: &F, seeds: &[Vec<f64>], steps: usize) -> FlowResult {
    integrate_flow_with(field, seeds, &FlowOptions { steps, ..FlowOptions::default() })
}

pub fn integrate_flow_with<F: TimeDependentField + ?Sized>(
    field: &F,
    seeds: &[Vec<f64>],
    opts: &FlowOptions,
) -> FlowResult {
    assert!(opts.steps >= 1, "at least one step is required");
    let mut trajectories = Vec::with_capacity(seeds.len());
    let mut jacobians = Vec::with_capacity(seeds.len());
    let mut diverged = Vec::with_capacity(seeds.len());
    for seed in seeds {
        assert_eq!(seed.len(), field.dim(), "seed dimension");
        let mut traj = Vec::new();
        let end = flow_point(field, seed, opts, opts.keep_trajectories.then_some(&mut traj));
        match end {
            Some(p) => {
                if !opts.keep_trajectories {
                    traj.push(p);
                }
                diverged.push(false);
                jacobians.push(if opts.jacobians { flow_jacobian(field, seed, opts) } else { None });
            }
            None => {
                diverged.push(true);
                jacobians.push(None);
            }
        }
        trajectories.push(traj);
    }
    FlowResult { seeds: seeds.to_vec(), trajectories, step_count: opts.steps, jacobians, diverged }
}
