//! Seeded random generators shared by the property suites.
#![allow(dead_code)]

use coiso::coslinalg::{CosymplecticLinearData, SkewForm, Subspace};
use coiso::forms::{Chart, PolyForm, PolyScalar};
use coiso::matrix::QMatrix;
use coiso::rational::{int, ratio, Q};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `a/b` with `|a| ≤ 3`, `1 ≤ b ≤ 3`.
pub fn small_q(rng: &mut impl Rng) -> Q {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn nonzero_q(rng: &mut impl Rng) -> Q {
    loop {
        let q = small_q(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| small_q(rng)).collect()
}

/// `P L U` with unit triangular factors and a nonzero diagonal: always invertible.
pub fn invertible(rng: &mut impl Rng, n: usize) -> QMatrix {
    let mut l = QMatrix::identity(n);
    let mut u = QMatrix::zeros(n, n);
    for i in 0..n {
        u[(i, i)] = nonzero_q(rng);
        for j in 0..n {
            if j < i {
                l[(i, j)] = small_q(rng);
            } else if j > i {
                u[(i, j)] = small_q(rng);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = QMatrix::identity(n).select_columns(&perm);
    &(&p * &l) * &u
}

/// A skew matrix of rank `2p`: the canonical one under a random change of basis.
pub fn skew_of_rank(rng: &mut impl Rng, n: usize, p: usize) -> QMatrix {
    SkewForm::canonical(n, p).congruence(&invertible(rng, n))
}

/// Either a dense random skew matrix or one of random rank.
pub fn random_skew(rng: &mut impl Rng, n: usize) -> QMatrix {
    if rng.gen_bool(0.5) {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.6) {
                    let q = small_q(rng);
                    m[(j, i)] = -q.clone();
                    m[(i, j)] = q;
                }
            }
        }
        m
    } else {
        let p = rng.gen_range(0..=n / 2);
        skew_of_rank(rng, n, p)
    }
}

/// The canonical precosymplectic pair of type `(p, k)` pushed through a random
/// basis change `b`; the columns of `b^{-1}` are then a Darboux basis.
pub fn precosymplectic(rng: &mut impl Rng, p: usize, k: usize) -> (CosymplecticLinearData, QMatrix) {
    let n = 2 * p + 1 + k;
    let b = invertible(rng, n);
    let omega = SkewForm::canonical(n, p).congruence(&b);
    let mut e = vec![Q::zero(); n];
    e[2 * p] = Q::one();
    let eta = b.transpose().mul_vec(&e);
    (CosymplecticLinearData::from_parts(omega, eta).unwrap(), b)
}

pub fn cosymplectic(rng: &mut impl Rng, n: usize) -> (CosymplecticLinearData, QMatrix) {
    assert!(n % 2 == 1);
    precosymplectic(rng, (n - 1) / 2, 0)
}

/// A random symplectic form on `Q^{2m}` and a Lagrangian subspace of it,
/// given by a random basis.
pub fn symplectic_with_lagrangian(rng: &mut impl Rng, m: usize) -> (SkewForm, Subspace) {
    let n = 2 * m;
    let b = invertible(rng, n);
    let f = SkewForm::new(SkewForm::canonical(n, m).congruence(&b)).unwrap();
    let binv = b.inverse().unwrap();
    let mix = invertible(rng, m);
    let vectors: Vec<Vec<Q>> = (0..m)
        .map(|a| {
            let mut v = vec![Q::zero(); n];
            for c in 0..m {
                let col = binv.column(c);
                for (vi, ci) in v.iter_mut().zip(&col) {
                    *vi += &mix[(c, a)] * ci;
                }
            }
            v
        })
        .collect();
    (f, Subspace::new(n, vectors).unwrap())
}

/// A random polynomial in `nvars` variables drawn from `vars`, of total degree
/// at most `max_deg`, with at most `max_terms` terms.
pub fn poly_in(rng: &mut impl Rng, nvars: usize, vars: &[usize], max_deg: u32, max_terms: usize) -> PolyScalar {
    let mut f = PolyScalar::zero(nvars);
    if vars.is_empty() {
        return PolyScalar::constant(nvars, small_q(rng));
    }
    for _ in 0..rng.gen_range(0..=max_terms) {
        let mut e = vec![0u32; nvars];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            e[*vars.choose(rng).unwrap()] += 1;
        }
        f.add_term(e, small_q(rng));
    }
    f
}

pub fn poly(rng: &mut impl Rng, nvars: usize, max_deg: u32, max_terms: usize) -> PolyScalar {
    let vars: Vec<usize> = (0..nvars).collect();
    poly_in(rng, nvars, &vars, max_deg, max_terms)
}

/// A random `degree`-form on `chart`.
pub fn form(rng: &mut impl Rng, chart: &Chart, degree: usize, max_deg: u32, max_terms: usize) -> PolyForm {
    let n = chart.dim();
    let mut w = PolyForm::zero(chart, degree);
    if degree > n {
        return w;
    }
    let idx: Vec<usize> = (0..n).collect();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let pick: Vec<usize> = idx.choose_multiple(rng, degree).copied().collect();
        w.add_term(&pick, poly(rng, n, max_deg, 2));
    }
    w
}

pub fn chart(n: usize) -> Chart {
    Chart::new((0..n).map(|i| format!("u{i}")), None).unwrap()
}

pub fn point(rng: &mut impl Rng, n: usize) -> Vec<Q> {
    vector(rng, n)
}

pub fn q(n: i64) -> Q {
    int(n)
}
