mod common;

use coiso::coslinalg::{
    canonical_lagrangian_form, cosymplectic_complement, darboux_precosymplectic, darboux_presymplectic,
    direct_rank_check, flat, flat_inverse, is_coisotropic, lagrangian_normal_form, reeb_linear, skew_rank_kernel,
    SkewForm, Subspace,
};
use coiso::matrix::QMatrix;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

use common::{cosymplectic, precosymplectic, random_skew, rng, symplectic_with_lagrangian, vector};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn rank_is_even_and_kernel_complements_it(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=10);
        let f = SkewForm::new(random_skew(&mut r, n)).unwrap();
        let (rank, kernel) = skew_rank_kernel(&f);
        prop_assert_eq!(rank % 2, 0);
        prop_assert_eq!(kernel.dim(), n - rank);
        for v in kernel.vectors() {
            prop_assert!(f.contract(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn darboux_basis_is_canonical(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=12);
        let f = SkewForm::new(random_skew(&mut r, n)).unwrap();
        let b = darboux_presymplectic(&f);
        prop_assert_eq!(f.congruence(&b.basis), SkewForm::canonical(n, b.p).matrix().clone());
        prop_assert_eq!(b.basis.rank(), n);
        prop_assert_eq!(2 * b.p, f.rank());
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn precosymplectic_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, k) = (r.gen_range(0..=3), r.gen_range(0..=3));
        let (data, _) = precosymplectic(&mut r, p, k);
        let b = darboux_precosymplectic(&data).unwrap();
        let n = data.dim();
        prop_assert_eq!((b.p, b.k), (p, k));
        prop_assert_eq!(data.omega().congruence(&b.basis), SkewForm::canonical(n, p).matrix().clone());
        let eta_b = b.basis.transpose().mul_vec(data.eta());
        for (j, e) in eta_b.iter().enumerate() {
            prop_assert_eq!(e.is_zero(), Some(j) != b.time_column);
        }
        prop_assert!(eta_b[b.time_column.unwrap()] == coiso::rational::one());
    }

    #[test]
    fn flat_inverse_inverts_flat(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 * r.gen_range(1..=4) + 1;
        let (data, _) = cosymplectic(&mut r, n);
        let x = vector(&mut r, n);
        prop_assert_eq!(flat_inverse(&data, &flat(&data, &x)).unwrap(), x);
    }

    #[test]
    fn cosymplectic_complement_properties(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 * r.gen_range(1..=3) + 1;
        let (data, _) = cosymplectic(&mut r, n);
        let xi = reeb_linear(&data).unwrap();
        let mut vectors = vec![xi.clone()];
        for _ in 0..r.gen_range(0..n) {
            vectors.push(vector(&mut r, n));
        }
        let w = Subspace::span(n, &vectors);
        let c = cosymplectic_complement(&data, &w);
        for v in c.vectors() {
            prop_assert!(data.eta_of(&v).is_zero());
        }
        prop_assert_eq!(c.dim(), n - w.dim());
        let kernel_eta = Subspace::span(n, &QMatrix::from_rows(&[data.eta().to_vec()]).kernel());
        let cc = cosymplectic_complement(&data, &c);
        prop_assert!(cc.same_span(&w.intersection(&kernel_eta)));
    }

    #[test]
    fn symplectic_subspace_meets_its_complement_trivially(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 * r.gen_range(1..=4) + 1;
        let (data, _) = cosymplectic(&mut r, n);
        let b = darboux_precosymplectic(&data).unwrap();
        let mut vectors = Vec::new();
        for i in 0..b.p {
            if r.gen_bool(0.5) {
                vectors.push(b.column(i));
                vectors.push(b.column(b.p + i));
            }
        }
        let g = Subspace::span(n, &vectors);
        let c = cosymplectic_complement(&data, &g);
        prop_assert_eq!(g.intersection(&c).dim(), 0);
        prop_assert_eq!(g.dim() + c.dim(), n - 1);
    }

    #[test]
    fn lagrangian_normal_form_pushes_to_omega_l(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(1..=4);
        let (f, l) = symplectic_with_lagrangian(&mut r, m);
        let nf = lagrangian_normal_form(&f, &l).unwrap();
        prop_assert_eq!(&nf.omega_l, &canonical_lagrangian_form(m));
        // f = φ*ω_L
        prop_assert_eq!(&(&nf.phi.transpose() * &nf.omega_l) * &nf.phi, f.matrix().clone());
        for (a, v) in l.vectors().iter().enumerate() {
            let image = nf.apply(v);
            for (i, c) in image.iter().enumerate() {
                prop_assert_eq!(c.is_zero(), i != a);
            }
            prop_assert!(image[a] == coiso::rational::one());
        }
    }
}

/// Every subset of Darboux generators extended by ξ gives a coisotropic
/// subspace whose restricted rank is as predicted.
#[test]
fn direct_rank_exhaustive_over_generator_subsets() {
    let mut r = rng(7);
    for n in [3usize, 5, 7] {
        for _ in 0..3 {
            let (data, _) = cosymplectic(&mut r, n);
            let b = darboux_precosymplectic(&data).unwrap();
            let p = b.p;
            let time = b.time_column.unwrap();
            let mut checked = 0;
            for mask in 0u32..(1 << (2 * p)) {
                let mut vectors = vec![b.column(time)];
                vectors.extend((0..2 * p).filter(|j| mask & (1 << j) != 0).map(|j| b.column(j)));
                let w = Subspace::span(n, &vectors);
                if !is_coisotropic(&data, &w).unwrap().coisotropic {
                    continue;
                }
                let check = direct_rank_check(&data, &w).unwrap();
                assert!(check.matches, "n = {n}, mask = {mask:b}: {check:?}");
                checked += 1;
            }
            assert!(checked > 0);
        }
    }
}
