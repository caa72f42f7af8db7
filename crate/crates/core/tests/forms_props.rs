mod common;

use coiso::forms::{AlternatingTensor, PolyForm, PolyMap, PolyVectorField};
use coiso::matrix::QMatrix;
use proptest::prelude::*;
use rand::Rng;

use common::{chart, form, point, poly, rng};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn d_squared_is_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=6);
        let c = chart(n);
        let k = r.gen_range(0..=3.min(n));
        let a = form(&mut r, &c, k, 3, 4);
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let c = chart(n);
        let (p, q) = (r.gen_range(0..=2), r.gen_range(0..=2));
        let a = form(&mut r, &c, p, 2, 3);
        let b = form(&mut r, &c, q, 2, 3);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let expected = if (p * q) % 2 == 0 { ba } else { ba.neg() };
        prop_assert_eq!(ab, expected);
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn interior_is_an_antiderivation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let c = chart(n);
        let (p, q) = (r.gen_range(1..=2), r.gen_range(0..=2));
        let a = form(&mut r, &c, p, 2, 3);
        let b = form(&mut r, &c, q, 2, 3);
        let x = PolyVectorField::new(&c, (0..n).map(|_| poly(&mut r, n, 1, 2)).collect()).unwrap();
        let lhs = a.wedge(&b).unwrap().interior(&x);
        let first = a.interior(&x).unwrap().wedge(&b).unwrap();
        let second = if q == 0 {
            PolyForm::zero(&c, p + q - 1)
        } else {
            a.wedge(&b.interior(&x).unwrap()).unwrap()
        };
        let second = if p % 2 == 0 { second } else { second.neg() };
        match lhs {
            Ok(lhs) => prop_assert_eq!(lhs, first.add(&second).unwrap()),
            Err(_) => prop_assert!(p + q == 0),
        }
    }

    #[test]
    fn pullback_commutes_with_d(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (m, n) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let src = chart(m);
        let tgt = coiso::forms::Chart::new((0..n).map(|i| format!("v{i}")), None).unwrap();
        let map = PolyMap::new(&src, &tgt, (0..n).map(|_| poly(&mut r, m, 2, 3)).collect()).unwrap();
        let k = r.gen_range(0..=2.min(n));
        let a = form(&mut r, &tgt, k, 2, 3);
        prop_assert_eq!(a.d().pullback(&map).unwrap(), a.pullback(&map).unwrap().d());
    }

    #[test]
    fn evaluation_of_wedge_is_alternating_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let c = chart(n);
        let a = form(&mut r, &c, 1, 2, 3);
        let b = form(&mut r, &c, 1, 2, 3);
        let f = form(&mut r, &c, 0, 2, 3);
        let pt = point(&mut r, n);
        let (u, v) = (a.eval_covector(&pt).unwrap(), b.eval_covector(&pt).unwrap());
        let mut expected = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                expected[(i, j)] = &u[i] * &v[j] - &u[j] * &v[i];
            }
        }
        prop_assert_eq!(a.wedge(&b).unwrap().eval_matrix(&pt).unwrap(), expected);
        // a 0-form factor multiplies pointwise
        let fa = f.wedge(&a).unwrap().eval_covector(&pt).unwrap();
        let fv = match f.evaluate(&pt).unwrap() {
            AlternatingTensor::Scalar(s) => s,
            other => panic!("{other:?}"),
        };
        prop_assert_eq!(fa, u.iter().map(|x| x * &fv).collect::<Vec<_>>());
    }
}
