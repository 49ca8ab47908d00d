use std::collections::BTreeMap;

use gnpforge_core::cyclotomic::Cyclotomic;
use gnpforge_core::ffield::FieldSpec;
use gnpforge_core::lfunction::*;
use gnpforge_core::modular::ExponentSet;
use gnpforge_core::{Budget, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, p: u32, m: usize, exps: &[u64]) -> InputPolynomial {
    let field = FieldSpec::new(p, m).unwrap();
    let q = field.order();
    let mut coeffs: BTreeMap<u64, _> = exps.iter().map(|&d| (d, field.from_index(rng.gen_range(0..q)))).collect();
    coeffs.insert(*exps.last().unwrap(), field.from_index(rng.gen_range(1..q)));
    InputPolynomial::new(&field, coeffs).unwrap()
}

#[test]
fn engine_matches_pointwise_evaluation() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m, exps) in [
        (2u32, 1usize, vec![1u64, 3, 5]),
        (2, 2, vec![1, 3, 5]),
        (3, 1, vec![1, 2, 4, 5]),
        (3, 2, vec![1, 2, 4]),
        (5, 1, vec![1, 2, 3, 4]),
        (7, 1, vec![1, 3]),
    ] {
        for _ in 0..4 {
            let f = random_poly(&mut rng, p, m, &exps);
            let fast = l_polynomial(&f, &b).unwrap();
            let slow = l_polynomial_reference(&f, &b).unwrap();
            assert_eq!(fast, slow, "{f} over F_{p}^{m}");
        }
    }
}

#[test]
fn quadratic_gauss_sums() {
    // l_1 = -g for x^2, and g^2 = (-1)^((p-1)/2) p.
    let b = Budget::default();
    for p in [3u32, 5, 7, 11, 13] {
        let f = InputPolynomial::parse(&FieldSpec::new(p, 1).unwrap(), "2:1").unwrap();
        let l = l_polynomial(&f, &b).unwrap();
        let g = &l.coeffs()[1];
        let sign = if p % 4 == 1 { 1 } else { -1 };
        assert_eq!(g * g, Cyclotomic::from_int(p, BigInt::from(sign * p as i64)), "p={p}");
    }
}

#[test]
fn galois_action_scales_the_polynomial() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, m, exps) in [(3u32, 1usize, vec![1u64, 2, 4]), (5, 1, vec![1, 3]), (7, 1, vec![2, 3]), (3, 2, vec![1, 2])] {
        for _ in 0..3 {
            let f = random_poly(&mut rng, p, m, &exps);
            for a in 2..p {
                let scaled = InputPolynomial::new(f.field(), f.coeffs().iter().map(|(&d, c)| (d, c.scale(a)))).unwrap();
                for r in 1..=2 {
                    let s = character_sum(&f, r, &b).unwrap();
                    assert_eq!(character_sum(&scaled, r, &b).unwrap(), s.galois(a), "{f} a={a} r={r}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // The reciprocal roots have absolute value sqrt(q): the polygon ends at
    // (d0 - 1, (d0 - 1)/2) and lies on or above the Hodge bound x/d0 near 0.
    #[test]
    fn polygon_endpoint_and_bound(seed in 0u64..1000, which in 0usize..4) {
        let (p, m, exps): (u32, usize, Vec<u64>) = [
            (2, 1, vec![1, 3, 5, 7]),
            (3, 1, vec![1, 2, 4, 5]),
            (5, 1, vec![1, 2, 3, 4, 6]),
            (2, 2, vec![1, 3, 5]),
        ][which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, p, m, &exps);
        let np = newton_polygon(&f, &Budget::default()).unwrap();
        let d0 = f.degree();
        prop_assert_eq!(np.vertices().last().unwrap(), &(d0 - 1, Rational::new(d0 as i64 - 1, 2)));
        prop_assert!(np.first_slope().unwrap() >= Rational::new(1, d0 as i64));
    }
}

#[test]
fn verify_sweeps_have_no_mismatch() {
    let b = Budget::default();
    for (p, m, exps) in [
        (2u32, 1usize, vec![1u64, 3]),
        (2, 2, vec![1, 3]),
        (2, 3, vec![1, 3]),
        (2, 2, vec![1, 3, 5, 7]),
        (3, 1, vec![1, 2, 4]),
        (3, 2, vec![1, 2, 4]),
        (3, 1, vec![1, 2, 4, 5, 7]),
        (2, 2, vec![1, 3, 5]),
        (7, 1, vec![1, 2, 3]),
    ] {
        let set = ExponentSet::new(p, exps.clone()).unwrap();
        let r = verify_prediction(&set, m, VerifyMode::Exhaustive, &b).unwrap();
        assert_eq!(r.mismatch_count, 0, "p={p} m={m} {exps:?}: {:?}", r.findings());
        assert_eq!(r.polynomials, r.strata.iter().map(|s| s.count).sum::<u64>());
        assert_eq!(r.hits, r.nonvanishing);
    }
}

#[test]
fn vanishing_polynomials_follow_their_support() {
    // H = a5 a7^3 for p = 3: a5 = 0 leaves the support {.., 7} without 5.
    let b = Budget::default();
    let set = ExponentSet::new(3, [1, 2, 4, 5, 7]).unwrap();
    let r = verify_prediction(&set, 1, VerifyMode::Exhaustive, &b).unwrap();
    assert_eq!(r.prediction.hasse.as_ref().unwrap().to_string(), "a5*a7^3");
    assert_eq!(r.polynomials, 162);
    assert_eq!(r.nonvanishing, 108);
    assert_eq!(r.support_checks + r.support_inconclusive, 54);
    assert!(r.support_checks > 0);
    assert_eq!(r.mismatch_count, 0);
}

#[test]
fn sampling_is_seeded() {
    let b = Budget::default();
    let set = ExponentSet::new(2, [1, 3, 5, 7]).unwrap();
    let a = verify_prediction(&set, 3, VerifyMode::Sample { count: 40, seed: 9 }, &b).unwrap();
    let c = verify_prediction(&set, 3, VerifyMode::Sample { count: 40, seed: 9 }, &b).unwrap();
    assert_eq!(a.polynomials, 40);
    assert_eq!(a.strata, c.strata);
    assert_eq!(a.mismatch_count, 0);
}

#[test]
fn supersingular_scans() {
    let b = Budget::default();
    let r = supersingular_scan(2, 7, 1, &b).unwrap();
    assert_eq!((r.n, r.supersingular, r.off_prediction), (3, 0, 0));
    assert_eq!(r.slopes, vec![SlopeCount { slope: Rational::new(1, 3), count: 8 }]);
    let r = supersingular_scan(3, 4, 1, &b).unwrap();
    assert!(r.excluded);
    assert_eq!(r.family, "2p^n-2");
    assert_eq!(r.off_prediction, 0);
    assert!(r.findings().is_empty());
    assert!(supersingular_scan(3, 5, 1, &b).is_err());
}

#[test]
fn budgets_are_enforced() {
    let b = Budget { field_points: 100, ..Budget::default() };
    let f = InputPolynomial::parse(&FieldSpec::new(2, 1).unwrap(), "9:1").unwrap();
    assert!(matches!(l_polynomial(&f, &b), Err(gnpforge_core::Error::BudgetExceeded { .. })));
}
