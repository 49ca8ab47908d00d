use gnpforge_core::dwork::*;
use gnpforge_core::ffield::FieldSpec;
use gnpforge_core::lfunction::{InputPolynomial, SweepSpace};
use gnpforge_core::modular::{digit_double_factorial, p_weight, ExponentSet};
use gnpforge_core::{Budget, PiAdicElement};
use num_bigint::{BigInt, BigUint};
use num_traits::One;

fn poly(p: u32, text: &str) -> InputPolynomial {
    InputPolynomial::parse(&FieldSpec::new(p, 1).unwrap(), text).unwrap()
}

#[test]
fn factorial_matches_digit_double_factorial() {
    // n! = (-p)^a n!! mod p^(a+1), a = (n - s_p(n))/(p-1)
    for p in [2u32, 3, 5, 7] {
        let mut fact = BigInt::one();
        for n in 0u64..200 {
            if n > 0 {
                fact *= n;
            }
            let a = (n - p_weight(n as u128, p)) / (p as u64 - 1);
            let modulus = BigInt::from(p).pow(a as u32 + 1);
            let rhs = BigInt::from(-(p as i64)).pow(a as u32) * BigInt::from(digit_double_factorial(n as u128, p));
            assert_eq!((&fact - rhs) % &modulus, BigInt::from(0), "p={p} n={n}");
        }
    }
    assert_eq!(digit_double_factorial(2 * 9 + 2 * 3 + 1, 3), BigUint::from(4u32));
}

#[test]
fn splitting_coefficients_examples() {
    let r = verify_splitting_coefficients(3, 1, [2], 6).unwrap();
    assert!(r.all_hold);
    assert_eq!(r.cases[0].case, "i");
    let r = verify_splitting_coefficients(2, 1, 0..=64, 6 + 2).unwrap();
    assert!(r.all_hold);
    let r = verify_splitting_coefficients(5, 1, [5], 10).unwrap();
    assert_eq!(r.cases[0].case, "ii");
    assert!(r.cases[0].valuation.at_least(5));
    assert!(r.all_hold);
    // lambda_2 for p = 2 is 4 = pi^2
    assert!(verify_splitting_coefficients(2, 1, [2], 4).unwrap().cases[0].valuation.at_least(2));
    assert!(matches!(verify_splitting_coefficients(5, 1, 0..=30, 4), Err(gnpforge_core::Error::Precision(_))));
}

#[test]
fn splitting_coefficients_over_extensions() {
    for (p, m) in [(2u32, 2u32), (2, 3), (3, 2)] {
        let q = (p as u64).pow(m);
        let r = verify_splitting_coefficients(p, m, 0..=3 * q, 3 * m as u64 * (p as u64 - 1) + 2 * p as u64).unwrap();
        assert!(r.all_hold, "p={p} m={m}");
    }
}

#[test]
fn minor_congruence_examples() {
    let b = Budget::default();
    let set = ExponentSet::new(2, [1, 3]).unwrap();
    let r = minor_congruence_check(&set, &poly(2, "3:1"), None, &b).unwrap();
    assert_eq!((r.det_residue, r.hasse_value), (1, 1));
    assert!(r.residue_ok && r.valuation_ok);

    // Sigma = {1, 2, 3} and H = a4^3 here; the in-ring determinant agrees.
    let set = ExponentSet::new(3, [1, 2, 4]).unwrap();
    for (text, h) in [("4:1,2:1", 1), ("4:1", 1), ("4:2", 2), ("4:2,2:2,1:1", 2)] {
        let r = minor_congruence_check(&set, &poly(3, text), None, &b).unwrap();
        assert_eq!(r.sigma, vec![1, 2, 3]);
        assert_eq!(r.bound, 3);
        assert_eq!((r.det_residue, r.hasse_value), (h, h), "{text}");
    }
}

#[test]
fn cyclic_minor_examples() {
    let b = Budget::default();
    let set = ExponentSet::new(2, [1, 3]).unwrap();
    let r = cyclic_minor_check(&set, &poly(2, "3:1,1:1"), &[1, 2], None, &b).unwrap();
    assert!(r.in_sigma && r.holds);
    assert_eq!(r.valuation, PiValuation::Exact(1));
    let r = cyclic_minor_check(&set, &poly(2, "3:1"), &[1, 5], None, &b).unwrap();
    assert!(!r.in_sigma && r.holds);
    assert!(r.valuation.at_least(2));
    assert!(cyclic_minor_check(&set, &poly(2, "3:1"), &[1, 1], None, &b).is_err());
}

#[test]
fn dwork_checks_hold_on_small_families() {
    let b = Budget::default();
    for (p, d) in [(2u32, vec![1u64, 3]), (2, vec![1, 3, 5]), (3, vec![1, 2, 4]), (7, vec![1, 2, 3]), (5, vec![1, 2, 3, 4])] {
        let set = ExponentSet::new(p, d.clone()).unwrap();
        let space = SweepSpace::new(&FieldSpec::new(p, 1).unwrap(), &set).unwrap();
        for cell in space.cells().take(40) {
            let f = space.polynomial(cell);
            let r = dwork_check(&set, &f, None, &b).unwrap();
            assert!(r.findings().is_empty(), "p={p} {d:?} {f}: {:?}", r.findings());
            assert!(r.subsets.iter().all(|s| s.decomposition_matches));
        }
    }
}

#[test]
fn determinant_of_singletons_is_the_entry() {
    let f = poly(5, "4:3,1:1");
    let m = DworkMatrix::new(&f, &[2], 12).unwrap();
    assert_eq!(m.det(), f1_coefficient(&f, 8, 12).unwrap());
    let m = DworkMatrix::new(&f, &[1, 7], 12).unwrap();
    assert!(m.entry(0, 1).is_zero());
    assert_eq!(m.det(), &f1_coefficient(&f, 4, 12).unwrap() * &f1_coefficient(&f, 28, 12).unwrap());
    assert_eq!(teichmuller(5, 3, 12).pow(4), PiAdicElement::one(5, 12));
}
