//! Closed-form predictions for the families worked out by hand, used as
//! fixtures for [`super::predict`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::is_prime;
use crate::modular::ExponentSet;
use crate::Rational;

use super::{HassePolynomial, HassePrediction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `D = {i <= p^n - 1 : p does not divide i}`.
    Full { p: u32, n: u32 },
    /// `D = {i <= 2p^n - 2 : p does not divide i}`, p odd.
    Doubled { p: u32, n: u32 },
    /// `D = {odd i <= 2^(n+1) - 3}`.
    Char2 { n: u32 },
    /// The char-2 set without `3 * 2^(n-1) - 1`.
    Char2Fallback { n: u32 },
    /// `D = {1, ..., d0}` with `d0 < p`.
    SmallD0 { p: u32, d0: u64 },
    /// `D = {i <= 3^(n+1) - 2 : 3 does not divide i}`.
    Char3 { n: u32 },
}

impl Family {
    /// The family whose exponent set is exactly `set`, if any. A set that is
    /// both a `Full` and a small-`d0` set is reported as `Full`.
    pub fn detect(set: &ExponentSet) -> Option<Family> {
        let p = set.p();
        let d0 = set.d0();
        let mut candidates = Vec::new();
        let mut n = 1;
        while (p as u64).checked_pow(n).is_some_and(|x| x <= 2 * d0 + 2) {
            candidates.push(Family::Full { p, n });
            candidates.push(Family::Doubled { p, n });
            if p == 2 {
                candidates.push(Family::Char2 { n });
                candidates.push(Family::Char2Fallback { n });
            }
            if p == 3 {
                candidates.push(Family::Char3 { n });
            }
            n += 1;
        }
        if d0 < p as u64 {
            candidates.push(Family::SmallD0 { p, d0 });
        }
        candidates
            .into_iter()
            .find(|f| f.exponent_set().is_ok_and(|s| s.exponents() == set.exponents()))
    }

    pub fn exponent_set(&self) -> Result<ExponentSet> {
        self.validate()?;
        match *self {
            Family::Full { p, n } => ExponentSet::coprime_up_to(p, pow(p, n) - 1),
            Family::Doubled { p, n } => ExponentSet::coprime_up_to(p, 2 * pow(p, n) - 2),
            Family::Char2 { n } => ExponentSet::coprime_up_to(2, pow(2, n + 1) - 3),
            Family::Char2Fallback { n } => {
                let skip = 3 * pow(2, n - 1) - 1;
                ExponentSet::new(2, (1..=pow(2, n + 1) - 3).filter(|i| i % 2 == 1 && *i != skip))
            }
            Family::SmallD0 { p, d0 } => ExponentSet::new(p, 1..=d0),
            Family::Char3 { n } => ExponentSet::coprime_up_to(3, pow(3, n + 1) - 2),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::invalid(format!("{self:?}: {msg}")));
        match *self {
            Family::Full { p, n } => {
                if !is_prime(p as u64) || n == 0 || (p, n) == (2, 1) {
                    return bad("needs p prime, n >= 1 and d0 = p^n - 1 >= 2");
                }
            }
            Family::Doubled { p, n } => {
                if !is_prime(p as u64) || p == 2 || n == 0 {
                    return bad("needs an odd prime p and n >= 1");
                }
            }
            Family::Char2 { n } | Family::Char2Fallback { n } => {
                if n < 2 {
                    return bad("needs n >= 2");
                }
            }
            Family::SmallD0 { p, d0 } => {
                if !is_prime(p as u64) || d0 < 2 || d0 >= p as u64 {
                    return bad("needs p prime and 2 <= d0 < p");
                }
            }
            Family::Char3 { n } => {
                if n == 0 {
                    return bad("needs n >= 1");
                }
            }
        }
        if let Family::Full { p, n } | Family::Doubled { p, n } = *self {
            if (p as f64).powi(n as i32 + 1) > 1e15 {
                return bad("too large");
            }
        }
        Ok(())
    }
}

fn pow(p: u32, n: u32) -> u64 {
    (p as u64).pow(n)
}

fn monomial(set: &ExponentSet, factors: &[(u64, u128)]) -> Vec<u128> {
    let mut m = vec![0u128; set.exponents().len()];
    for &(d, e) in factors {
        m[set.position(d).expect("family exponents lie in D")] += e;
    }
    m
}

/// The prediction read off the closed forms, without any search.
pub fn family_predictor(family: Family) -> Result<HassePrediction> {
    let set = family.exponent_set()?;
    let p = set.p();
    let vars = set.exponents().to_vec();
    let (delta, sigma, terms): (Rational, Vec<u64>, Vec<(Vec<u128>, i64)>) = match family {
        Family::Full { n, .. } => {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            (
                Rational::new(1, n as i64 * (p as i64 - 1)),
                (0..n).map(|i| pow(p, i)).collect(),
                vec![(monomial(&set, &[(pow(p, n) - 1, 1)]), sign)],
            )
        }
        Family::Doubled { n, .. } => (
            Rational::new(1, n as i64 * (p as i64 - 1)),
            (0..n).map(|i| pow(p, i)).chain((0..n).map(|i| 2 * pow(p, i))).collect(),
            vec![(monomial(&set, &[(2 * pow(p, n) - 2, 1), (pow(p, n) - 1, 1)]), 1)],
        ),
        Family::Char2 { n } => (
            Rational::new(1, n as i64),
            (0..=n).map(|i| pow(2, i)).chain((0..n - 1).map(|i| 3 * pow(2, i))).collect(),
            vec![(monomial(&set, &[(3 * pow(2, n - 1) - 1, 1), (pow(2, n + 1) - 3, pow(2, n - 1) as u128)]), 1)],
        ),
        Family::Char2Fallback { n } => (
            Rational::new(1, n as i64),
            (0..n).map(|i| pow(2, i)).collect(),
            vec![(monomial(&set, &[(pow(2, n) - 1, 1)]), 1)],
        ),
        Family::SmallD0 { d0, .. } => {
            let s = (p as u64 - 1).div_ceil(d0);
            // {f^s}_(p-1): multinomial coefficients of the compositions of
            // p - 1 into s parts from {1..d0}
            let mut terms = Vec::new();
            let mut counts = vec![0u128; d0 as usize];
            multinomial_terms(d0, s, p as u64 - 1, 1, &mut counts, p, &mut terms);
            (Rational::new(s as i64, p as i64 - 1), vec![1], terms)
        }
        Family::Char3 { n } => (
            Rational::new(1, 2 * n as i64 + 1),
            (0..=n).map(|i| pow(3, i)).chain((0..n).map(|i| 2 * pow(3, i))).collect(),
            vec![(monomial(&set, &[(pow(3, n + 1) - pow(3, n) - 1, 1), (pow(3, n + 1) - 2, pow(3, n) as u128)]), 1)],
        ),
    };
    let mut sigma: Vec<u128> = sigma.into_iter().map(|x| x as u128).collect();
    sigma.sort_unstable();
    let hasse = HassePolynomial::from_terms(p, vars.clone(), terms);
    Ok(HassePrediction::assemble(p, vars, delta, sigma, Some(hasse), Vec::new(), Vec::new(), false))
}

/// Terms `s!/prod u_d! * prod a_d^(u_d)` with `sum u_d = s`, `sum d u_d = total`,
/// choosing multiplicities for `d, d+1, ...`.
fn multinomial_terms(
    d0: u64,
    s: u64,
    total: u64,
    d: u64,
    counts: &mut Vec<u128>,
    p: u32,
    out: &mut Vec<(Vec<u128>, i64)>,
) {
    if d > d0 {
        if s == 0 && total == 0 {
            let used: u128 = counts.iter().sum();
            let mut c = factorial_mod(used as u64, p);
            for &k in counts.iter() {
                c = c * crate::ffield::inv_mod(factorial_mod(k as u64, p) as u32, p) as u64 % p as u64;
            }
            out.push((counts.clone(), c as i64));
        }
        return;
    }
    for k in 0..=s {
        if k * d > total {
            break;
        }
        counts[d as usize - 1] = k as u128;
        multinomial_terms(d0, s - k, total - k * d, d + 1, counts, p, out);
    }
    counts[d as usize - 1] = 0;
}

fn factorial_mod(n: u64, p: u32) -> u64 {
    (2..=n).fold(1u64, |acc, k| acc * k % p as u64)
}
