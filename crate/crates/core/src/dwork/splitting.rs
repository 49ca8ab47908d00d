//! Teichmuller lifts, coefficients of `theta_m(X) = exp(pi X - pi X^q)` and
//! of `F_1(X) = prod_d theta(a_d X^d)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use super::{inv_unit, PiAdic, PiValuation};
use crate::error::{Error, Result};
use crate::lfunction::InputPolynomial;
use crate::modular::{digit_double_factorial, p_weight};
use crate::PiAdicElement;

/// The `(p-1)`-th root of unity congruent to `a` mod p (0 for `a = 0`),
/// found by iterating `x -> x^p`.
pub fn teichmuller(p: u32, a: u32, k: u64) -> PiAdicElement {
    let mut x = PiAdic::<BigInt>::from_int(p, k, BigInt::from(a % p));
    let m = x.modulus.clone();
    let mut c = x.coords[0].clone();
    loop {
        let next = c.modpow(&BigInt::from(p), &m);
        if next == c {
            break;
        }
        c = next;
    }
    x.coords[0] = c;
    x
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(-1)^s pi^(r+s) / (r! s!)`, with the p-part of `r! s!` absorbed into the
/// power of pi through `p = -pi^(p-1)`.
fn theta_term(p: u32, k: u64, r: u64, s: u64) -> PiAdicElement {
    let pb = BigUint::from(p);
    let mut u = factorial(r) * factorial(s);
    let mut e = 0u64;
    while (&u % &pb).is_zero() {
        u /= &pb;
        e += 1;
    }
    let x = PiAdicElement::pi_pow(p, k, r + s - e * (p as u64 - 1));
    let inv = inv_unit(&BigInt::from(u), &x.modulus).expect("unit after removing p");
    let sign = if (s + e) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    x.scale(&(inv * sign))
}

/// `lambda^(m)_n = sum_(r + q s = n) (-1)^s pi^(r+s) / (r! s!)`, `q = p^m`.
pub fn theta_coefficient(p: u32, m: u32, n: u64, k: u64) -> PiAdicElement {
    let q = (p as u64).pow(m);
    let mut acc = PiAdicElement::zero(p, k);
    for s in 0..=n / q {
        acc = &acc + &theta_term(p, k, n - q * s, s);
    }
    acc
}

/// `lambda^(m)_0, ..., lambda^(m)_(n_max)`.
pub(crate) fn theta_series(p: u32, m: u32, n_max: u64, k: u64) -> Vec<PiAdicElement> {
    (0..=n_max).map(|n| theta_coefficient(p, m, n, k)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffSplitCase {
    pub n: u64,
    pub weight: u64,
    /// `"i"` for `n <= q - 1` (congruence to `pi^s / n!!`), `"ii"` otherwise.
    pub case: &'static str,
    pub valuation: PiValuation,
    /// Valuation of `lambda_n - pi^s / n!!` in case i, of `lambda_n` in case ii.
    pub tested: PiValuation,
    pub bound: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffSplitReport {
    pub p: u32,
    pub m: u32,
    pub precision: u64,
    pub cases: Vec<CoeffSplitCase>,
    pub all_hold: bool,
}

/// Checks `lambda^(m)_n = pi^(s_p(n)) / n!! mod pi^(s_p(n)+p-1)` for
/// `n <= q - 1` and `v(lambda^(m)_n) >= s_p(n) + p - 1` for `n >= q`.
pub fn verify_splitting_coefficients(p: u32, m: u32, ns: impl IntoIterator<Item = u64>, k: u64) -> Result<CoeffSplitReport> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let q = (p as u64).pow(m);
    let ns: Vec<u64> = ns.into_iter().collect();
    let need = ns.iter().map(|&n| p_weight(n as u128, p) + p as u64).max().unwrap_or(0);
    if k < need {
        return Err(Error::Precision(format!("precision {k} is below max s_p(n) + p = {need}; raise it and retry")));
    }
    let mut cases = Vec::with_capacity(ns.len());
    for n in ns {
        let lambda = theta_coefficient(p, m, n, k);
        let s = p_weight(n as u128, p);
        let bound = s + p as u64 - 1;
        let (case, tested) = if n < q {
            let lead = PiAdicElement::pi_pow(p, k, s);
            let nn = BigInt::from(digit_double_factorial(n as u128, p));
            let inv = inv_unit(&nn, &lead.modulus).expect("digit factorials are units");
            ("i", (&lambda - &lead.scale(&inv)).valuation())
        } else {
            ("ii", lambda.valuation())
        };
        cases.push(CoeffSplitCase { n, weight: s, case, valuation: lambda.valuation(), tested, bound, holds: tested.at_least(bound) });
    }
    let all_hold = cases.iter().all(|c| c.holds);
    Ok(CoeffSplitReport { p, m, precision: k, cases, all_hold })
}

fn lifted_terms(f: &InputPolynomial, k: u64) -> Result<Vec<(u64, PiAdicElement)>> {
    if f.field().degree() != 1 {
        return Err(Error::invalid("Dwork coefficients are computed over the prime field only"));
    }
    let p = f.field().p();
    Ok(f
        .coeffs()
        .iter()
        .map(|(&d, a)| (d, teichmuller(p, a.as_prime().expect("prime field element"), k)))
        .collect())
}

/// `f^(1)_n = sum_(sum d u_d = n) prod_d lambda_(u_d) a_d^(u_d)` over the
/// compositions of `n`, with `a_d` the Teichmuller lifts of the coefficients.
pub fn f1_coefficient(f: &InputPolynomial, n: u64, k: u64) -> Result<PiAdicElement> {
    let terms = lifted_terms(f, k)?;
    let p = f.field().p();
    let lambdas = theta_series(p, 1, n, k);
    fn rec(terms: &[(u64, PiAdicElement)], rest: u64, lambdas: &[PiAdicElement], acc: PiAdicElement) -> PiAdicElement {
        let Some(((d, a), tail)) = terms.split_first() else {
            return if rest == 0 { acc } else { PiAdicElement::zero(acc.p(), acc.precision()) };
        };
        let mut sum = PiAdicElement::zero(acc.p(), acc.precision());
        let mut power = PiAdicElement::one(acc.p(), acc.precision());
        for u in 0..=rest / d {
            let t = &(&acc * &lambdas[u as usize]) * &power;
            sum = &sum + &rec(tail, rest - u * d, lambdas, t);
            power = &power * a;
        }
        sum
    }
    Ok(rec(&terms, n, &lambdas, PiAdicElement::one(p, k)))
}

/// `f^(1)_0, ..., f^(1)_(n_max)` as a truncated product of power series.
pub fn f1_series(f: &InputPolynomial, n_max: u64, k: u64) -> Result<Vec<PiAdicElement>> {
    let terms = lifted_terms(f, k)?;
    let p = f.field().p();
    let lambdas = theta_series(p, 1, n_max, k);
    let len = n_max as usize + 1;
    let mut acc = vec![PiAdicElement::zero(p, k); len];
    acc[0] = PiAdicElement::one(p, k);
    for (d, a) in terms {
        let d = d as usize;
        // theta(a X^d) = sum_u lambda_u a^u X^(du)
        let mut factor = vec![PiAdicElement::zero(p, k); len];
        let mut power = PiAdicElement::one(p, k);
        for u in 0..=(len - 1) / d {
            factor[u * d] = &lambdas[u] * &power;
            power = &power * &a;
        }
        let mut next = vec![PiAdicElement::zero(p, k); len];
        for (i, x) in acc.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in factor.iter().enumerate().take(len - i).filter(|(_, y)| !y.is_zero()) {
                next[i + j] = &next[i + j] + &(x * y);
            }
        }
        acc = next;
    }
    Ok(acc)
}
