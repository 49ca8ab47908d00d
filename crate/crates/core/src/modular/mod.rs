//! Modular equations `sum_D u_d d = 0 mod p^n - 1`: minimal p-weights,
//! p-density, minimal irreducible solutions and their support `Sigma`.

mod carry;
mod catalog;
mod oracle;

pub use catalog::{density, density_to, enumerate_minimal, min_weight, orbit_catalog, DensityReport, OrbitCatalog};
pub use oracle::{bfs_min_weight, brute_enumerate, brute_min_weight};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::is_prime;

/// The exponent set `D` together with the characteristic `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentSet {
    p: u32,
    d: Vec<u64>,
}

impl ExponentSet {
    pub fn new(p: u32, exponents: impl IntoIterator<Item = u64>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        let d: BTreeSet<u64> = exponents.into_iter().collect();
        if d.is_empty() {
            return Err(Error::invalid("the exponent set is empty"));
        }
        if d.contains(&0) {
            return Err(Error::invalid("exponents must be positive"));
        }
        if let Some(bad) = d.iter().find(|&&x| x % p as u64 == 0) {
            return Err(Error::invalid(format!("exponent {bad} is divisible by p = {p}")));
        }
        if *d.iter().next_back().unwrap() > 1 << 24 {
            return Err(Error::invalid("exponents above 2^24 are not supported"));
        }
        Ok(ExponentSet { p, d: d.into_iter().collect() })
    }

    /// `{1 <= i <= max : p does not divide i}`.
    pub fn coprime_up_to(p: u32, max: u64) -> Result<Self> {
        Self::new(p, (1..=max).filter(|i| i % p as u64 != 0))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponents(&self) -> &[u64] {
        &self.d
    }

    pub fn d0(&self) -> u64 {
        *self.d.last().unwrap()
    }

    pub fn position(&self, d: u64) -> Option<usize> {
        self.d.binary_search(&d).ok()
    }

    /// `p^n - 1`, when it fits comfortably in 128 bits.
    pub fn modulus(&self, n: u32) -> Result<u128> {
        if n == 0 {
            return Err(Error::invalid("witness length must be at least 1"));
        }
        (self.p as u128)
            .checked_pow(n)
            .filter(|&q| q < 1 << 100)
            .map(|q| q - 1)
            .ok_or_else(|| Error::invalid(format!("p^n with p = {}, n = {n} is too large", self.p)))
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(|x| x.to_string()).collect();
        write!(f, "D = {{{}}}, p = {}", d.join(","), self.p)
    }
}

/// Sum of the base-p digits.
pub fn p_weight(n: u128, p: u32) -> u64 {
    let mut n = n;
    let mut s = 0u64;
    while n > 0 {
        s += (n % p as u128) as u64;
        n /= p as u128;
    }
    s
}

/// Base-p digits, least significant first.
pub fn digits(n: u128, p: u32) -> Vec<u32> {
    let mut n = n;
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % p as u128) as u32);
        n /= p as u128;
    }
    out
}

/// `n!! = n_0! n_1! ... n_t!` over all base-p digits of `n`.
pub fn digit_double_factorial(n: u128, p: u32) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for digit in digits(n, p) {
        for k in 2..=digit {
            acc *= k;
        }
    }
    acc
}

/// `n!! mod p`, a unit because every digit is below p.
pub fn digit_double_factorial_mod(n: u128, p: u32) -> u32 {
    let mut acc = 1u64;
    for digit in digits(n, p) {
        for k in 2..=digit as u64 {
            acc = acc * k % p as u64;
        }
    }
    acc as u32
}

/// An element `U = (u_d)` of `E_{D,p}(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    p: u32,
    n: u32,
    exponents: Vec<u64>,
    u: Vec<u128>,
    weight: u64,
    phi: Vec<u128>,
}

impl Witness {
    /// Validates membership in `E_{D,p}(n)`; `u` is aligned with the sorted
    /// exponents of `set`.
    pub fn new(set: &ExponentSet, n: u32, u: Vec<u128>) -> Result<Self> {
        let m = set.modulus(n)?;
        if u.len() != set.d.len() {
            return Err(Error::invalid("one coordinate per exponent is required"));
        }
        if let Some(bad) = u.iter().find(|&&x| x > m) {
            return Err(Error::invalid(format!("coordinate {bad} exceeds p^n - 1 = {m}")));
        }
        let mut w = Witness {
            p: set.p,
            n,
            exponents: set.d.clone(),
            u,
            weight: 0,
            phi: Vec::new(),
        };
        let total = w.weighted_sum()?;
        if total == 0 || total % m != 0 {
            return Err(Error::invalid(format!("sum u_d d = {total} is not a positive multiple of {m}")));
        }
        w.weight = w.u.iter().map(|&x| p_weight(x, w.p)).sum();
        let mut phi = Vec::with_capacity(n as usize);
        let mut cur = w.clone();
        for _ in 0..n {
            phi.push(cur.weighted_sum()? / m);
            cur.u = cur.u.iter().map(|&x| rotate(x, w.p, m)).collect();
        }
        w.phi = phi;
        Ok(w)
    }

    fn weighted_sum(&self) -> Result<u128> {
        self.u
            .iter()
            .zip(&self.exponents)
            .try_fold(0u128, |acc, (&u, &d)| acc.checked_add(u.checked_mul(d as u128)?))
            .ok_or_else(|| Error::invalid("sum u_d d overflows 128 bits"))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The length `n`.
    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Coordinates aligned with the exponents.
    pub fn coords(&self) -> &[u128] {
        &self.u
    }

    pub fn get(&self, d: u64) -> u128 {
        self.exponents.binary_search(&d).map(|i| self.u[i]).unwrap_or(0)
    }

    /// `(d, u_d)` for the nonzero coordinates.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u128)> + '_ {
        self.exponents.iter().copied().zip(self.u.iter().copied()).filter(|(_, u)| *u != 0)
    }

    /// `s_p(U) = sum_d s_p(u_d)`.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// `phi_n(U) = (sum u_d d) / (p^n - 1)`.
    pub fn phi0(&self) -> u128 {
        self.phi[0]
    }

    /// `[phi_U(0), ..., phi_U(n-1)]`, `phi_U(k) = phi_n(shift^k U)`.
    pub fn phi_map(&self) -> &[u128] {
        &self.phi
    }

    /// `Phi(U)`, the image of `phi_U`.
    pub fn support(&self) -> BTreeSet<u128> {
        self.phi.iter().copied().collect()
    }

    /// `phi_U` injective, i.e. `#Phi(U) = n`.
    pub fn is_irreducible(&self) -> bool {
        self.support().len() == self.n as usize
    }

    /// Componentwise `u -> p u mod (p^n - 1)`, fixing `p^n - 1`.
    pub fn shift(&self) -> Witness {
        let m = (self.p as u128).pow(self.n) - 1;
        let mut w = self.clone();
        w.u = self.u.iter().map(|&x| rotate(x, self.p, m)).collect();
        w.phi.rotate_left(1);
        w
    }

    /// `U!! = prod_d u_d!!` reduced mod p.
    pub fn double_factorial_mod(&self) -> u32 {
        self.u
            .iter()
            .fold(1u64, |acc, &x| acc * digit_double_factorial_mod(x, self.p) as u64 % self.p as u64)
            as u32
    }
}

fn rotate(x: u128, p: u32, m: u128) -> u128 {
    if x == m {
        m
    } else {
        x * p as u128 % m
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonzero().map(|(d, u)| format!("u_{d}={u}")).collect();
        write!(f, "({}; n={})", parts.join(", "), self.n)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let u: std::collections::BTreeMap<String, u128> = self.nonzero().map(|(d, u)| (d.to_string(), u)).collect();
        let mut st = s.serialize_struct("Witness", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("u", &u)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("phi", &self.phi)?;
        st.serialize_field("irreducible", &self.is_irreducible())?;
        st.end()
    }
}
