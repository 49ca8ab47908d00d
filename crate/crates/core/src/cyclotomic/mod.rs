//! Exact arithmetic in `Z[zeta_p]` and pi-adic valuations.

mod polygon;

pub use polygon::{Height, Polygon};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::scalar::Scalar;

/// pi-adic (or p-adic) valuation, with an explicit infinite value for zero.
/// `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `sum_(i < p-1) c_i zeta_p^i` in the power basis of `Z[zeta_p]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic<T> {
    p: u32,
    c: Vec<T>,
}

impl<T: Scalar> fmt::Debug for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl<T: Scalar> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Coordinates serialize as JSON integers, or decimal strings when they do
/// not fit in 64 bits.
impl<T: Scalar> Serialize for Cyclotomic<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.c.len()))?;
        for c in &self.c {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<T: Scalar> Cyclotomic<T> {
    pub fn zero(p: u32) -> Self {
        Cyclotomic { p, c: vec![T::zero(); p as usize - 1] }
    }

    pub fn from_int(p: u32, v: T) -> Self {
        let mut x = Self::zero(p);
        x.c[0] = v;
        x
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, T::one())
    }

    /// Builds an element from power-basis coordinates; `coords` must have
    /// length `p - 1`.
    pub fn from_coords(p: u32, coords: Vec<T>) -> Self {
        assert_eq!(coords.len(), p as usize - 1, "Z[zeta_{p}] has rank {}", p - 1);
        Cyclotomic { p, c: coords }
    }

    /// `zeta_p^k`.
    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut counts = vec![0u64; p as usize];
        counts[(k % p as u64) as usize] = 1;
        Self::from_counts(p, &counts)
    }

    /// `sum_t counts[t] zeta^t`, reduced with `zeta^(p-1) = -(1 + ... + zeta^(p-2))`.
    pub fn from_counts(p: u32, counts: &[u64]) -> Self {
        assert_eq!(counts.len(), p as usize, "one count per residue mod {p}");
        let top = counts[p as usize - 1];
        let c = counts[..p as usize - 1]
            .iter()
            .map(|&k| T::of_i64(k as i64 - top as i64))
            .collect();
        Cyclotomic { p, c }
    }

    /// Same as [`Cyclotomic::from_counts`] for signed weights.
    pub fn from_signed_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[p as usize - 1];
        let c = counts[..p as usize - 1].iter().map(|&k| T::of_i64(k - top)).collect();
        Cyclotomic { p, c }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[T] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Cyclotomic<U> {
        Cyclotomic { p: self.p, c: self.c.iter().map(f).collect() }
    }

    pub fn to_big(&self) -> Cyclotomic<BigInt> {
        self.map(|c| c.to_bigint().expect("integers convert to BigInt"))
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.p, other.p);
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a.checked_add(b)).collect::<Option<_>>()?;
        Some(Cyclotomic { p: self.p, c })
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.p, other.p);
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a.checked_sub(b)).collect::<Option<_>>()?;
        Some(Cyclotomic { p: self.p, c })
    }

    /// Product: multiply in `Z[x]/(x^p - 1)`, then fold the `x^(p-1)`
    /// coordinate back into the power basis.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        let mut acc = vec![T::zero(); p];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % p;
                acc[k] = acc[k].checked_add(&a.checked_mul(b)?)?;
            }
        }
        let top = acc.pop().expect("p >= 2");
        let c = acc.iter().map(|a| a.checked_sub(&top)).collect::<Option<_>>()?;
        Some(Cyclotomic { p: self.p, c })
    }

    pub fn checked_scale(&self, k: &T) -> Option<Self> {
        let c = self.c.iter().map(|a| a.checked_mul(k)).collect::<Option<_>>()?;
        Some(Cyclotomic { p: self.p, c })
    }

    /// Exact division by an integer; `None` when some coordinate is not
    /// divisible (the power basis is a Z-basis, so this is the integrality
    /// test for `self / n`).
    pub fn div_exact(&self, n: &T) -> Option<Self> {
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            let (q, r) = a.div_rem(n);
            if !r.is_zero() {
                return None;
            }
            c.push(q);
        }
        Some(Cyclotomic { p: self.p, c })
    }

    /// Image under the automorphism `zeta -> zeta^a`, `a` prime to p.
    pub fn galois(&self, a: u32) -> Self {
        assert!(!a.is_multiple_of(self.p), "zeta -> zeta^{a} is not an automorphism");
        let p = self.p as usize;
        let mut acc = vec![T::zero(); p];
        for (i, c) in self.c.iter().enumerate() {
            let k = i * a as usize % p;
            acc[k] = acc[k].clone() + c.clone();
        }
        let top = acc.pop().expect("p >= 2");
        let c = acc.into_iter().map(|a| a - top.clone()).collect();
        Cyclotomic { p: self.p, c }
    }

    /// `(a_0 + a_1 zeta + ...)` evaluated at `zeta = 1`, i.e. the image in
    /// `Z[zeta]/(1 - zeta)` lifted to Z.
    pub fn at_one(&self) -> T {
        self.c.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Absolute norm from `Q(zeta_p)`: the determinant of multiplication by
    /// `self` on the power basis, by fraction-free elimination. Tries the
    /// native width first and falls back to big integers on overflow.
    pub fn norm(&self) -> BigInt {
        let m = self.multiplication_matrix();
        if let Some(d) = bareiss(m) {
            return d.to_bigint().expect("integers convert to BigInt");
        }
        bareiss(self.to_big().multiplication_matrix()).expect("big integers do not overflow")
    }

    fn multiplication_matrix(&self) -> Vec<Vec<T>> {
        let n = self.c.len();
        let mut cols = Vec::with_capacity(n);
        let mut basis = Self::one(self.p);
        let zeta = Self::zeta_pow(self.p, 1);
        for _ in 0..n {
            cols.push(basis.clone() * self.clone());
            basis = basis * zeta.clone();
        }
        (0..n).map(|i| (0..n).map(|j| cols[j].c[i].clone()).collect()).collect()
    }

    /// `v_pi(self) = v_p(N(self))`: `Q_p(zeta_p)` is totally ramified of degree
    /// `p - 1` with uniformizer `pi`.
    pub fn pi_valuation(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let v = self.norm().p_valuation(self.p).expect("nonzero elements have nonzero norm");
        Valuation::Finite(v as u64)
    }

    /// Same valuation by repeated exact division by `1 - zeta`; independent of
    /// the norm route and used to cross-check it.
    pub fn pi_valuation_by_division(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let mut x = self.to_big();
        let pb = BigInt::from(self.p);
        let mut v = 0;
        loop {
            let s = x.at_one();
            if !(&s % &pb).is_zero() {
                return Valuation::Finite(v);
            }
            // x - (s/p) Phi_p vanishes at 1; divide by (1 - x) synthetically
            let k = s / &pb;
            let n = self.p as usize;
            let mut a: Vec<BigInt> = x.c.clone();
            a.push(BigInt::zero());
            for ai in a.iter_mut() {
                *ai -= &k;
            }
            // a(x) = (1 - x) b(x): b_0 = a_0, b_i = a_i + b_(i-1)
            let mut b = Vec::with_capacity(n - 1);
            let mut run = BigInt::zero();
            for ai in &a[..n - 1] {
                run += ai;
                b.push(run.clone());
            }
            x = Cyclotomic { p: self.p, c: b };
            v += 1;
        }
    }
}

fn bareiss<T: Scalar>(mut m: Vec<Vec<T>>) -> Option<T> {
    let n = m.len();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Some(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].checked_mul(&m[k][k])?.checked_sub(&m[i][k].checked_mul(&m[k][j])?)?;
                m[i][j] = num / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    Some(sign * m[n - 1][n - 1].clone())
}

impl<T: Scalar> Add for Cyclotomic<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("coordinate overflow")
    }
}

impl<T: Scalar> Sub for Cyclotomic<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("coordinate overflow")
    }
}

impl<T: Scalar> Mul for Cyclotomic<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("coordinate overflow")
    }
}

impl<T: Scalar> Add for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn add(self, rhs: Self) -> Cyclotomic<T> {
        self.checked_add(rhs).expect("coordinate overflow")
    }
}

impl<T: Scalar> Sub for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn sub(self, rhs: Self) -> Cyclotomic<T> {
        self.checked_sub(rhs).expect("coordinate overflow")
    }
}

impl<T: Scalar> Mul for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn mul(self, rhs: Self) -> Cyclotomic<T> {
        self.checked_mul(rhs).expect("coordinate overflow")
    }
}

impl<T: Scalar> Neg for Cyclotomic<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic { p: self.p, c: self.c.into_iter().map(|a| -a).collect() }
    }
}
