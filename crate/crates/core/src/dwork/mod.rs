//! pi-adic arithmetic in `Z_p[pi]/(pi^(p-1) + p)` at fixed precision, the
//! splitting function coefficients and minors of the Dwork matrix `A_1`.

mod matrix;
mod splitting;

pub use matrix::{
    cyclic_minor_check, dwork_check, minor_congruence_check, CyclicMinorReport, DworkMatrix, DworkReport,
    MinorCongruenceReport, SubsetReport,
};
pub use splitting::{
    f1_coefficient, f1_series, teichmuller, theta_coefficient, verify_splitting_coefficients, CoeffSplitCase, CoeffSplitReport,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// pi-adic valuation known up to the precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiValuation {
    Exact(u64),
    /// The element vanishes modulo `pi^K`.
    AtLeast(u64),
}

impl PiValuation {
    /// True when the valuation is known to be at least `bound`.
    pub fn at_least(self, bound: u64) -> bool {
        match self {
            PiValuation::Exact(v) | PiValuation::AtLeast(v) => v >= bound,
        }
    }
}

impl fmt::Display for PiValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiValuation::Exact(v) => write!(f, "{v}"),
            PiValuation::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

impl Serialize for PiValuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PiValuation::Exact(v) => s.serialize_u64(*v),
            PiValuation::AtLeast(_) => s.serialize_str(&self.to_string()),
        }
    }
}

/// `sum_(i < p-1) c_i pi^i` modulo `pi^K`, each `c_i` kept modulo `p^E` with
/// `E = ceil(K/(p-1)) + 1`. Equality is equality modulo `pi^K`.
#[derive(Debug, Clone)]
pub struct PiAdic<T: Scalar> {
    p: u32,
    k: u64,
    modulus: T,
    coords: Vec<T>,
}

impl<T: Scalar> PiAdic<T> {
    pub fn zero(p: u32, k: u64) -> Self {
        assert!(p >= 2, "p must be prime");
        let e = k.div_ceil(p as u64 - 1) + 1;
        let modulus = num_traits::pow(T::of_u64(p as u64), e as usize);
        PiAdic { p, k, modulus, coords: vec![T::zero(); p as usize - 1] }
    }

    pub fn from_int(p: u32, k: u64, v: T) -> Self {
        let mut x = Self::zero(p, k);
        x.coords[0] = v.mod_floor(&x.modulus);
        x
    }

    pub fn one(p: u32, k: u64) -> Self {
        Self::from_int(p, k, T::one())
    }

    /// `pi^e`, using `pi^(p-1) = -p`.
    pub fn pi_pow(p: u32, k: u64, e: u64) -> Self {
        let mut x = Self::zero(p, k);
        let (j, i) = e.div_rem(&(p as u64 - 1));
        if j < x.exponent() as u64 {
            let c = num_traits::pow(-T::of_u64(p as u64), j as usize);
            x.coords[i as usize] = c.mod_floor(&x.modulus);
        }
        x
    }

    /// Builds an element from raw coordinates, reducing them mod `p^E`.
    pub fn from_coords(p: u32, k: u64, coords: Vec<T>) -> Result<Self> {
        let mut x = Self::zero(p, k);
        if coords.len() != x.coords.len() {
            return Err(Error::invalid(format!("expected {} coordinates, got {}", x.coords.len(), coords.len())));
        }
        x.coords = coords.into_iter().map(|c| c.mod_floor(&x.modulus)).collect();
        Ok(x)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u64 {
        self.k
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// `E` with `modulus = p^E`.
    pub fn exponent(&self) -> u32 {
        (self.k.div_ceil(self.p as u64 - 1) + 1) as u32
    }

    /// Number of p-adic digits of `c_i` that matter modulo `pi^K`.
    fn digits(&self, i: usize) -> u32 {
        (self.k.saturating_sub(i as u64)).div_ceil(self.p as u64 - 1) as u32
    }

    fn significant(&self, i: usize) -> T {
        self.coords[i].mod_floor(&num_traits::pow(T::of_u64(self.p as u64), self.digits(i) as usize))
    }

    /// `min_i (i + (p-1) v_p(c_i))` over coordinates nonzero at precision.
    pub fn valuation(&self) -> PiValuation {
        let mut best: Option<u64> = None;
        for i in 0..self.coords.len() {
            let c = self.significant(i);
            if let Some(v) = c.p_valuation(self.p) {
                let val = i as u64 + (self.p as u64 - 1) * v as u64;
                best = Some(best.map_or(val, |b| b.min(val)));
            }
        }
        match best {
            Some(v) => PiValuation::Exact(v),
            None => PiValuation::AtLeast(self.k),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.valuation(), PiValuation::AtLeast(_))
    }

    /// `x / pi^e mod pi` in `F_p`, for `x` of valuation at least `e < K`.
    pub fn residue_at(&self, e: u64) -> Result<u32> {
        if e >= self.k {
            return Err(Error::Precision(format!("residue at pi^{e} needs precision above {}", self.k)));
        }
        if !self.valuation().at_least(e) {
            return Err(Error::invalid(format!("valuation {} is below {e}", self.valuation())));
        }
        let (j, i) = e.div_rem(&(self.p as u64 - 1));
        let pj = num_traits::pow(T::of_u64(self.p as u64), j as usize);
        let c = self.coords[i as usize].div_floor(&pj);
        let r = c.mod_floor(&T::of_u64(self.p as u64)).to_u32().expect("residue below p");
        Ok(if j % 2 == 1 { (self.p - r) % self.p } else { r })
    }

    fn check(&self, other: &Self) {
        assert!(self.p == other.p && self.k == other.k, "pi-adic elements of different rings");
    }

    pub fn scale(&self, c: &T) -> Self {
        let coords = self.coords.iter().map(|x| (x.clone() * c.clone()).mod_floor(&self.modulus)).collect();
        PiAdic { coords, ..self.clone() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p, self.k);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<T: Scalar> PartialEq for PiAdic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && (self - other).is_zero()
    }
}

impl<T: Scalar> Eq for PiAdic<T> {}

impl<T: Scalar> Add for &PiAdic<T> {
    type Output = PiAdic<T>;
    fn add(self, o: &PiAdic<T>) -> PiAdic<T> {
        self.check(o);
        let coords =
            self.coords.iter().zip(&o.coords).map(|(a, b)| (a.clone() + b.clone()).mod_floor(&self.modulus)).collect();
        PiAdic { coords, ..self.clone() }
    }
}

impl<T: Scalar> Sub for &PiAdic<T> {
    type Output = PiAdic<T>;
    fn sub(self, o: &PiAdic<T>) -> PiAdic<T> {
        self.check(o);
        let coords =
            self.coords.iter().zip(&o.coords).map(|(a, b)| (a.clone() - b.clone()).mod_floor(&self.modulus)).collect();
        PiAdic { coords, ..self.clone() }
    }
}

impl<T: Scalar> Neg for &PiAdic<T> {
    type Output = PiAdic<T>;
    fn neg(self) -> PiAdic<T> {
        let coords = self.coords.iter().map(|a| (-a.clone()).mod_floor(&self.modulus)).collect();
        PiAdic { coords, ..self.clone() }
    }
}

impl<T: Scalar> Mul for &PiAdic<T> {
    type Output = PiAdic<T>;
    fn mul(self, o: &PiAdic<T>) -> PiAdic<T> {
        self.check(o);
        let w = self.coords.len();
        let p = T::of_u64(self.p as u64);
        let mut out = vec![T::zero(); w];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                let t = a.clone() * b.clone();
                if i + j < w {
                    out[i + j] = out[i + j].clone() + t;
                } else {
                    out[i + j - w] = out[i + j - w].clone() - t * p.clone();
                }
            }
        }
        let coords = out.into_iter().map(|c| c.mod_floor(&self.modulus)).collect();
        PiAdic { coords, ..self.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<T: Scalar> $tr for PiAdic<T> {
            type Output = PiAdic<T>;
            fn $f(self, o: PiAdic<T>) -> PiAdic<T> {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<T: Scalar> fmt::Display for PiAdic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*pi"),
                _ => format!("{c}*pi^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "O(pi^{})", self.k)
        } else {
            write!(f, "{} + O(pi^{})", parts.join(" + "), self.k)
        }
    }
}

impl<T: Scalar> Serialize for PiAdic<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PiAdic", 3)?;
        st.serialize_field("precision", &self.k)?;
        st.serialize_field("coords", &self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("valuation", &self.valuation())?;
        st.end()
    }
}

/// Inverse of a unit modulo `m`.
pub(crate) fn inv_unit<T: Scalar>(a: &T, m: &T) -> Option<T> {
    let g = a.mod_floor(m).extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}
