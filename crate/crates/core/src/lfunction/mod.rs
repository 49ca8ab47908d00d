//! The brute-force oracle: character sums over every extension field, the
//! L-polynomial in `Z[zeta_p][T]` and its Newton polygon.

mod engine;
mod sweep;

pub use engine::SumEngine;
pub use sweep::{
    degree_family, supersingular_scan, sweep_polygons, verify_prediction, Mismatch, MismatchKind, ScanReport,
    SlopeCount, Stratum, SweepSpace, VerifyMode, VerifyReport,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::config::Budget;
use crate::cyclotomic::{Cyclotomic, Height, Valuation};
use crate::error::{Error, Result};
use crate::ffield::{poly_eval, Embedding, FieldSpec, FqElement};
use crate::modular::ExponentSet;
use crate::scalar::Scalar;
use crate::{CyclotomicInteger, NewtonPolygon, Rational};

/// `f = sum_d alpha_d x^d` over `F_q`, `q = p^m`, with `alpha_(d0) != 0` and
/// every exponent prime to p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputPolynomial {
    field: Arc<FieldSpec>,
    coeffs: BTreeMap<u64, FqElement>,
}

impl InputPolynomial {
    /// Zero coefficients are dropped; the largest remaining exponent is `d0`.
    pub fn new(field: &Arc<FieldSpec>, coeffs: impl IntoIterator<Item = (u64, FqElement)>) -> Result<Self> {
        let p = field.p() as u64;
        let mut map = BTreeMap::new();
        for (d, a) in coeffs {
            if d == 0 || d % p == 0 {
                return Err(Error::invalid(format!("exponent {d} must be positive and prime to p = {p}")));
            }
            if a.spec() != field {
                return Err(Error::FieldMismatch { left: field.to_string(), right: a.spec().to_string() });
            }
            if map.insert(d, a.clone()).is_some() {
                return Err(Error::invalid(format!("exponent {d} given twice")));
            }
        }
        map.retain(|_, a: &mut FqElement| !a.is_zero());
        if map.is_empty() {
            return Err(Error::invalid("the polynomial has no nonzero coefficient"));
        }
        Ok(InputPolynomial { field: field.clone(), coeffs: map })
    }

    /// Parses `"d:c,d:c,..."`; over an extension a coefficient is written by
    /// its coordinates `c0.c1.....` in the polynomial basis.
    pub fn parse(field: &Arc<FieldSpec>, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (d, c) = part
                .split_once(':')
                .ok_or_else(|| Error::invalid(format!("term {part:?} is not of the form d:coeff")))?;
            let d: u64 = d.trim().parse().map_err(|_| Error::invalid(format!("bad exponent in {part:?}")))?;
            let coords: Vec<i64> = c
                .split('.')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::invalid(format!("bad coefficient in {part:?}")))?;
            terms.push((d, field.from_coeffs(&coords)?));
        }
        Self::new(field, terms)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, FqElement> {
        &self.coeffs
    }

    pub fn degree(&self) -> u64 {
        *self.coeffs.keys().next_back().unwrap()
    }

    /// The exponents with nonzero coefficient.
    pub fn support(&self) -> ExponentSet {
        ExponentSet::new(self.field.p(), self.coeffs.keys().copied()).expect("validated at construction")
    }
}

impl fmt::Display for InputPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(d, a)| format!("{d}:{a}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for InputPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `S_r(f) = sum_(x in F_(q^r)) zeta^(Tr f(x))` by direct evaluation at every
/// point: the reference route, independent of the lookup tables.
pub fn character_sum(f: &InputPolynomial, r: u32, budget: &Budget) -> Result<CyclotomicInteger> {
    if r == 0 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let field = &f.field;
    let s = field.degree() * r as usize;
    let order = (field.p() as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
    budget.check("field points", order, budget.field_points)?;
    let target = FieldSpec::new(field.p(), s)?;
    let e = Embedding::new(field, &target)?;
    let coeffs = f.coeffs.iter().map(|(&d, a)| Ok((d, e.apply(a)?))).collect::<Result<BTreeMap<_, _>>>()?;
    let mut counts = vec![0u64; field.p() as usize];
    for x in target.elements() {
        counts[poly_eval(&coeffs, &x)?.trace_to_prime() as usize] += 1;
    }
    Ok(Cyclotomic::from_counts(field.p(), &counts))
}

/// `L(f;T) = exp(sum_r S_r T^r / r) = 1 + l_1 T + ... + l_(d0-1) T^(d0-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LFunction {
    p: u32,
    m: usize,
    sums: Vec<CyclotomicInteger>,
    coeffs: Vec<CyclotomicInteger>,
}

impl LFunction {
    /// Assembles the coefficients from `S_1, ..., S_(d0-1)` with
    /// `n l_n = sum_(r=1..n) S_r l_(n-r)`, checking that every division is
    /// exact and that the degree is `d0 - 1`.
    pub fn from_sums(p: u32, m: usize, sums: Vec<CyclotomicInteger>) -> Result<Self> {
        let coeffs = newton_identities(p, &sums)?.expect("big integers do not overflow");
        if let Some(last) = coeffs.last() {
            if coeffs.len() > 1 && last.is_zero() {
                return Err(Error::Integrality(format!("L-polynomial has degree below {}", coeffs.len() - 1)));
            }
        }
        Ok(LFunction { p, m, sums, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn sums(&self) -> &[CyclotomicInteger] {
        &self.sums
    }

    pub fn coeffs(&self) -> &[CyclotomicInteger] {
        &self.coeffs
    }

    pub fn newton_polygon(&self) -> NewtonPolygon {
        let vals: Vec<Valuation> = self.coeffs.iter().map(|c| c.pi_valuation()).collect();
        polygon_from_valuations(&vals, self.m, self.p)
    }
}

impl Serialize for LFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LFunction", 2)?;
        st.serialize_field("sums", &self.sums)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

/// `None` when an intermediate value overflows `T`.
pub(crate) fn newton_identities<T: Scalar>(p: u32, sums: &[Cyclotomic<T>]) -> Result<Option<Vec<Cyclotomic<T>>>> {
    let mut l = vec![Cyclotomic::<T>::one(p)];
    for n in 1..=sums.len() {
        let mut acc = Cyclotomic::<T>::zero(p);
        for r in 1..=n {
            let Some(t) = sums[r - 1].checked_mul(&l[n - r]) else { return Ok(None) };
            let Some(a) = acc.checked_add(&t) else { return Ok(None) };
            acc = a;
        }
        let ln = acc
            .div_exact(&T::of_u64(n as u64))
            .ok_or_else(|| Error::Integrality(format!("{n} does not divide the Newton sum for l_{n}")))?;
        l.push(ln);
    }
    Ok(Some(l))
}

/// Points `(n, v_pi(l_n) / (m (p - 1)))`: the q-adic normalization.
pub(crate) fn polygon_from_valuations(vals: &[Valuation], m: usize, p: u32) -> NewtonPolygon {
    let scale = m as i64 * (p as i64 - 1);
    let points = vals
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let h = match v {
                Valuation::Finite(v) => Height::Finite(Rational::new(*v as i64, scale)),
                Valuation::Infinite => Height::Infinite,
            };
            (n as u64, h)
        })
        .collect();
    NewtonPolygon::lower_hull(points).expect("l_0 = 1 puts (0, 0) on the polygon")
}

/// The L-function through the lookup-table engine.
pub fn l_polynomial(f: &InputPolynomial, budget: &Budget) -> Result<LFunction> {
    let r_max = f.degree().saturating_sub(1) as u32;
    let engine = SumEngine::new(&f.field, r_max, budget)?;
    let sums = engine.sums(f)?;
    LFunction::from_sums(f.field.p(), f.field.degree(), sums.iter().map(|s| s.to_big()).collect())
}

/// The L-function from [`character_sum`] at every point; slow reference.
pub fn l_polynomial_reference(f: &InputPolynomial, budget: &Budget) -> Result<LFunction> {
    let r_max = f.degree().saturating_sub(1) as u32;
    let sums = (1..=r_max).map(|r| character_sum(f, r, budget)).collect::<Result<Vec<_>>>()?;
    LFunction::from_sums(f.field.p(), f.field.degree(), sums)
}

pub fn newton_polygon(f: &InputPolynomial, budget: &Budget) -> Result<NewtonPolygon> {
    Ok(l_polynomial(f, budget)?.newton_polygon())
}

/// Polygon from fixed-width sums, falling back to big integers on overflow.
pub(crate) fn polygon_from_sums(p: u32, m: usize, sums: &[Cyclotomic<i128>]) -> Result<NewtonPolygon> {
    let vals: Vec<Valuation> = match newton_identities(p, sums)? {
        Some(l) => {
            check_degree(&l)?;
            l.iter().map(|c| c.pi_valuation()).collect()
        }
        None => {
            let big: Vec<Cyclotomic<BigInt>> = sums.iter().map(|s| s.to_big()).collect();
            let l = newton_identities(p, &big)?.expect("big integers do not overflow");
            check_degree(&l)?;
            l.iter().map(|c| c.pi_valuation()).collect()
        }
    };
    Ok(polygon_from_valuations(&vals, m, p))
}

fn check_degree<T: Scalar>(l: &[Cyclotomic<T>]) -> Result<()> {
    if l.len() > 1 && l.last().unwrap().is_zero() {
        return Err(Error::Integrality(format!("L-polynomial has degree below {}", l.len() - 1)));
    }
    Ok(())
}
