//! The Hasse polynomial of `(D, p)` and the predicted first vertex of the
//! generic Newton polygon.

mod family;

pub use family::{family_predictor, Family};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::ffield::{inv_mod, FqElement};
use crate::modular::{orbit_catalog, ExponentSet, OrbitCatalog, Witness};
use crate::rational::{serde_opt_vertex, serde_ratio};
use crate::Rational;

/// Polynomial over `F_p` in the variables `a_d`, `d` in `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HassePolynomial {
    p: u32,
    vars: Vec<u64>,
    /// Exponent vectors aligned with `vars`, nonzero coefficients in `[1, p)`,
    /// sorted by total degree then exponents.
    terms: Vec<(Vec<u128>, u32)>,
}

impl HassePolynomial {
    /// Collects like monomials and drops those whose coefficient vanishes.
    pub fn from_terms(p: u32, vars: Vec<u64>, terms: impl IntoIterator<Item = (Vec<u128>, i64)>) -> Self {
        let mut acc: BTreeMap<Vec<u128>, i64> = BTreeMap::new();
        for (mono, c) in terms {
            assert_eq!(mono.len(), vars.len());
            let e = acc.entry(mono).or_insert(0);
            *e = (*e + c).rem_euclid(p as i64);
        }
        let mut terms: Vec<(Vec<u128>, u32)> =
            acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, c as u32)).collect();
        terms.sort_by(|a, b| (a.0.iter().sum::<u128>(), &a.0).cmp(&(b.0.iter().sum::<u128>(), &b.0)));
        HassePolynomial { p, vars, terms }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn vars(&self) -> &[u64] {
        &self.vars
    }

    pub fn terms(&self) -> &[(Vec<u128>, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent of `a_d`.
    pub fn degree_in(&self, d: u64) -> u128 {
        match self.vars.binary_search(&d) {
            Ok(i) => self.terms.iter().map(|(m, _)| m[i]).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// `c` with `self = c * other`, if the two differ by a nonzero scalar.
    pub fn scalar_ratio(&self, other: &HassePolynomial) -> Option<u32> {
        if self.p != other.p || self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let p = self.p as u64;
        let c = self.terms[0].1 as u64 * inv_mod(other.terms[0].1, self.p) as u64 % p;
        let same = self.terms.iter().zip(&other.terms).all(|((m1, c1), (m2, c2))| {
            self.vars == other.vars && m1 == m2 && *c1 as u64 == c * *c2 as u64 % p
        });
        same.then_some(c as u32)
    }

    /// Value at the coefficients of a polynomial, all in one field.
    pub fn evaluate_at(&self, values: &BTreeMap<u64, FqElement>) -> Result<FqElement> {
        let field = values
            .values()
            .next()
            .ok_or_else(|| Error::invalid("no coefficients given"))?
            .spec()
            .clone();
        let zero = field.zero();
        let mut acc = field.zero();
        for (mono, c) in &self.terms {
            let mut t = field.from_int(*c as i64);
            for (d, &e) in self.vars.iter().zip(mono) {
                if e == 0 {
                    continue;
                }
                let a = values.get(d).unwrap_or(&zero);
                t = t.try_mul(&a.pow_u128(e))?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for HassePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let mut factors: Vec<String> = Vec::new();
                for (d, &e) in self.vars.iter().zip(mono) {
                    match e {
                        0 => {}
                        1 => factors.push(format!("a{d}")),
                        _ => factors.push(format!("a{d}^{e}")),
                    }
                }
                if factors.is_empty() {
                    c.to_string()
                } else if *c == 1 {
                    factors.join("*")
                } else {
                    format!("{c}*{}", factors.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for HassePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            monomial: BTreeMap<String, u128>,
            coeff: u32,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(mono, c)| Term {
                monomial: self
                    .vars
                    .iter()
                    .zip(mono)
                    .filter(|(_, &e)| e != 0)
                    .map(|(d, &e)| (d.to_string(), e))
                    .collect(),
                coeff: *c,
            })
            .collect();
        let mut st = s.serialize_struct("HassePolynomial", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Every family of orbit representatives whose supports partition `Sigma`,
/// as sorted index lists into `catalog.orbits`.
pub fn exact_covers(catalog: &OrbitCatalog) -> Vec<Vec<usize>> {
    let sigma = catalog.sigma_set();
    let supports: Vec<BTreeSet<u128>> = catalog.orbits.iter().map(Witness::support).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut covered = BTreeSet::new();
    covers_rec(&sigma, &supports, &mut covered, &mut chosen, &mut out);
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn covers_rec(
    sigma: &BTreeSet<u128>,
    supports: &[BTreeSet<u128>],
    covered: &mut BTreeSet<u128>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(&first) = sigma.iter().find(|x| !covered.contains(x)) else {
        out.push(chosen.clone());
        return;
    };
    for (i, sup) in supports.iter().enumerate() {
        if sup.contains(&first) && sup.is_disjoint(covered) {
            covered.extend(sup.iter().copied());
            chosen.push(i);
            covers_rec(sigma, supports, covered, chosen, out);
            chosen.pop();
            for x in sup {
                covered.remove(x);
            }
        }
    }
}

/// `sum over covers of (-1)^(N - k) prod_t A^(U_t) / U_t!!` over `F_p`.
pub fn hasse_polynomial(catalog: &OrbitCatalog, covers: &[Vec<usize>]) -> HassePolynomial {
    let p = catalog.p;
    let vars = catalog.exponents.clone();
    let big_n = catalog.n;
    let width = vars.len();
    let terms = covers.iter().map(|cover| {
        let mut mono = vec![0u128; width];
        let mut coeff: i64 = if (big_n - cover.len()).is_multiple_of(2) { 1 } else { -1 };
        for &i in cover {
            let w = &catalog.orbits[i];
            for (m, &u) in mono.iter_mut().zip(w.coords()) {
                *m += u;
            }
            coeff = coeff * inv_mod(w.double_factorial_mod(), p) as i64 % p as i64;
        }
        (mono, coeff)
    });
    HassePolynomial::from_terms(p, vars, terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Hypothesis (H) holds and the Hasse polynomial is nonzero.
    Predicted,
    /// Exact covers exist but their contributions cancel.
    HVanishes,
    /// No family of minimal irreducible supports partitions `Sigma`.
    HFails,
}

#[derive(Debug, Clone, Serialize)]
pub struct HassePrediction {
    pub p: u32,
    pub exponents: Vec<u64>,
    pub status: Status,
    pub holds_h: bool,
    #[serde(with = "serde_ratio")]
    pub delta: Rational,
    pub sigma: Vec<u128>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "serde_opt_vertex")]
    pub vertex: Option<(u64, Rational)>,
    pub hasse: Option<HassePolynomial>,
    /// Orbit representatives; empty for closed-form family predictions.
    pub orbits: Vec<Witness>,
    /// Exact covers as index lists into `orbits`.
    pub covers: Vec<Vec<usize>>,
    pub truncated: bool,
}

impl HassePrediction {
    pub(crate) fn assemble(
        p: u32,
        exponents: Vec<u64>,
        delta: Rational,
        sigma: Vec<u128>,
        hasse: Option<HassePolynomial>,
        orbits: Vec<Witness>,
        covers: Vec<Vec<usize>>,
        truncated: bool,
    ) -> Self {
        let n = sigma.len();
        let status = match &hasse {
            None => Status::HFails,
            Some(h) if h.is_zero() => Status::HVanishes,
            Some(_) => Status::Predicted,
        };
        let vertex = (status == Status::Predicted)
            .then(|| (n as u64, delta * Rational::from_integer(n as i64)));
        HassePrediction {
            p,
            exponents,
            status,
            holds_h: status != Status::HFails,
            delta,
            sigma,
            n,
            vertex,
            hasse,
            orbits,
            covers,
            truncated,
        }
    }

    /// Predicted first slope `delta`, which bounds every first slope from
    /// below whatever the status.
    pub fn first_slope(&self) -> Rational {
        self.delta
    }
}

/// Runs the modular pipeline, the exact-cover search and the Hasse
/// polynomial construction.
pub fn predict(set: &ExponentSet, budget: &Budget) -> Result<HassePrediction> {
    let catalog = orbit_catalog(set, budget)?;
    let covers = exact_covers(&catalog);
    let hasse = (!covers.is_empty()).then(|| hasse_polynomial(&catalog, &covers));
    Ok(HassePrediction::assemble(
        catalog.p,
        catalog.exponents.clone(),
        catalog.delta,
        catalog.sigma.clone(),
        hasse,
        catalog.orbits,
        covers,
        catalog.truncated,
    ))
}

/// `H(alpha)` for the coefficients of `f = sum alpha_d x^d`; `alpha_(d0)` must
/// be nonzero and every exponent must be a variable of `H`.
pub fn evaluate(h: &HassePolynomial, coeffs: &BTreeMap<u64, FqElement>) -> Result<FqElement> {
    let d0 = *h.vars.last().ok_or_else(|| Error::invalid("Hasse polynomial without variables"))?;
    if let Some(d) = coeffs.keys().find(|d| h.vars.binary_search(d).is_err()) {
        return Err(Error::invalid(format!("exponent {d} is not in D")));
    }
    match coeffs.get(&d0) {
        Some(a) if !a.is_zero() => {}
        _ => {
            return Err(Error::invalid(format!(
                "a_{d0} = 0: the polynomial is outside k[x]_D; predict on its support instead"
            )))
        }
    }
    h.evaluate_at(coeffs)
}
