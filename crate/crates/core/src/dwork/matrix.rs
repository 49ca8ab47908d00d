//! Finite sections of `A_1 = (f^(1)_(pi-j))` and the congruences on their
//! minors: cyclic minors `M_theta`, their decomposition of principal minors,
//! and the congruence of `det A_1^Sigma` with the Hasse polynomial.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::splitting::f1_series;
use super::PiValuation;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::ffield::FqElement;
use crate::hasse::{predict, HassePrediction};
use crate::lfunction::InputPolynomial;
use crate::modular::ExponentSet;
use crate::{PiAdicElement, Rational};

/// `(f^(1)_(p i - j))_(i, j in index)`; entries with `p i < j` are zero.
#[derive(Debug, Clone)]
pub struct DworkMatrix {
    p: u32,
    precision: u64,
    index: Vec<u64>,
    entries: Vec<Vec<PiAdicElement>>,
}

fn series_at(series: &[PiAdicElement], p: u32, k: u64, n: i64) -> PiAdicElement {
    if n < 0 {
        PiAdicElement::zero(p, k)
    } else {
        series[n as usize].clone()
    }
}

impl DworkMatrix {
    pub fn new(f: &InputPolynomial, index: &[u64], precision: u64) -> Result<Self> {
        let top = index.iter().max().copied().unwrap_or(0) * f.field().p() as u64;
        let series = f1_series(f, top, precision)?;
        Ok(Self::from_series(f.field().p(), precision, &series, index))
    }

    fn from_series(p: u32, k: u64, series: &[PiAdicElement], index: &[u64]) -> Self {
        let entries = index
            .iter()
            .map(|&i| index.iter().map(|&j| series_at(series, p, k, (p as u64 * i) as i64 - j as i64)).collect())
            .collect();
        DworkMatrix { p, precision: k, index: index.to_vec(), entries }
    }

    pub fn index(&self) -> &[u64] {
        &self.index
    }

    pub fn entry(&self, i: usize, j: usize) -> &PiAdicElement {
        &self.entries[i][j]
    }

    /// Determinant by cofactor expansion along rows, memoized over the set
    /// of columns already used.
    pub fn det(&self) -> PiAdicElement {
        let n = self.index.len();
        let (p, k) = (self.p, self.precision);
        let mut dp = vec![PiAdicElement::zero(p, k); 1 << n];
        dp[0] = PiAdicElement::one(p, k);
        for mask in 0usize..(1 << n) {
            if dp[mask].is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let e = &self.entries[row][col];
                if e.is_zero() {
                    continue;
                }
                // columns already used to the right of col are inversions
                let inv = (mask >> col).count_ones();
                let t = &dp[mask] * e;
                let next = mask | (1 << col);
                dp[next] = if inv % 2 == 1 { &dp[next] - &t } else { &dp[next] + &t };
            }
        }
        dp[(1 << n) - 1].clone()
    }
}

/// `M_theta = (-1)^(n-1) prod_i f^(1)_(p theta(i) - theta(i+1))`, indices
/// taken cyclically.
fn cyclic_minor(series: &[PiAdicElement], p: u32, k: u64, theta: &[u64]) -> PiAdicElement {
    let n = theta.len();
    let mut acc = PiAdicElement::one(p, k);
    for i in 0..n {
        let idx = (p as u64 * theta[i]) as i64 - theta[(i + 1) % n] as i64;
        acc = &acc * &series_at(series, p, k, idx);
    }
    if n.is_multiple_of(2) {
        -&acc
    } else {
        acc
    }
}

/// `sum over partitions of F into cycles (each starting at its minimum) of
/// the product of cyclic minors`.
fn cycle_decomposition_sum(series: &[PiAdicElement], p: u32, k: u64, f: &[u64]) -> PiAdicElement {
    fn extend(
        series: &[PiAdicElement],
        p: u32,
        k: u64,
        rest: &BTreeSet<u64>,
        cycle: &mut Vec<u64>,
        acc: &PiAdicElement,
        out: &mut PiAdicElement,
    ) {
        // close the current cycle here
        let closed = acc * &cyclic_minor(series, p, k, cycle);
        if rest.is_empty() {
            *out = &*out + &closed;
        } else {
            let mut r = rest.clone();
            let start = r.pop_first().unwrap();
            let mut c = vec![start];
            extend(series, p, k, &r, &mut c, &closed, out);
        }
        // or grow it by any remaining element
        for &x in rest {
            let mut r = rest.clone();
            r.remove(&x);
            cycle.push(x);
            extend(series, p, k, &r, cycle, acc, out);
            cycle.pop();
        }
    }
    let mut rest: BTreeSet<u64> = f.iter().copied().collect();
    let mut out = PiAdicElement::zero(p, k);
    if let Some(start) = rest.pop_first() {
        extend(series, p, k, &rest, &mut vec![start], &PiAdicElement::one(p, k), &mut out);
    } else {
        out = PiAdicElement::one(p, k);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MinorCongruenceReport {
    pub sigma: Vec<u128>,
    /// `N (p-1) delta`.
    pub bound: u64,
    pub precision: u64,
    pub det_valuation: PiValuation,
    /// `det A_1^Sigma / pi^bound mod pi`.
    pub det_residue: u32,
    pub hasse: String,
    pub hasse_value: u32,
    pub valuation_ok: bool,
    pub residue_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclicMinorReport {
    pub theta: Vec<u64>,
    pub in_sigma: bool,
    /// Least integer `>= n (p-1) delta`, or `> n (p-1) delta` when the image
    /// leaves `Sigma`.
    pub bound: u64,
    pub valuation: PiValuation,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsetReport {
    pub subset: Vec<u64>,
    pub in_sigma: bool,
    pub det_valuation: PiValuation,
    /// `det A_1^F` equals the sum over cycle decompositions.
    pub decomposition_matches: bool,
    /// Least integer `>= |F| (p-1) delta`, or `> |F| (p-1) delta` for `F`
    /// outside `Sigma`.
    pub bound: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DworkReport {
    pub p: u32,
    pub exponents: Vec<u64>,
    pub polynomial: InputPolynomial,
    #[serde(with = "crate::rational::serde_ratio")]
    pub delta: Rational,
    pub minor: MinorCongruenceReport,
    pub cyclic: Vec<CyclicMinorReport>,
    pub subsets: Vec<SubsetReport>,
}

impl DworkReport {
    pub fn findings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.minor.valuation_ok {
            out.push(format!(
                "v(det A_1^Sigma) = {} is below {} for {}",
                self.minor.det_valuation, self.minor.bound, self.polynomial
            ));
        }
        if !self.minor.residue_ok {
            out.push(format!(
                "det A_1^Sigma residue {} differs from H = {} for {}",
                self.minor.det_residue, self.minor.hasse_value, self.polynomial
            ));
        }
        for c in self.cyclic.iter().filter(|c| !c.holds) {
            out.push(format!("v(M_theta) = {} below {} for theta = {:?}", c.valuation, c.bound, c.theta));
        }
        for s in &self.subsets {
            if !s.decomposition_matches {
                out.push(format!("cycle decomposition differs from det A_1^F for F = {:?}", s.subset));
            }
            if !s.holds {
                out.push(format!("v(det A_1^F) = {} below {} for F = {:?}", s.det_valuation, s.bound, s.subset));
            }
        }
        out
    }
}

struct Context {
    p: u32,
    k: u64,
    delta: Rational,
    sigma: BTreeSet<u64>,
    series: Vec<PiAdicElement>,
}

impl Context {
    /// Least integer valuation allowed by `v >= n (p-1) delta`, or by
    /// `v > n (p-1) delta` when `strict`.
    fn bound(&self, n: usize, strict: bool) -> u64 {
        let x = self.delta * Rational::from_integer(n as i64 * (self.p as i64 - 1));
        if strict {
            x.floor().to_integer() as u64 + 1
        } else {
            x.ceil().to_integer() as u64
        }
    }

    fn check_precision(&self, bound: u64) -> Result<()> {
        if bound >= self.k {
            return Err(Error::Precision(format!(
                "bound pi^{bound} needs precision above {}; raise it and retry",
                self.k
            )));
        }
        Ok(())
    }
}

/// Default precision: one unit past the largest bound tested, plus `p`.
/// `reach` is the largest matrix index needed, `span` the largest subset.
fn prepare(
    set: &ExponentSet,
    f: &InputPolynomial,
    precision: Option<u64>,
    reach: u64,
    span: usize,
    budget: &Budget,
) -> Result<(HassePrediction, Context)> {
    if f.field().degree() != 1 || f.field().p() != set.p() {
        return Err(Error::invalid(format!("the polynomial must be over F_{}", set.p())));
    }
    if let Some(d) = f.coeffs().keys().find(|d| set.position(**d).is_none()) {
        return Err(Error::invalid(format!("exponent {d} of the polynomial is not in D")));
    }
    let prediction = predict(set, budget)?;
    let p = set.p();
    let sigma: BTreeSet<u64> = prediction.sigma.iter().map(|&s| s as u64).collect();
    let mut ctx = Context { p, k: 0, delta: prediction.delta, sigma, series: Vec::new() };
    let top = ctx.bound(prediction.n, false).max(ctx.bound(span, true));
    ctx.k = precision.unwrap_or(top + p as u64);
    let reach = reach.max(ctx.sigma.iter().max().copied().unwrap_or(0));
    ctx.series = f1_series(f, reach * p as u64, ctx.k)?;
    Ok((prediction, ctx))
}

fn minor_report(ctx: &Context, prediction: &HassePrediction, f: &InputPolynomial) -> Result<MinorCongruenceReport> {
    let hasse = prediction
        .hasse
        .as_ref()
        .ok_or_else(|| Error::Degenerate("no family of minimal irreducible supports partitions Sigma".into()))?;
    let exact = Rational::from_integer(prediction.n as i64 * (ctx.p as i64 - 1)) * prediction.delta;
    if !exact.is_integer() {
        return Err(Error::Internal(format!("N (p-1) delta = {exact} is not an integer")));
    }
    let bound = exact.to_integer() as u64;
    ctx.check_precision(bound)?;
    let index: Vec<u64> = ctx.sigma.iter().copied().collect();
    let det = DworkMatrix::from_series(ctx.p, ctx.k, &ctx.series, &index).det();
    let det_valuation = det.valuation();
    let valuation_ok = det_valuation.at_least(bound);
    let det_residue = if valuation_ok { det.residue_at(bound)? } else { u32::MAX };
    let field = f.field();
    let values: BTreeMap<u64, FqElement> =
        hasse.vars().iter().map(|&d| (d, f.coeffs().get(&d).cloned().unwrap_or_else(|| field.zero()))).collect();
    let hasse_value = hasse.evaluate_at(&values)?.as_prime().expect("prime field");
    Ok(MinorCongruenceReport {
        sigma: prediction.sigma.clone(),
        bound,
        precision: ctx.k,
        det_valuation,
        det_residue,
        hasse: hasse.to_string(),
        hasse_value,
        valuation_ok,
        residue_ok: valuation_ok && det_residue == hasse_value,
    })
}

fn cyclic_report(ctx: &Context, theta: &[u64]) -> Result<CyclicMinorReport> {
    let in_sigma = theta.iter().all(|t| ctx.sigma.contains(t));
    let bound = ctx.bound(theta.len(), !in_sigma);
    ctx.check_precision(bound)?;
    let valuation = cyclic_minor(&ctx.series, ctx.p, ctx.k, theta).valuation();
    Ok(CyclicMinorReport { theta: theta.to_vec(), in_sigma, bound, valuation, holds: valuation.at_least(bound) })
}

fn subset_report(ctx: &Context, subset: &[u64]) -> Result<SubsetReport> {
    let in_sigma = subset.iter().all(|t| ctx.sigma.contains(t));
    let bound = ctx.bound(subset.len(), !in_sigma);
    ctx.check_precision(bound)?;
    let det = DworkMatrix::from_series(ctx.p, ctx.k, &ctx.series, subset).det();
    let cyc = cycle_decomposition_sum(&ctx.series, ctx.p, ctx.k, subset);
    let det_valuation = det.valuation();
    Ok(SubsetReport {
        subset: subset.to_vec(),
        in_sigma,
        det_valuation,
        decomposition_matches: det == cyc,
        bound,
        holds: det_valuation.at_least(bound),
    })
}

fn check_injective(theta: &[u64]) -> Result<()> {
    let set: BTreeSet<_> = theta.iter().collect();
    if theta.is_empty() || set.len() != theta.len() || theta.contains(&0) {
        return Err(Error::invalid("theta must be a nonempty injection into the positive integers"));
    }
    Ok(())
}

/// `det A_1^Sigma = H(alpha) pi^(N (p-1) delta) mod pi^(N (p-1) delta + 1)`.
pub fn minor_congruence_check(
    set: &ExponentSet,
    f: &InputPolynomial,
    precision: Option<u64>,
    budget: &Budget,
) -> Result<MinorCongruenceReport> {
    let (prediction, ctx) = prepare(set, f, precision, 0, 0, budget)?;
    minor_report(&ctx, &prediction, f)
}

/// `v(M_theta) >= n (p-1) delta`, strictly when `Im theta` leaves `Sigma`.
pub fn cyclic_minor_check(
    set: &ExponentSet,
    f: &InputPolynomial,
    theta: &[u64],
    precision: Option<u64>,
    budget: &Budget,
) -> Result<CyclicMinorReport> {
    check_injective(theta)?;
    let (_, ctx) = prepare(set, f, precision, *theta.iter().max().unwrap(), theta.len(), budget)?;
    cyclic_report(&ctx, theta)
}

/// Largest subset and cycle length examined by [`dwork_check`].
const MAX_SUBSET: usize = 3;

/// The congruence for `det A_1^Sigma` together with every cyclic minor and
/// principal minor on at most three indices from `1..=max(Sigma)+2`.
pub fn dwork_check(set: &ExponentSet, f: &InputPolynomial, precision: Option<u64>, budget: &Budget) -> Result<DworkReport> {
    let prediction = predict(set, budget)?;
    let universe_top = prediction.sigma.iter().max().map_or(1, |&s| s as u64 + 2);
    let (prediction, ctx) = prepare(set, f, precision, universe_top, MAX_SUBSET, budget)?;
    let minor = minor_report(&ctx, &prediction, f)?;
    let universe: Vec<u64> = (1..=universe_top).collect();
    let mut cyclic = Vec::new();
    let mut subsets = Vec::new();
    for size in 1..=MAX_SUBSET.min(universe.len()) {
        for subset in combinations(&universe, size) {
            subsets.push(subset_report(&ctx, &subset)?);
            // cycles through the subset, starting at its minimum
            for rest in permutations(&subset[1..]) {
                let mut theta = vec![subset[0]];
                theta.extend(rest);
                cyclic.push(cyclic_report(&ctx, &theta)?);
            }
        }
    }
    Ok(DworkReport {
        p: set.p(),
        exponents: set.exponents().to_vec(),
        polynomial: f.clone(),
        delta: prediction.delta,
        minor,
        cyclic,
        subsets,
    })
}

fn combinations(items: &[u64], k: usize) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn permutations(items: &[u64]) -> Vec<Vec<u64>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut perm in permutations(&rest) {
            perm.insert(0, x);
            out.push(perm);
        }
    }
    out
}
