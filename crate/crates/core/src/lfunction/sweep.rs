//! Sweeps of the oracle over whole coefficient spaces: checking a prediction
//! polynomial by polynomial, and counting supersingular members of the
//! degree families `p^n - 1` and `2p^n - 2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Budget;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, FqElement};
use crate::hasse::{evaluate, predict, HassePrediction, Status};
use crate::modular::ExponentSet;
use crate::rational::{serde_opt_vertex, serde_ratio};
use crate::{NewtonPolygon, Rational};

use super::engine::SumEngine;
use super::{polygon_from_sums, InputPolynomial};

/// All `f = sum_(d in D) alpha_d x^d` over `F_q` with `alpha_(d0) != 0`.
///
/// A polynomial is addressed by its cell `sum_i idx_i q^i`, `idx_i` the
/// packed index of the coefficient of the `i`-th exponent. Since `d0` comes
/// last, the valid cells are the contiguous range `q^(k-1) .. q^k`.
#[derive(Debug, Clone)]
pub struct SweepSpace {
    field: Arc<FieldSpec>,
    set: ExponentSet,
    q: u64,
    low: u64,
    high: u64,
}

impl SweepSpace {
    pub fn new(field: &Arc<FieldSpec>, set: &ExponentSet) -> Result<SweepSpace> {
        if field.p() != set.p() {
            return Err(Error::invalid(format!("field characteristic {} differs from p = {}", field.p(), set.p())));
        }
        let q = field.order();
        let k = set.exponents().len() as u32;
        let high = q
            .checked_pow(k)
            .ok_or_else(|| Error::budget("coefficient tuples", (q as u128).saturating_pow(k), u64::MAX as u128))?;
        Ok(SweepSpace { field: field.clone(), set: set.clone(), q, low: high / q, high })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn set(&self) -> &ExponentSet {
        &self.set
    }

    pub fn count(&self) -> u64 {
        self.high - self.low
    }

    pub fn cells(&self) -> std::ops::Range<u64> {
        self.low..self.high
    }

    pub fn cell(&self, rank: u64) -> u64 {
        self.low + rank
    }

    /// `(d, packed index of alpha_d)` for every exponent, zeros included.
    pub fn terms(&self, cell: u64) -> Vec<(u64, u64)> {
        let mut c = cell;
        self.set
            .exponents()
            .iter()
            .map(|&d| {
                let idx = c % self.q;
                c /= self.q;
                (d, idx)
            })
            .collect()
    }

    pub fn coeffs(&self, cell: u64) -> BTreeMap<u64, FqElement> {
        self.terms(cell).into_iter().map(|(d, i)| (d, self.field.from_index(i))).collect()
    }

    pub fn polynomial(&self, cell: u64) -> InputPolynomial {
        InputPolynomial::new(&self.field, self.coeffs(cell)).expect("cells in range have alpha_(d0) != 0")
    }
}

/// Runs the oracle on the given cells and maps each Newton polygon through
/// `f`, in the order of `cells`.
pub fn sweep_polygons<R, F>(space: &SweepSpace, cells: &[u64], budget: &Budget, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(u64, &NewtonPolygon) -> R + Sync,
{
    budget.check("polynomials in a sweep", cells.len() as u128, budget.tuples)?;
    if let Some(c) = cells.iter().find(|&&c| c < space.low || c >= space.high) {
        return Err(Error::invalid(format!("cell {c} is outside the coefficient space")));
    }
    let p = space.field.p();
    let m = space.field.degree();
    let exps = space.set.exponents();
    let r_max = (space.set.d0() - 1) as u32;
    let engine = SumEngine::new(&space.field, r_max, budget)?;
    let dims = m * exps.len();
    let tables: Vec<Option<Vec<u32>>> = (0..r_max as usize)
        .map(|level| {
            engine
                .prefers_transform(level, dims, exps.len(), cells.len() as u64, budget)
                .then(|| engine.transform(level, exps))
        })
        .collect();
    let pu = p as usize;
    cells
        .par_iter()
        .map(|&cell| {
            let terms = space.terms(cell);
            let sums: Vec<Cyclotomic<i128>> = tables
                .iter()
                .enumerate()
                .map(|(level, table)| match table {
                    Some(t) => {
                        let at = cell as usize * pu;
                        let counts: Vec<u64> = t[at..at + pu].iter().map(|&c| c as u64).collect();
                        Cyclotomic::from_counts(p, &counts)
                    }
                    None => engine.sum_direct(level, &terms),
                })
                .collect();
            let np = polygon_from_sums(p, m, &sums)?;
            Ok(f(cell, &np))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Exhaustive,
    /// `count` distinct polynomials drawn uniformly with a seeded ChaCha8
    /// generator; the whole space when `count` exceeds it.
    Sample { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MismatchKind {
    /// First vertex at the prediction disagrees with `H(alpha) != 0`.
    HasseCriterion,
    /// Same check against the prediction for the support of `f`.
    SupportPrediction,
    /// First slope below the density.
    SlopeBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub kind: MismatchKind,
    pub polynomial: InputPolynomial,
    #[serde(with = "serde_opt_vertex")]
    pub observed: Option<(u64, Rational)>,
    #[serde(with = "serde_opt_vertex")]
    pub expected: Option<(u64, Rational)>,
    pub hasse_value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    #[serde(with = "serde_opt_vertex")]
    pub first_vertex: Option<(u64, Rational)>,
    /// `None` when there is no Hasse polynomial to evaluate.
    pub hasse_nonzero: Option<bool>,
    pub count: u64,
}

/// Mismatches kept in full; the total is always counted.
const MAX_RECORDED: usize = 64;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub p: u32,
    pub m: usize,
    pub exponents: Vec<u64>,
    pub mode: VerifyMode,
    pub polynomials: u64,
    pub prediction: HassePrediction,
    /// Polynomials whose first vertex is the predicted one.
    pub hits: u64,
    /// Polynomials with `H(alpha) != 0`.
    pub nonvanishing: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<Mismatch>,
    pub strata: Vec<Stratum>,
    /// Vanishing polynomials checked against the prediction for their support.
    pub support_checks: u64,
    /// Vanishing polynomials whose support gives no usable prediction either.
    pub support_inconclusive: u64,
}

impl VerifyReport {
    pub fn findings(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .mismatches
            .iter()
            .map(|m| {
                let v = |x: &Option<(u64, Rational)>| match x {
                    Some((a, b)) => format!("({a}, {b})"),
                    None => "none".into(),
                };
                format!(
                    "{:?} mismatch for {}: observed {}, expected {}, H = {}",
                    m.kind,
                    m.polynomial,
                    v(&m.observed),
                    v(&m.expected),
                    m.hasse_value.as_deref().unwrap_or("-")
                )
            })
            .collect();
        if self.mismatch_count > self.mismatches.len() as u64 {
            out.push(format!("{} further mismatches not listed", self.mismatch_count - self.mismatches.len() as u64));
        }
        out
    }
}

fn select_cells(space: &SweepSpace, mode: VerifyMode, budget: &Budget) -> Result<Vec<u64>> {
    let total = space.count();
    match mode {
        VerifyMode::Sample { count, seed } if count < total => {
            budget.check("polynomials in a sweep", count as u128, budget.tuples)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total = usize::try_from(total).map_err(|_| Error::invalid("coefficient space too large"))?;
            let mut picks: Vec<u64> =
                rand::seq::index::sample(&mut rng, total, count as usize).into_iter().map(|r| space.cell(r as u64)).collect();
            picks.sort_unstable();
            Ok(picks)
        }
        _ => {
            budget.check("polynomials in a sweep", total as u128, budget.tuples)?;
            Ok(space.cells().collect())
        }
    }
}

struct Observed {
    cell: u64,
    vertex: Option<(u64, Rational)>,
    slope: Option<Rational>,
}

/// Compares the prediction for `D` with the oracle on `k[x]_D` over
/// `F_(p^m)`.
///
/// With a prediction, every polynomial must satisfy: first vertex equals the
/// predicted vertex exactly when `H(alpha) != 0`. When `H(alpha) = 0` and
/// some coefficient vanishes, the support's own prediction is checked too.
/// Every first slope must be at least `delta(D)`.
pub fn verify_prediction(set: &ExponentSet, m: usize, mode: VerifyMode, budget: &Budget) -> Result<VerifyReport> {
    let prediction = predict(set, budget)?;
    let field = FieldSpec::new(set.p(), m)?;
    let space = SweepSpace::new(&field, set)?;
    let cells = select_cells(&space, mode, budget)?;
    let observed = sweep_polygons(&space, &cells, budget, |cell, np| Observed {
        cell,
        vertex: np.first_vertex().ok(),
        slope: np.first_slope().ok(),
    })?;

    let mut report = VerifyReport {
        p: set.p(),
        m,
        exponents: set.exponents().to_vec(),
        mode,
        polynomials: cells.len() as u64,
        prediction,
        hits: 0,
        nonvanishing: 0,
        mismatch_count: 0,
        mismatches: Vec::new(),
        strata: Vec::new(),
        support_checks: 0,
        support_inconclusive: 0,
    };
    let mut strata: BTreeMap<(Option<(u64, Rational)>, Option<bool>), u64> = BTreeMap::new();
    let mut support_cache: HashMap<Vec<u64>, HassePrediction> = HashMap::new();
    let predicted = report.prediction.status == Status::Predicted;
    let record = |report: &mut VerifyReport, mm: Mismatch| {
        report.mismatch_count += 1;
        if report.mismatches.len() < MAX_RECORDED {
            report.mismatches.push(mm);
        }
    };

    for ob in observed {
        let coeffs = space.coeffs(ob.cell);
        let poly = || space.polynomial(ob.cell);
        let mut nonzero = None;
        if let Some(h) = &report.prediction.hasse {
            let value = evaluate(h, &coeffs)?;
            nonzero = Some(!value.is_zero());
            if predicted {
                let hit = ob.vertex == report.prediction.vertex;
                report.hits += hit as u64;
                report.nonvanishing += !value.is_zero() as u64;
                if hit == value.is_zero() {
                    let mm = Mismatch {
                        kind: MismatchKind::HasseCriterion,
                        polynomial: poly(),
                        observed: ob.vertex,
                        expected: report.prediction.vertex,
                        hasse_value: Some(value.to_string()),
                    };
                    record(&mut report, mm);
                }
                if value.is_zero() {
                    let support: Vec<u64> = coeffs.iter().filter(|(_, a)| !a.is_zero()).map(|(&d, _)| d).collect();
                    if support.len() < coeffs.len() {
                        let sp = match support_cache.get(&support) {
                            Some(sp) => sp,
                            None => {
                                let s = ExponentSet::new(set.p(), support.iter().copied())?;
                                let sp = predict(&s, budget)?;
                                support_cache.entry(support.clone()).or_insert(sp)
                            }
                        };
                        let restricted: BTreeMap<u64, FqElement> =
                            coeffs.iter().filter(|(_, a)| !a.is_zero()).map(|(&d, a)| (d, a.clone())).collect();
                        let usable = match (&sp.hasse, sp.status) {
                            (Some(hs), Status::Predicted) => {
                                let vs = evaluate(hs, &restricted)?;
                                (!vs.is_zero()).then_some((sp.vertex, vs))
                            }
                            _ => None,
                        };
                        match usable {
                            Some((expected, vs)) => {
                                report.support_checks += 1;
                                if ob.vertex != expected {
                                    let mm = Mismatch {
                                        kind: MismatchKind::SupportPrediction,
                                        polynomial: poly(),
                                        observed: ob.vertex,
                                        expected,
                                        hasse_value: Some(vs.to_string()),
                                    };
                                    record(&mut report, mm);
                                }
                            }
                            None => report.support_inconclusive += 1,
                        }
                    } else {
                        report.support_inconclusive += 1;
                    }
                }
            }
        }
        if let Some(s) = ob.slope {
            if s < report.prediction.delta {
                let mm = Mismatch {
                    kind: MismatchKind::SlopeBound,
                    polynomial: poly(),
                    observed: ob.vertex,
                    expected: report.prediction.vertex,
                    hasse_value: None,
                };
                record(&mut report, mm);
            }
        }
        *strata.entry((ob.vertex, nonzero)).or_default() += 1;
    }
    report.strata = strata
        .into_iter()
        .map(|((first_vertex, hasse_nonzero), count)| Stratum { first_vertex, hasse_nonzero, count })
        .collect();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeCount {
    #[serde(with = "serde_ratio")]
    pub slope: Rational,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub p: u32,
    pub m: usize,
    pub d0: u64,
    pub n: u32,
    /// `"p^n-1"` or `"2p^n-2"`.
    pub family: String,
    /// `p = 3, d0 = 4`, where supersingular members are expected.
    pub excluded: bool,
    pub polynomials: u64,
    #[serde(with = "serde_ratio")]
    pub expected_first_slope: Rational,
    pub slopes: Vec<SlopeCount>,
    pub supersingular: u64,
    /// Polynomials whose first slope differs from the expected one.
    pub off_prediction: u64,
}

impl ScanReport {
    pub fn findings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.supersingular > 0 && !self.excluded {
            out.push(format!(
                "{} supersingular polynomials of degree {} over F_{}^{}",
                self.supersingular, self.d0, self.p, self.m
            ));
        }
        if self.off_prediction > 0 && !self.excluded {
            out.push(format!("{} first slopes differ from {}", self.off_prediction, self.expected_first_slope));
        }
        out
    }
}

/// `(n, family)` for `d0 = p^n - 1` or `d0 = 2p^n - 2`.
pub fn degree_family(p: u32, d0: u64) -> Option<(u32, &'static str)> {
    let mut pn = p as u64;
    for n in 1..64 {
        if pn - 1 == d0 {
            return Some((n, "p^n-1"));
        }
        if p > 2 && 2 * pn - 2 == d0 {
            return Some((n, "2p^n-2"));
        }
        pn = pn.checked_mul(p as u64)?;
        if pn > d0 + 1 {
            break;
        }
    }
    None
}

/// Every polynomial of degree `d0` over `F_(p^m)` with exponents prime to
/// `p`: the histogram of first slopes and the number of supersingular ones
/// (all slopes `1/2`).
pub fn supersingular_scan(p: u32, d0: u64, m: usize, budget: &Budget) -> Result<ScanReport> {
    let (n, family) = degree_family(p, d0)
        .ok_or_else(|| Error::invalid(format!("degree {d0} is neither p^n - 1 nor 2p^n - 2 for p = {p}")))?;
    let set = ExponentSet::coprime_up_to(p, d0)?;
    let field = FieldSpec::new(p, m)?;
    let space = SweepSpace::new(&field, &set)?;
    let cells = select_cells(&space, VerifyMode::Exhaustive, budget)?;
    let top = (d0 - 1, Rational::new(d0 as i64 - 1, 2));
    let results = sweep_polygons(&space, &cells, budget, |_, np| {
        let ss = np.vertices().len() == 2 && np.vertices()[1] == top;
        (np.first_slope().ok(), ss)
    })?;
    let expected = Rational::new(1, n as i64 * (p as i64 - 1));
    let mut hist: BTreeMap<Rational, u64> = BTreeMap::new();
    let mut supersingular = 0;
    let mut off = 0;
    for (slope, ss) in results {
        let s = slope.ok_or_else(|| Error::Internal("polygon without a first slope".into()))?;
        *hist.entry(s).or_default() += 1;
        supersingular += ss as u64;
        off += (s != expected) as u64;
    }
    Ok(ScanReport {
        p,
        m,
        d0,
        n,
        family: family.into(),
        excluded: p == 3 && d0 == 4,
        polynomials: cells.len() as u64,
        expected_first_slope: expected,
        slopes: hist.into_iter().map(|(slope, count)| SlopeCount { slope, count }).collect(),
        supersingular,
        off_prediction: off,
    })
}
