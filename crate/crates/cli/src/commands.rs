use gnpforge_core::dwork::dwork_check;
use gnpforge_core::ffield::FieldSpec;
use gnpforge_core::hasse::{family_predictor, predict, Family, HassePolynomial, HassePrediction};
use gnpforge_core::lfunction::{l_polynomial, supersingular_scan, verify_prediction, InputPolynomial, VerifyMode};
use gnpforge_core::modular::{density, density_to, enumerate_minimal, min_weight, orbit_catalog, ExponentSet, Witness};
use gnpforge_core::rational::{serde_opt_vertex, serde_ratio};
use gnpforge_core::{Budget, CyclotomicInteger, Error, NewtonPolygon, Rational, Result};
use serde::Serialize;
use serde_json::Value;

use crate::args::Command;
use crate::cache::Entry;
use crate::config::RunConfig;

fn value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

fn entry<T: Serialize>(payload: &T, findings: Vec<String>, warnings: Vec<String>) -> Result<Entry> {
    Ok(Entry { payload: value(payload)?, findings, warnings })
}

pub fn execute(command: &Command, config: &RunConfig) -> Result<Entry> {
    let budget = &config.budget;
    match command {
        Command::Density { p, exponents, nmax } => {
            let set = ExponentSet::new(*p, exponents.iter().copied())?;
            let report = match nmax {
                Some(n) => density_to(&set, *n, budget)?,
                None => density(&set, budget)?,
            };
            entry(&report, vec![], vec![])
        }
        Command::Minimal { p, exponents, length } => {
            let set = ExponentSet::new(*p, exponents.iter().copied())?;
            match length {
                Some(n) => minimal_of_length(&set, *n, budget),
                None => {
                    let catalog = orbit_catalog(&set, budget)?;
                    let warnings = truncation_warning(catalog.truncated, catalog.max_length);
                    entry(&catalog, vec![], warnings)
                }
            }
        }
        Command::Predict { p, exponents } => {
            let set = ExponentSet::new(*p, exponents.iter().copied())?;
            predict_with_family(&set, budget)
        }
        Command::Oracle { p, m, poly } => {
            let field = FieldSpec::new(*p, *m)?;
            let f = InputPolynomial::parse(&field, poly)?;
            oracle(&f, budget)
        }
        Command::Verify { p, m, exponents, exhaustive, samples, seed } => {
            let set = ExponentSet::new(*p, exponents.iter().copied())?;
            let mode = match (exhaustive, samples) {
                (true, _) => VerifyMode::Exhaustive,
                (false, Some(count)) => {
                    if *count == 0 {
                        return Err(Error::InvalidInput("--samples must be positive".into()));
                    }
                    VerifyMode::Sample { count: *count, seed: seed.unwrap_or(config.seed) }
                }
                (false, None) => return Err(Error::InvalidInput("choose --exhaustive or --samples".into())),
            };
            let report = verify_prediction(&set, *m, mode, budget)?;
            let warnings = truncation_warning(report.prediction.truncated, budget.max_length);
            entry(&report, report.findings(), warnings)
        }
        Command::ScanSs { p, d0, m } => {
            let report = supersingular_scan(*p, *d0, *m, budget)?;
            let mut warnings = Vec::new();
            if report.excluded && report.supersingular > 0 {
                warnings.push(format!(
                    "{} supersingular polynomials in the excluded case p = 3, d0 = 4",
                    report.supersingular
                ));
            }
            entry(&report, report.findings(), warnings)
        }
        Command::DworkCheck { p, exponents, poly, precision } => {
            let set = ExponentSet::new(*p, exponents.iter().copied())?;
            let field = FieldSpec::new(*p, 1)?;
            let f = InputPolynomial::parse(&field, poly)?;
            let report = dwork_check(&set, &f, *precision, budget)?;
            entry(&report, report.findings(), vec![])
        }
    }
}

fn truncation_warning(truncated: bool, cap: usize) -> Vec<String> {
    if truncated {
        vec![format!("irreducible elements longer than {cap} were not searched")]
    } else {
        vec![]
    }
}

#[derive(Serialize)]
struct MinimalPayload {
    p: u32,
    exponents: Vec<u64>,
    n: u32,
    min_weight: u64,
    witnesses: Vec<Witness>,
}

fn minimal_of_length(set: &ExponentSet, n: u32, budget: &Budget) -> Result<Entry> {
    let weight = min_weight(set, n, budget)?;
    let witnesses = enumerate_minimal(set, n, budget)?;
    let payload = MinimalPayload { p: set.p(), exponents: set.exponents().to_vec(), n, min_weight: weight, witnesses };
    entry(&payload, vec![], vec![])
}

#[derive(Serialize)]
struct FamilyCheck {
    #[serde(flatten)]
    family: Family,
    #[serde(with = "serde_ratio")]
    delta: Rational,
    sigma: Vec<u128>,
    #[serde(with = "serde_opt_vertex")]
    vertex: Option<(u64, Rational)>,
    hasse: Option<HassePolynomial>,
    /// `c` with computed `H = c * closed form`.
    hasse_scalar: Option<u32>,
    agrees: bool,
}

#[derive(Serialize)]
struct PredictPayload {
    #[serde(flatten)]
    prediction: HassePrediction,
    family: Option<FamilyCheck>,
}

fn predict_with_family(set: &ExponentSet, budget: &Budget) -> Result<Entry> {
    let prediction = predict(set, budget)?;
    let mut findings = Vec::new();
    let family = match Family::detect(set) {
        Some(family) => {
            let closed = family_predictor(family)?;
            let hasse_scalar = match (&prediction.hasse, &closed.hasse) {
                (Some(h), Some(g)) => h.scalar_ratio(g),
                _ => None,
            };
            let hasse_agrees = match (&prediction.hasse, &closed.hasse) {
                (None, None) => true,
                (Some(h), Some(g)) if h.is_zero() && g.is_zero() => true,
                _ => hasse_scalar.is_some(),
            };
            let agrees = prediction.delta == closed.delta
                && prediction.sigma == closed.sigma
                && prediction.vertex == closed.vertex
                && hasse_agrees;
            if !agrees {
                findings.push(family_disagreement(&prediction, &closed));
            }
            Some(FamilyCheck {
                family,
                delta: closed.delta,
                sigma: closed.sigma,
                vertex: closed.vertex,
                hasse: closed.hasse,
                hasse_scalar,
                agrees,
            })
        }
        None => None,
    };
    let warnings = truncation_warning(prediction.truncated, budget.max_length);
    entry(&PredictPayload { prediction, family }, findings, warnings)
}

fn family_disagreement(computed: &HassePrediction, closed: &HassePrediction) -> String {
    let vertex = |v: &Option<(u64, Rational)>| match v {
        Some((n, h)) => format!("({n}, {h})"),
        None => "none".into(),
    };
    let hasse = |h: &Option<HassePolynomial>| h.as_ref().map_or("none".into(), |h| h.to_string());
    format!(
        "closed form gives vertex {}, Sigma {:?}, H = {}; the search gives vertex {}, Sigma {:?}, H = {}",
        vertex(&closed.vertex),
        closed.sigma,
        hasse(&closed.hasse),
        vertex(&computed.vertex),
        computed.sigma,
        hasse(&computed.hasse)
    )
}

#[derive(Serialize)]
struct OraclePayload {
    p: u32,
    m: usize,
    polynomial: InputPolynomial,
    degree: u64,
    support: Vec<u64>,
    sums: Vec<CyclotomicInteger>,
    l_coeffs: Vec<CyclotomicInteger>,
    polygon: NewtonPolygon,
    #[serde(with = "gnpforge_core::rational::serde_vertex")]
    first_vertex: (u64, Rational),
    #[serde(with = "serde_ratio")]
    first_slope: Rational,
    /// Density of the support, a lower bound for the first slope.
    #[serde(with = "serde_ratio")]
    support_delta: Rational,
}

fn oracle(f: &InputPolynomial, budget: &Budget) -> Result<Entry> {
    let l = l_polynomial(f, budget)?;
    let polygon = l.newton_polygon();
    let first_vertex = polygon.first_vertex()?;
    let first_slope = polygon.first_slope()?;
    let support = f.support();
    let support_delta = density(&support, budget)?.delta;
    let mut findings = Vec::new();
    if first_slope < support_delta {
        findings.push(format!("first slope {first_slope} is below the density {support_delta} of the support"));
    }
    let payload = OraclePayload {
        p: f.field().p(),
        m: f.field().degree(),
        polynomial: f.clone(),
        degree: f.degree(),
        support: support.exponents().to_vec(),
        sums: l.sums().to_vec(),
        l_coeffs: l.coeffs().to_vec(),
        polygon,
        first_vertex,
        first_slope,
        support_delta,
    };
    entry(&payload, findings, vec![])
}
