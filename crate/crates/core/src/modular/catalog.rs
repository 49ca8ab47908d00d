use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::rational::serde_ratio;
use crate::Rational;

use super::carry::{coords_from_columns, CarryGraph};
use super::{ExponentSet, Witness};

/// `s_{D,p}(n)` for `n = 1..d0-1` and the p-density.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub p: u32,
    pub exponents: Vec<u64>,
    /// `table[n - 1] = s_{D,p}(n)`.
    pub table: Vec<u64>,
    #[serde(with = "serde_ratio")]
    pub delta: Rational,
    pub argmins: Vec<u32>,
}

impl DensityReport {
    /// `(p - 1) delta = min_n s(n)/n` as a reduced fraction `(num, den)`.
    pub fn mean_weight(&self) -> (u64, u64) {
        let m = self.delta * Rational::from_integer(self.p as i64 - 1);
        (*m.numer() as u64, *m.denom() as u64)
    }

    pub fn is_minimal_length(&self, n: u32) -> bool {
        self.argmins.contains(&n)
    }
}

/// `s_{D,p}(n)`: least p-weight of an element of `E_{D,p}(n)`.
pub fn min_weight(set: &ExponentSet, n: u32, budget: &Budget) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("witness length must be at least 1"));
    }
    let graph = CarryGraph::new(set)?;
    Ok(graph.closed_walk_minima(n as usize, budget)?[n as usize - 1])
}

pub fn density(set: &ExponentSet, budget: &Budget) -> Result<DensityReport> {
    let graph = CarryGraph::new(set)?;
    density_on(set, &graph, None, budget)
}

/// Like [`density`] with the table taken over `1 <= n <= n_max` instead of
/// `n <= d0 - 1`; `delta` is then the minimum over that range only.
pub fn density_to(set: &ExponentSet, n_max: u32, budget: &Budget) -> Result<DensityReport> {
    let graph = CarryGraph::new(set)?;
    density_on(set, &graph, Some(n_max), budget)
}

fn density_on(set: &ExponentSet, graph: &CarryGraph, n_max: Option<u32>, budget: &Budget) -> Result<DensityReport> {
    let d0 = set.d0();
    if d0 < 2 {
        return Err(Error::invalid("d0 = 1 gives a trivial L-function"));
    }
    let n_max = match n_max {
        Some(0) => return Err(Error::invalid("nmax must be at least 1")),
        Some(n) => n as usize,
        None => usize::try_from(d0 - 1).map_err(|_| Error::invalid("d0 too large"))?,
    };
    let table = graph.closed_walk_minima(n_max, budget)?;
    let ratio = |n: usize| Rational::new(table[n - 1] as i64, n as i64);
    let best = (1..=n_max).map(ratio).min().expect("d0 >= 2");
    let argmins = (1..=n_max).filter(|&n| ratio(n) == best).map(|n| n as u32).collect();
    Ok(DensityReport {
        p: set.p(),
        exponents: set.exponents().to_vec(),
        table,
        delta: best / Rational::from_integer(set.p() as i64 - 1),
        argmins,
    })
}

struct Counter<'a> {
    used: u64,
    budget: &'a Budget,
}

impl Counter<'_> {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget.enumeration_nodes {
            return Err(Error::budget(
                "enumeration nodes",
                self.used as u128,
                self.budget.enumeration_nodes as u128,
            ));
        }
        Ok(())
    }
}

/// Every witness for the closed walk `walk` (carries, `walk[0] = phi(U)`),
/// one per choice of least-weight digits in each column.
fn expand_walk(
    set: &ExponentSet,
    graph: &CarryGraph,
    walk: &[usize],
    counter: &mut Counter,
    out: &mut Vec<Witness>,
) -> Result<()> {
    let n = walk.len();
    let options: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|k| graph.column_options(graph.column(walk[k], walk[(k + 1) % n])))
        .collect();
    let mut pick = vec![0usize; n];
    loop {
        counter.tick()?;
        let cols: Vec<&Vec<u32>> = (0..n).map(|k| &options[k][pick[k]]).collect();
        let u = coords_from_columns(set.p(), &cols, set.exponents().len());
        let w = Witness::new(set, n as u32, u)?;
        debug_assert_eq!(w.phi0(), walk[0] as u128);
        out.push(w);
        let mut k = 0;
        loop {
            if k == n {
                return Ok(());
            }
            pick[k] += 1;
            if pick[k] < options[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn sort_witnesses(ws: &mut [Witness]) {
    ws.sort_by(|a, b| {
        (a.len(), a.phi_map(), a.coords()).cmp(&(b.len(), b.phi_map(), b.coords()))
    });
}

/// All `U` in `E_{D,p}(n)` of weight `n (p-1) delta`; empty when length `n`
/// does not reach the density.
pub fn enumerate_minimal(set: &ExponentSet, n: u32, budget: &Budget) -> Result<Vec<Witness>> {
    set.modulus(n)?;
    let graph = CarryGraph::new(set)?;
    let report = density_on(set, &graph, None, budget)?;
    let (num, den) = report.mean_weight();
    let s_n = min_weight_from(&report, &graph, n, budget)?;
    if s_n as u128 * den as u128 != num as u128 * n as u128 {
        return Ok(Vec::new());
    }
    let tight = graph.tight_subgraph(num, den, budget)?;
    let n = n as usize;
    let mut counter = Counter { used: 0, budget };
    let mut out = Vec::new();
    for start in 1..=graph.top() {
        // reach[r][k]: a tight walk of exactly r steps leads from k to start
        let mut reach = vec![vec![false; graph.top() + 1]; n + 1];
        reach[0][start] = true;
        for r in 1..=n {
            for k in 1..=graph.top() {
                reach[r][k] = tight[k].iter().any(|&k2| reach[r - 1][k2]);
            }
        }
        if !reach[n][start] {
            continue;
        }
        let mut walk = vec![start];
        walks_rec(&tight, &reach, n, &mut walk, &mut |w| expand_walk(set, &graph, w, &mut counter, &mut out))?;
    }
    sort_witnesses(&mut out);
    Ok(out)
}

fn min_weight_from(report: &DensityReport, graph: &CarryGraph, n: u32, budget: &Budget) -> Result<u64> {
    match report.table.get(n as usize - 1) {
        Some(&s) => Ok(s),
        None => Ok(graph.closed_walk_minima(n as usize, budget)?[n as usize - 1]),
    }
}

fn walks_rec(
    tight: &[Vec<usize>],
    reach: &[Vec<bool>],
    n: usize,
    walk: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let last = *walk.last().unwrap();
    if walk.len() == n {
        return if tight[last].contains(&walk[0]) { emit(walk) } else { Ok(()) };
    }
    let remaining = n - walk.len();
    for &k2 in &tight[last] {
        if reach[remaining][k2] {
            walk.push(k2);
            walks_rec(tight, reach, n, walk, emit)?;
            walk.pop();
        }
    }
    Ok(())
}

/// `MI*_{D,p}` as canonical representatives, and `Sigma_{D,p}`.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitCatalog {
    pub p: u32,
    pub exponents: Vec<u64>,
    #[serde(with = "serde_ratio")]
    pub delta: Rational,
    /// Representatives with `phi_U(0) = min Im phi_U`, sorted by
    /// `(n, phi_U)`.
    pub orbits: Vec<Witness>,
    pub sigma: Vec<u128>,
    #[serde(rename = "N")]
    pub n: usize,
    /// Set when irreducible elements longer than the length cap may exist.
    pub truncated: bool,
    pub max_length: usize,
}

/// Minimal irreducible elements are the simple cycles of least mean cost in
/// the carry graph; each is reported once, from its smallest carry.
pub fn orbit_catalog(set: &ExponentSet, budget: &Budget) -> Result<OrbitCatalog> {
    let graph = CarryGraph::new(set)?;
    let report = density_on(set, &graph, None, budget)?;
    let (num, den) = report.mean_weight();
    let tight = graph.tight_subgraph(num, den, budget)?;
    let cap = budget.max_length;
    let mut counter = Counter { used: 0, budget };
    let mut orbits = Vec::new();
    let mut truncated = false;
    let top = graph.top();
    for start in 1..=top {
        // distance back to start through carries > start
        let mut dist = vec![usize::MAX; top + 1];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for k in start..=top {
            for &k2 in &tight[k] {
                if k2 >= start {
                    rev[k2].push(k);
                }
            }
        }
        while let Some(k) = queue.pop_front() {
            for &k0 in &rev[k] {
                if k0 > start && dist[k0] == usize::MAX {
                    dist[k0] = dist[k] + 1;
                    queue.push_back(k0);
                }
            }
        }
        if tight[start].iter().all(|&k2| k2 < start || (k2 != start && dist[k2] == usize::MAX)) {
            continue;
        }
        let mut on_path = vec![false; top + 1];
        on_path[start] = true;
        let mut walk = vec![start];
        cycles_rec(
            &tight,
            &dist,
            start,
            cap,
            &mut walk,
            &mut on_path,
            &mut truncated,
            &mut counter,
            &mut |w, c| expand_walk(set, &graph, w, c, &mut orbits),
        )?;
    }
    sort_witnesses(&mut orbits);
    let sigma: BTreeSet<u128> = orbits.iter().flat_map(|w| w.phi_map().iter().copied()).collect();
    if orbits.is_empty() {
        return Err(Error::Internal(format!("no minimal irreducible element found for {set}")));
    }
    Ok(OrbitCatalog {
        p: set.p(),
        exponents: set.exponents().to_vec(),
        delta: report.delta,
        n: sigma.len(),
        sigma: sigma.into_iter().collect(),
        orbits,
        truncated,
        max_length: cap,
    })
}

#[allow(clippy::too_many_arguments)]
fn cycles_rec(
    tight: &[Vec<usize>],
    dist: &[usize],
    start: usize,
    cap: usize,
    walk: &mut Vec<usize>,
    on_path: &mut [bool],
    truncated: &mut bool,
    counter: &mut Counter,
    emit: &mut dyn FnMut(&[usize], &mut Counter) -> Result<()>,
) -> Result<()> {
    counter.tick()?;
    let last = *walk.last().unwrap();
    for &k2 in &tight[last] {
        if k2 == start {
            emit(walk, counter)?;
        } else if k2 > start && !on_path[k2] && dist[k2] != usize::MAX {
            if walk.len() + dist[k2] + 1 > cap {
                *truncated = true;
                continue;
            }
            on_path[k2] = true;
            walk.push(k2);
            cycles_rec(tight, dist, start, cap, walk, on_path, truncated, counter, emit)?;
            walk.pop();
            on_path[k2] = false;
        }
    }
    Ok(())
}

impl OrbitCatalog {
    pub fn sigma_set(&self) -> BTreeSet<u128> {
        self.sigma.iter().copied().collect()
    }

    /// `lcm` of the representative lengths, handy for sizing precision.
    pub fn length_lcm(&self) -> u64 {
        self.orbits.iter().fold(1u64, |acc, w| acc.lcm(&(w.len() as u64)))
    }
}
