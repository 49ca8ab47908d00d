//! The carry graph of the modular equation.
//!
//! Write `u_d = sum_k u_(d,k) p^k` and let `c_k = sum_d d u_(d,k)` be the
//! column sums. Then `sum_k c_k p^k = K (p^n - 1)` exactly when there are
//! cyclic carries `K_0 = K, K_1, ..., K_n = K_0` with `c_k + K_k = p K_(k+1)`.
//! Solutions of length n are therefore closed walks of length n on carries,
//! an edge `K -> K'` costing the least number of digits (each at most p - 1
//! per exponent) whose weighted sum is `p K' - K`. Carries never exceed
//! `sum D`, the only walk through carry 0 is the zero solution, and the
//! carries met along a walk are exactly the values of `phi_U`.

use crate::config::Budget;
use crate::error::{Error, Result};

use super::ExponentSet;

const INF: u32 = u32::MAX;

pub(crate) struct CarryGraph {
    p: u32,
    d: Vec<u64>,
    /// Largest carry.
    top: usize,
    /// `best[i][c]`: fewest digits from exponents `d[i..]` summing to `c`.
    best: Vec<Vec<u32>>,
    /// `out[k]`: `(k', cost)` edges, carries `1..=top`.
    out: Vec<Vec<(usize, u32)>>,
}

impl CarryGraph {
    pub(crate) fn new(set: &ExponentSet) -> Result<Self> {
        let p = set.p();
        let d = set.exponents().to_vec();
        let top: u64 = d.iter().sum();
        let max_col = (p as u64 - 1) * top;
        if max_col > 1 << 22 {
            return Err(Error::invalid(format!("carry graph for {set} is too large")));
        }
        let top = top as usize;
        let max_col = max_col as usize;
        let mut best = vec![vec![INF; max_col + 1]; d.len() + 1];
        best[d.len()][0] = 0;
        for i in (0..d.len()).rev() {
            let di = d[i] as usize;
            for c in 0..=max_col {
                let mut b = INF;
                for m in 0..p as usize {
                    if m * di > c {
                        break;
                    }
                    let rest = best[i + 1][c - m * di];
                    if rest != INF {
                        b = b.min(rest + m as u32);
                    }
                }
                best[i][c] = b;
            }
        }
        let mut out = vec![Vec::new(); top + 1];
        let pu = p as usize;
        for (k, edges) in out.iter_mut().enumerate().skip(1) {
            // c = p k' - k in [0, max_col]
            let lo = k.div_ceil(pu).max(1);
            let hi = ((max_col + k) / pu).min(top);
            for k2 in lo..=hi {
                let cost = best[0][pu * k2 - k];
                if cost != INF {
                    edges.push((k2, cost));
                }
            }
        }
        Ok(CarryGraph { p, d, top, best, out })
    }

    pub(crate) fn top(&self) -> usize {
        self.top
    }

    #[cfg(test)]
    pub(crate) fn edges(&self, k: usize) -> &[(usize, u32)] {
        &self.out[k]
    }

    pub(crate) fn edge_count(&self) -> u128 {
        self.out.iter().map(|e| e.len() as u128).sum()
    }

    pub(crate) fn column(&self, k: usize, k2: usize) -> usize {
        self.p as usize * k2 - k
    }

    /// Every way to write column sum `c` with the fewest digits, as digit
    /// counts aligned with the exponents.
    pub(crate) fn column_options(&self, c: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let Some(&target) = self.best[0].get(c) else { return out };
        if target == INF {
            return out;
        }
        let mut cur = vec![0u32; self.d.len()];
        self.options_rec(0, c, target, &mut cur, &mut out);
        out
    }

    fn options_rec(&self, i: usize, c: usize, need: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == self.d.len() {
            if c == 0 && need == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let di = self.d[i] as usize;
        for m in 0..self.p {
            let used = m as usize * di;
            if used > c || m > need {
                break;
            }
            if self.best[i + 1][c - used] == need - m {
                cur[i] = m;
                self.options_rec(i + 1, c - used, need - m, cur, out);
            }
        }
        cur[i] = 0;
    }

    /// `s_{D,p}(n)` for `n = 1..=n_max`: least cost of a closed walk of each
    /// length. Each walk is counted from its smallest carry, so the search
    /// from carry `k` stays on carries `>= k`.
    pub(crate) fn closed_walk_minima(&self, n_max: usize, budget: &Budget) -> Result<Vec<u64>> {
        let work = self.edge_count() * n_max as u128;
        budget.check("carry-graph relaxations", work, budget.relaxations)?;
        let mut best = vec![u64::MAX; n_max + 1];
        let mut cur = vec![u64::MAX; self.top + 1];
        let mut next = vec![u64::MAX; self.top + 1];
        for start in 1..=self.top {
            cur.iter_mut().for_each(|x| *x = u64::MAX);
            cur[start] = 0;
            for steps in 1..=n_max {
                next.iter_mut().for_each(|x| *x = u64::MAX);
                for k in start..=self.top {
                    let base = cur[k];
                    if base == u64::MAX {
                        continue;
                    }
                    for &(k2, cost) in &self.out[k] {
                        if k2 >= start {
                            let v = base + cost as u64;
                            if v < next[k2] {
                                next[k2] = v;
                            }
                        }
                    }
                }
                std::mem::swap(&mut cur, &mut next);
                best[steps] = best[steps].min(cur[start]);
            }
        }
        if best[1..].contains(&u64::MAX) {
            return Err(Error::Internal("carry graph has lengths without closed walks".into()));
        }
        Ok(best[1..].to_vec())
    }

    /// Edges on which some cycle of least mean cost `num/den` can run: those
    /// with zero reduced cost `den*cost - num + h(k) - h(k')` under
    /// Bellman-Ford potentials. A closed walk has mean exactly `num/den` iff
    /// it uses only these edges.
    pub(crate) fn tight_subgraph(&self, num: u64, den: u64, budget: &Budget) -> Result<Vec<Vec<usize>>> {
        let work = self.edge_count() * (self.top as u128 + 1);
        budget.check("carry-graph relaxations", work, budget.relaxations)?;
        let w = |cost: u32| den as i128 * cost as i128 - num as i128;
        let mut h = vec![0i128; self.top + 1];
        let mut changed = true;
        let mut rounds = 0;
        while changed {
            changed = false;
            for k in 1..=self.top {
                for &(k2, cost) in &self.out[k] {
                    let v = h[k] + w(cost);
                    if v < h[k2] {
                        h[k2] = v;
                        changed = true;
                    }
                }
            }
            rounds += 1;
            if rounds > self.top + 1 {
                return Err(Error::Internal(
                    "a closed walk has mean weight below the density minimum".into(),
                ));
            }
        }
        Ok((0..=self.top)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                self.out[k]
                    .iter()
                    .filter(|&&(k2, cost)| h[k] + w(cost) == h[k2])
                    .map(|&(k2, _)| k2)
                    .collect()
            })
            .collect())
    }
}

/// Turns a closed walk of carries `walk[0] -> walk[1] -> ... -> walk[0]` and
/// a digit choice per column into the coordinates `u_d`.
pub(crate) fn coords_from_columns(p: u32, columns: &[&Vec<u32>], width: usize) -> Vec<u128> {
    let mut u = vec![0u128; width];
    let mut scale = 1u128;
    for col in columns {
        for (i, &m) in col.iter().enumerate() {
            u[i] += m as u128 * scale;
        }
        scale *= p as u128;
    }
    u
}
