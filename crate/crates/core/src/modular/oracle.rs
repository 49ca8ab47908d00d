//! Independent routes to `s_{D,p}(n)` and `E_{D,p}(n)` for small moduli.

use std::collections::VecDeque;

use crate::config::Budget;
use crate::error::{Error, Result};

use super::{p_weight, ExponentSet, Witness};

/// Shortest nonempty closed walk at 0 in `Z/(p^n - 1)` with steps
/// `p^j d mod (p^n - 1)`, by breadth-first search.
pub fn bfs_min_weight(set: &ExponentSet, n: u32, budget: &Budget) -> Result<u64> {
    let m = set.modulus(n)?;
    budget.check("residues", m, budget.enumeration_nodes)?;
    let m = m as usize;
    let p = set.p() as u128;
    let mut steps: Vec<usize> = Vec::new();
    for &d in set.exponents() {
        let mut s = d as u128 % m as u128;
        for _ in 0..n {
            steps.push(s as usize);
            s = s * p % m as u128;
        }
    }
    steps.sort_unstable();
    steps.dedup();
    if steps.contains(&0) {
        return Ok(1);
    }
    let mut dist = vec![u64::MAX; m];
    let mut queue = VecDeque::new();
    for &s in &steps {
        if dist[s] == u64::MAX {
            dist[s] = 1;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &s in &steps {
            let y = (x + s) % m;
            if y == 0 {
                return Ok(dist[x] + 1);
            }
            if dist[y] == u64::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    Err(Error::Internal("no closed walk at 0".into()))
}

fn for_each_tuple(
    set: &ExponentSet,
    n: u32,
    budget: &Budget,
    mut f: impl FnMut(&[u128]) -> Result<()>,
) -> Result<()> {
    let m = set.modulus(n)?;
    let k = set.exponents().len() as u32;
    let total = (m + 1).checked_pow(k).unwrap_or(u128::MAX);
    budget.check("brute-force tuples", total, budget.enumeration_nodes)?;
    let mut u = vec![0u128; k as usize];
    loop {
        f(&u)?;
        let mut i = 0;
        loop {
            if i == u.len() {
                return Ok(());
            }
            u[i] += 1;
            if u[i] <= m {
                break;
            }
            u[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive minimum of `s_p(U)` over `{0..p^n-1}^D`.
pub fn brute_min_weight(set: &ExponentSet, n: u32, budget: &Budget) -> Result<u64> {
    let m = set.modulus(n)?;
    let mut best = u64::MAX;
    for_each_tuple(set, n, budget, |u| {
        let total: u128 = u.iter().zip(set.exponents()).map(|(&x, &d)| x * d as u128).sum();
        if total > 0 && total.is_multiple_of(m) {
            best = best.min(u.iter().map(|&x| p_weight(x, set.p())).sum());
        }
        Ok(())
    })?;
    Ok(best)
}

/// Every element of `E_{D,p}(n)` with p-weight `weight`, by exhaustion.
pub fn brute_enumerate(set: &ExponentSet, n: u32, weight: u64, budget: &Budget) -> Result<Vec<Witness>> {
    let m = set.modulus(n)?;
    let mut out = Vec::new();
    for_each_tuple(set, n, budget, |u| {
        let total: u128 = u.iter().zip(set.exponents()).map(|(&x, &d)| x * d as u128).sum();
        if total > 0 && total.is_multiple_of(m) && u.iter().map(|&x| p_weight(x, set.p())).sum::<u64>() == weight {
            out.push(Witness::new(set, n, u.to_vec())?);
        }
        Ok(())
    })?;
    Ok(out)
}
