//! Character sums through trace tables. One polynomial costs `#D` lookups per
//! point of `F_(q^r)`; a whole coefficient space can instead be handled by a
//! histogram over the point set followed by a transform over the coefficient
//! coordinates.

use std::sync::Arc;

use crate::config::Budget;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::ffield::tables::{SubfieldLog, TraceTable};
use crate::ffield::{Embedding, FieldSpec};

use super::InputPolynomial;

struct Level {
    table: TraceTable,
    logs: SubfieldLog,
    /// Logs of the images of `1, g, ..., g^(m-1)`.
    basis_logs: Vec<u64>,
}

/// Trace tables for `F_(q^r)`, `r = 1..=r_max`, with `F_q` embedded in each.
pub struct SumEngine {
    field: Arc<FieldSpec>,
    levels: Vec<Level>,
}

impl SumEngine {
    pub fn new(field: &Arc<FieldSpec>, r_max: u32, budget: &Budget) -> Result<SumEngine> {
        let p = field.p();
        let m = field.degree();
        let mut levels = Vec::with_capacity(r_max as usize);
        for r in 1..=r_max {
            let s = m * r as usize;
            let order = (p as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
            budget.check("field points", order, budget.field_points)?;
            let target = FieldSpec::new(p, s)?;
            let table = TraceTable::new(&target)?;
            let logs = SubfieldLog::new(&Embedding::new(field, &target)?)?;
            let basis_logs = (0..m)
                .map(|j| logs.log_of_index((p as u64).pow(j as u32)).expect("basis vectors are nonzero"))
                .collect();
            levels.push(Level { table, logs, basis_logs });
        }
        Ok(SumEngine { field: field.clone(), levels })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn r_max(&self) -> u32 {
        self.levels.len() as u32
    }

    /// `S_1, ..., S_(r_max)` of one polynomial.
    pub fn sums(&self, f: &InputPolynomial) -> Result<Vec<Cyclotomic<i128>>> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch { left: self.field.to_string(), right: f.field().to_string() });
        }
        let terms: Vec<(u64, u64)> = f.coeffs().iter().map(|(&d, a)| (d, a.index())).collect();
        Ok((0..self.levels.len()).map(|i| self.sum_direct(i, &terms)).collect())
    }

    /// `S_(level+1)` for `sum_d alpha_d x^d` given as `(d, packed index of
    /// alpha_d)`.
    pub(crate) fn sum_direct(&self, level: usize, terms: &[(u64, u64)]) -> Cyclotomic<i128> {
        let counts = self.counts_direct(level, terms);
        Cyclotomic::from_counts(self.field.p(), &counts)
    }

    fn counts_direct(&self, level: usize, terms: &[(u64, u64)]) -> Vec<u64> {
        let lv = &self.levels[level];
        let p = self.field.p();
        let trace = lv.table.as_slice();
        let n = trace.len() as u64;
        let mut pos = Vec::with_capacity(terms.len());
        let mut step = Vec::with_capacity(terms.len());
        for &(d, idx) in terms {
            if let Some(l) = lv.logs.log_of_index(idx) {
                pos.push(l % n);
                step.push(d % n);
            }
        }
        let mut counts = vec![0u64; p as usize];
        // x = 0
        counts[0] += 1;
        for _ in 0..n {
            let mut t = 0u32;
            for (q, s) in pos.iter_mut().zip(&step) {
                t += trace[*q as usize] as u32;
                *q += s;
                if *q >= n {
                    *q -= n;
                }
            }
            counts[(t % p) as usize] += 1;
        }
        counts
    }

    /// Cost of [`SumEngine::transform`] at a level relative to summing each
    /// of `tuples` polynomials directly.
    pub(crate) fn prefers_transform(&self, level: usize, dims: usize, terms: usize, tuples: u64, budget: &Budget) -> bool {
        let p = self.field.p() as u128;
        let Some(cells) = p.checked_pow(dims as u32 + 1) else { return false };
        if cells > budget.transform_cells as u128 {
            return false;
        }
        let n = self.levels[level].table.cycle() as u128;
        let transform = n * dims as u128 + dims as u128 * cells * p;
        let direct = tuples as u128 * n * terms as u128;
        transform < direct
    }

    /// Value distribution of `Tr(sum_d alpha_d x^d)` over `F_(q^r)` for every
    /// coefficient vector at once. Cell `c = sum_i idx_i q^i` (`idx_i` the
    /// packed index of the coefficient of `exponents[i]`) holds the `p`
    /// counts at `out[c p .. c p + p]`.
    pub(crate) fn transform(&self, level: usize, exponents: &[u64]) -> Vec<u32> {
        let lv = &self.levels[level];
        let p = self.field.p() as usize;
        let m = self.field.degree();
        let dims = m * exponents.len();
        let cells = p.pow(dims as u32);
        let trace = lv.table.as_slice();
        let n = trace.len() as u64;
        let weights: Vec<usize> = (0..dims).map(|k| p.pow(k as u32)).collect();

        // Histogram of the coordinate vector (Tr(g^j x^d))_(d,j) over x.
        let mut buf = vec![0u32; cells * p];
        buf[0] += 1;
        let mut pos = vec![0u64; exponents.len()];
        let step: Vec<u64> = exponents.iter().map(|d| d % n).collect();
        for _ in 0..n {
            let mut w = 0usize;
            for (a, q) in pos.iter_mut().enumerate() {
                for (j, bl) in lv.basis_logs.iter().enumerate() {
                    let mut k = *q + bl;
                    if k >= n {
                        k -= n;
                    }
                    w += trace[k as usize] as usize * weights[a * m + j];
                }
                *q += step[a];
                if *q >= n {
                    *q -= n;
                }
            }
            buf[w * p] += 1;
        }

        // Replace one coordinate at a time: a slot holding w_k becomes a slot
        // holding the coefficient c_k, shifting the value by c_k w_k.
        let mut line = vec![0u32; p * p];
        for &stride in &weights {
            for base in 0..cells {
                if (base / stride) % p != 0 {
                    continue;
                }
                for v in 0..p {
                    let at = (base + v * stride) * p;
                    line[v * p..v * p + p].copy_from_slice(&buf[at..at + p]);
                }
                for c in 0..p {
                    let at = (base + c * stride) * p;
                    let out = &mut buf[at..at + p];
                    out.fill(0);
                    for v in 0..p {
                        let shift = (c * v) % p;
                        let src = &line[v * p..v * p + p];
                        for t in 0..p {
                            out[(t + shift) % p] += src[t];
                        }
                    }
                }
            }
        }
        buf
    }
}
