//! Lookup tables for summing over every point of a field: the absolute trace
//! along powers of a primitive element, and discrete logarithms of a
//! subfield.

use std::collections::HashMap;
use std::sync::Arc;

use super::{poly, Embedding, FieldSpec, FqElement};
use crate::error::{Error, Result};

/// `trace[k] = Tr(gamma^k)` for `0 <= k < q - 1`, `gamma` the primitive
/// element of the field.
pub struct TraceTable {
    spec: Arc<FieldSpec>,
    trace: Vec<u16>,
}

impl TraceTable {
    pub fn new(spec: &Arc<FieldSpec>) -> Result<TraceTable> {
        let p = spec.p();
        if p > u16::MAX as u32 {
            return Err(Error::invalid(format!("trace tables need p < 2^16, got {p}")));
        }
        let n = usize::try_from(spec.order() - 1)
            .map_err(|_| Error::invalid("field too large for a trace table"))?;
        let s = spec.degree();
        let gamma = spec.primitive_element();
        // Tr(gamma^k) is a linear recurring sequence of order <= s, so 2s
        // terms determine it.
        let head = (2 * s).min(n);
        let mut seed = Vec::with_capacity(head);
        let mut y = spec.one();
        for _ in 0..head {
            seed.push(y.trace_to_prime());
            y = &y * &gamma;
        }
        let conn = poly::berlekamp_massey(&seed, p);
        let p64 = p as u64;
        let neg: Vec<u64> = conn[1..].iter().map(|&c| (p64 - c as u64) % p64).collect();
        let mut trace: Vec<u16> = Vec::with_capacity(n);
        trace.extend(seed.iter().map(|&t| t as u16));
        for k in head..n {
            let mut acc = 0u64;
            for (i, &c) in neg.iter().enumerate() {
                acc += c * trace[k - 1 - i] as u64;
            }
            trace.push((acc % p64) as u16);
        }
        Ok(TraceTable { spec: spec.clone(), trace })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// Size of the multiplicative group, `q - 1`.
    pub fn cycle(&self) -> u64 {
        self.trace.len() as u64
    }

    #[inline]
    pub fn at(&self, k: u64) -> u32 {
        self.trace[(k % self.trace.len() as u64) as usize] as u32
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.trace
    }
}

/// Discrete logarithms, to the base of the target's primitive element, of
/// the images of a subfield under an embedding.
pub struct SubfieldLog {
    /// Indexed by the packed index of the source element; `None` for zero.
    logs: Vec<Option<u64>>,
}

impl SubfieldLog {
    pub fn new(embedding: &Embedding) -> Result<SubfieldLog> {
        let source = embedding.source();
        let target = embedding.target();
        let q = source.order();
        let big = target.order() - 1;
        let mut by_image: HashMap<u64, u64> = HashMap::with_capacity(q as usize);
        for idx in 0..q {
            let img = embedding.apply(&source.from_index(idx))?;
            by_image.insert(img.index(), idx);
        }
        let step = big / (q - 1);
        let beta = target.primitive_element().pow(step);
        let mut logs = vec![None; q as usize];
        let mut y = target.one();
        for k in 0..q - 1 {
            let idx = by_image
                .get(&y.index())
                .ok_or_else(|| Error::Internal("subfield power outside the embedded image".into()))?;
            logs[*idx as usize] = Some(k * step);
            y = &y * &beta;
        }
        Ok(SubfieldLog { logs })
    }

    pub fn log(&self, x: &FqElement) -> Option<u64> {
        self.logs[x.index() as usize]
    }

    /// [`SubfieldLog::log`] of the source element with this packed index.
    pub fn log_of_index(&self, index: u64) -> Option<u64> {
        self.logs[index as usize]
    }
}
