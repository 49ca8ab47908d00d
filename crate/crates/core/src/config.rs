use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Work limits shared by the enumerations and sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Nodes visited by witness enumerations and brute-force oracles.
    pub enumeration_nodes: u64,
    /// Field points summed per polynomial by the character-sum oracle.
    pub field_points: u64,
    /// Polynomials in one exhaustive sweep.
    pub tuples: u64,
    /// Entries of a character-sum transform table before falling back to
    /// per-polynomial summation.
    pub transform_cells: u64,
    /// Longest witness length searched when classifying irreducible elements.
    pub max_length: usize,
    /// Edge relaxations spent on shortest closed walks in the carry graph.
    pub relaxations: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration_nodes: 10_000_000,
            field_points: 10_000_000,
            tuples: 1_000_000,
            transform_cells: 1 << 24,
            max_length: 24,
            relaxations: 10_000_000_000,
        }
    }
}

impl Budget {
    pub fn validate(&self) -> Result<()> {
        if self.enumeration_nodes == 0
            || self.field_points == 0
            || self.tuples == 0
            || self.transform_cells == 0
            || self.max_length == 0
            || self.relaxations == 0
        {
            return Err(Error::invalid("all budgets must be positive"));
        }
        Ok(())
    }

    pub(crate) fn check(&self, what: &'static str, needed: u128, limit: u64) -> Result<()> {
        if needed > limit as u128 {
            Err(Error::budget(what, needed, limit as u128))
        } else {
            Ok(())
        }
    }
}
