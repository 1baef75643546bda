use serde::{Deserialize, Serialize};

/// Explicit work limits for the symbolic engines.
///
/// Exceeding a limit is a hard, typed error; nothing is ever silently
/// truncated.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorkLimits {
    /// Maximum number of S-pairs Buchberger may process per basis.
    pub pair_budget: usize,
    /// Maximum number of basis elements before aborting.
    pub max_basis: usize,
    /// Maximum number of basis monomials per graded block in the
    /// linear-algebra colength engine.
    pub mem_cap_block: usize,
    /// Denominator bound for the brute-force closure membership oracle.
    pub closure_multiplier: u32,
    /// Largest exponent tried when certifying a reduction.
    pub reduction_budget: usize,
    /// Number of random ideals sampled by the Dilworth scan.
    pub dilworth_samples: usize,
}

impl Default for WorkLimits {
    fn default() -> Self {
        WorkLimits {
            pair_budget: 200_000,
            max_basis: 20_000,
            mem_cap_block: 1 << 19,
            closure_multiplier: 12,
            reduction_budget: 8,
            dilworth_samples: 16,
        }
    }
}
