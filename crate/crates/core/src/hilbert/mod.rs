//! Staircase combinatorics and colength engines.
//!
//! Everything here consumes the *leading-term* data of a Groebner basis:
//! Krull dimension from independent variable sets, colengths by counting
//! standard monomials, Hilbert-series numerators via the splitting
//! recursion, and an independent linear-algebra colength oracle for
//! hypersurface quotients.

mod linalg;
mod series;
mod staircase;

pub use linalg::{colength_linalg, rank_of_power_blockwise, LinalgOptions};
pub use series::HilbertData;
pub use staircase::Staircase;
