//! Buchberger-based ideal algebra over `F_p[x_1..x_n]`.
//!
//! One engine computes reduced Groebner bases; everything else (normal
//! forms, sums, products, intersections, colon ideals, Frobenius bracket
//! powers, membership and equality tests) is layered on top of it.

mod basis;
mod ideal;

pub use basis::{BasisStats, ReducedBasis};
pub use ideal::{CombineKind, IdealPresentation};
