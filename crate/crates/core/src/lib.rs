//! Exact characteristic-p commutative algebra for explicitly presented
//! graded rings over prime fields.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`ffpoly`] — multivariate polynomial arithmetic over `F_p` with
//!   pluggable monomial orders, plus an expression parser.
//! * [`groebner`] — Buchberger bases and ideal algebra (normal forms,
//!   intersections, colon ideals, Frobenius bracket powers).
//! * [`hilbert`] — staircase combinatorics: Krull dimension, colengths,
//!   Hilbert series, and an independent linear-algebra colength engine.
//! * [`closure`] — integral closure of monomial ideals via Newton
//!   polyhedra and chains of integrally closed ideals.
//! * [`invariants`] — Hilbert-Kunz functions and multiplicity estimates,
//!   Hilbert-Samuel multiplicity, Frobenius splitting numbers and
//!   F-signature, reduction certification.
//! * [`bounds`] — hypothesis-gated verification of numerical inequalities
//!   against computed invariant profiles.
//! * [`zigzag`] — exact Euler zigzag numbers and the floors `1 + c_d/d!`.
//! * [`workbench`] — ring file format, results cache, corpus runner and
//!   report emission.

pub mod bounds;
pub mod closure;
pub mod config;
pub mod error;
pub mod ffpoly;
pub mod groebner;
pub mod hilbert;
pub mod invariants;
pub mod workbench;
pub mod zigzag;

pub use config::WorkLimits;
pub use error::Error;
pub use ffpoly::{ExponentVector, MonomialOrder, OrderKind, Polynomial, PrimeModulus};
pub use groebner::{IdealPresentation, ReducedBasis};
pub use hilbert::{HilbertData, Staircase};
pub use bounds::{BoundVerdict, VerdictStatus};
pub use invariants::{HkSeries, InvariantProfile, RingPresentation};

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
