//! Exact multivariate polynomial arithmetic over a prime field `F_p`.
//!
//! Coefficients are single machine words reduced into `[0, p)`; exponents
//! are nonnegative `u32`s. Polynomials are kept in a canonical form
//! (terms sorted in descending graded reverse lexicographic order) so
//! that equality, hashing and printing are deterministic regardless of
//! the monomial order any ideal computation happens to use.

mod exponent;
mod modulus;
mod order;
mod parse;
mod poly;

pub use exponent::ExponentVector;
pub use modulus::PrimeModulus;
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
