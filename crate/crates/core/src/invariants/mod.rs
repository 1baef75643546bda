//! The paper-level asymptotic invariants: Hilbert-Kunz functions and
//! multiplicity estimates, Hilbert-Samuel multiplicity, Frobenius
//! splitting numbers and the F-signature, reduction certification, and
//! the Dilworth lower bound.

mod dilworth;
mod fsig;
mod hk;
mod profile;
mod radical;
mod reduction;
mod ring;

pub use dilworth::dilworth_lower_bound;
pub use fsig::{fsig_estimate, splitting_number, FsigData};
pub use hk::{hk_estimate, hk_function, hs_multiplicity, veronese_colength, HkSample, HkSeries};
pub use profile::{
    compute_profile, compute_profile_with, default_q_exponent, InvariantProfile, LengthSampler,
};
pub use radical::RadicalExtensionSpec;
pub use reduction::{reduction_indices, verify_reduction, ReductionData};
pub use ring::{Engine, RingFlags, RingPresentation};
