use super::dilworth::dilworth_lower_bound;
use super::fsig::{fsig_estimate, FsigData};
use super::hk::{hk_function, HkSample, HkSeries};
use super::reduction::{reduction_indices, ReductionData};
use super::ring::{Engine, RingFlags, RingPresentation};
use crate::config::WorkLimits;
use crate::error::Error;
use crate::groebner::IdealPresentation;
use serde::{Deserialize, Serialize};

/// Everything the bound suite consumes about one ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub name: String,
    /// Krull dimension.
    pub d: usize,
    /// Embedding dimension.
    pub v: usize,
    /// Hilbert-Samuel multiplicity, when the grading admits it.
    pub e: Option<u64>,
    pub hk: HkSeries,
    pub fsig: Option<FsigData>,
    /// Certified lower bound for the Dilworth number of `R/(x)`.
    pub mu_hat: Option<u64>,
    pub reduction: Option<ReductionData>,
    /// Residue degree defect; always 0 for graded models over `F_p`.
    pub alpha: u64,
    pub regular: bool,
    pub flags: RingFlags,
    pub veronese: Option<u32>,
}

impl InvariantProfile {
    pub fn e_hk(&self) -> f64 {
        self.hk.e_hk
    }

    pub fn s(&self) -> Option<f64> {
        self.fsig.as_ref().map(|f| f.s)
    }

    /// Structural sanity checks on the computed numbers.
    pub fn validate(&self) -> Result<(), Error> {
        let tol = self.tolerance();
        if let Some(e) = self.e {
            if e < 1 {
                return Err(Error::Validation("multiplicity below 1".into()));
            }
            if self.e_hk() > e as f64 + tol {
                return Err(Error::Validation(format!(
                    "e_HK estimate {} exceeds multiplicity {}",
                    self.e_hk(),
                    e
                )));
            }
        }
        if self.e_hk() < 1.0 - tol {
            return Err(Error::Validation(format!("e_HK estimate {} below 1", self.e_hk())));
        }
        if let Some(s) = self.s() {
            if !(-tol..=1.0 + tol).contains(&s) {
                return Err(Error::Validation(format!("s estimate {} outside [0,1]", s)));
            }
        }
        if let (Some(mu), Some(e)) = (self.mu_hat, self.e) {
            if self.d >= 1 && e >= 1 && mu > e.saturating_sub(1).max(1) && !self.regular {
                return Err(Error::Validation(format!("mu_hat {} exceeds e - 1 = {}", mu, e - 1)));
            }
        }
        if let Some(red) = &self.reduction {
            if let Some(t) = red.t {
                if red.r > t {
                    return Err(Error::Validation(format!("r = {} exceeds t = {}", red.r, t)));
                }
            }
        }
        Ok(())
    }

    /// The extrapolation tolerance in multiplicity units: the recorded
    /// model residual plus a small floor for float round-off.
    pub fn tolerance(&self) -> f64 {
        self.hk.residual_rel.abs() + 1e-9
    }

    /// Tolerance for comparisons involving the F-signature, whose own
    /// finite-q error decays like `1/q`.
    pub fn fsig_tolerance(&self) -> f64 {
        match &self.fsig {
            None => 0.0,
            Some(f) => {
                let qmax = f.samples.last().map(|&(q, _)| q).unwrap_or(1);
                1.0 / qmax as f64
            }
        }
    }
}

/// Default sampling exponent for Hilbert-Kunz lengths: `q = p^3` up to
/// three ambient variables, backed off for wide rings at large `p`.
pub fn default_q_exponent(ring: &RingPresentation) -> u32 {
    let n = ring.nvars();
    let p = ring.modulus.p();
    if n <= 3 {
        3
    } else if p <= 3 {
        3
    } else {
        2
    }
}

/// Default sampling exponent for splitting numbers, which cost more per
/// sample than colengths.
fn fsig_q_exponent(ring: &RingPresentation) -> u32 {
    let n = ring.nvars();
    let p = ring.modulus.p();
    match n {
        0..=2 => 3,
        3 => {
            if p <= 3 {
                3
            } else {
                2
            }
        }
        _ => {
            if p <= 3 {
                2
            } else {
                1
            }
        }
    }
}

/// Length oracle used while assembling a profile: called once per
/// sampling exponent, so callers can interpose a cache.
pub type LengthSampler<'a> =
    dyn FnMut(&RingPresentation, &IdealPresentation, u32, Engine) -> Result<u64, Error> + 'a;

/// Computes the full invariant profile of a ring with respect to its
/// maximal ideal.
pub fn compute_profile(
    ring: &RingPresentation,
    q_exp_max: Option<u32>,
    engine: Engine,
    seed: u64,
    limits: &WorkLimits,
) -> Result<InvariantProfile, Error> {
    compute_profile_with(ring, q_exp_max, engine, seed, limits, &mut |r, i, e_exp, eng| {
        hk_function(r, i, e_exp, eng, limits)
    })
}

/// Like [`compute_profile`], with Hilbert-Kunz lengths drawn through
/// the supplied sampler.
pub fn compute_profile_with(
    ring: &RingPresentation,
    q_exp_max: Option<u32>,
    engine: Engine,
    seed: u64,
    limits: &WorkLimits,
    sampler: &mut LengthSampler,
) -> Result<InvariantProfile, Error> {
    let d = ring.dimension(limits)?;
    let m = ring.maximal_ideal();
    let emax = q_exp_max.unwrap_or_else(|| default_q_exponent(ring));
    let p = ring.modulus.p() as u64;

    let mut samples = Vec::new();
    for e_exp in 1..=emax {
        let length = sampler(ring, &m, e_exp, engine)?;
        let resolved = if engine == Engine::Auto {
            // Record what auto picked, for the report.
            engine_label(ring)
        } else {
            engine
        };
        samples.push(HkSample { q: p.pow(e_exp), length, engine: resolved });
    }
    let hk = HkSeries::fit("m".into(), samples, d)?;

    let e = match super::hk::hs_multiplicity(ring, limits) {
        Ok(e) => Some(e),
        Err(Error::UnsupportedRingClass(_)) => None,
        Err(other) => return Err(other),
    };

    let fsig = if ring.is_regular() || ring.is_hypersurface() {
        let q_fsig = p.pow(fsig_q_exponent(ring).min(emax));
        match fsig_estimate(ring, q_fsig, limits) {
            Ok(f) => Some(f),
            Err(Error::NotHypersurface) | Err(Error::UnsupportedRingClass(_)) => None,
            Err(other) => return Err(other),
        }
    } else {
        None
    };

    let reduction = match &ring.reduction {
        None => None,
        Some(x_list) => match reduction_indices(ring, x_list, limits) {
            Ok(data) => Some(data),
            Err(Error::ReductionInconclusive(_)) => None,
            Err(other) => return Err(other),
        },
    };

    let mu_hat = match (&ring.reduction, &reduction) {
        (Some(x_list), Some(_)) => {
            let j = IdealPresentation::from_gens(
                ring.modulus,
                ring.nvars(),
                ring.relations
                    .iter()
                    .cloned()
                    .chain(x_list.iter().cloned())
                    .collect(),
            );
            Some(dilworth_lower_bound(ring.modulus, ring.nvars(), &j, seed, limits)?)
        }
        _ => None,
    };

    let profile = InvariantProfile {
        name: ring.name.clone(),
        d,
        v: ring.embedding_dim(),
        e,
        hk,
        fsig,
        mu_hat,
        reduction,
        alpha: 0,
        regular: ring.is_regular(),
        flags: ring.flags,
        veronese: ring.veronese,
    };
    profile.validate()?;
    Ok(profile)
}

fn engine_label(ring: &RingPresentation) -> Engine {
    if ring.veronese.is_some() {
        Engine::Toric
    } else if ring.is_hypersurface() {
        Engine::Linalg
    } else {
        Engine::Groebner
    }
}
