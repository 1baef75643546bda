//! Hypothesis-gated verification of the numerical inequalities relating
//! `e`, `e_HK`, `s`, `mu`, `r`, `t` and the dimension, evaluated against
//! computed invariant profiles.
//!
//! Every verdict records both sides, the signed slack, and the numeric
//! tolerance attributable to extrapolation residuals. A check whose
//! hypotheses are unmet is reported as skipped, never silently passed;
//! a violation inside the tolerance band is reported as inconclusive
//! rather than failed.

mod special;

pub use special::{check_integrally_closed, check_radical_descent, ClosedIdealCheckInput, RankWitness};

use crate::error::Error;
use crate::groebner::IdealPresentation;
use crate::invariants::InvariantProfile;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    /// Inequality satisfied outright.
    Pass,
    /// Violated, but by less than the recorded tolerance.
    InconclusiveTolerance,
    /// Violated beyond tolerance with all hypotheses met.
    Fail,
    /// Hypotheses unmet; inequality not evaluated.
    SkippedHypotheses,
}

/// One verified inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub check: String,
    pub ring: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Signed so that `slack >= 0` means the inequality holds.
    pub slack: f64,
    pub tolerance: f64,
    pub status: VerdictStatus,
    pub failed_hypotheses: Vec<String>,
    pub note: Option<String>,
}

impl BoundVerdict {
    /// Verdict for `lhs <= rhs` within `tol`.
    pub fn le(check: &str, ring: &str, lhs: f64, rhs: f64, tol: f64) -> BoundVerdict {
        let slack = rhs - lhs;
        let status = if slack >= 0.0 {
            VerdictStatus::Pass
        } else if slack >= -tol {
            VerdictStatus::InconclusiveTolerance
        } else {
            VerdictStatus::Fail
        };
        let note = if slack.abs() <= tol {
            Some("equality within tolerance".into())
        } else {
            None
        };
        BoundVerdict {
            check: check.into(),
            ring: ring.into(),
            lhs,
            rhs,
            slack,
            tolerance: tol,
            status,
            failed_hypotheses: Vec::new(),
            note,
        }
    }

    /// Verdict for `lhs = rhs` within `tol`.
    pub fn eq(check: &str, ring: &str, lhs: f64, rhs: f64, tol: f64) -> BoundVerdict {
        let diff = (lhs - rhs).abs();
        let status = if diff <= tol { VerdictStatus::Pass } else { VerdictStatus::Fail };
        BoundVerdict {
            check: check.into(),
            ring: ring.into(),
            lhs,
            rhs,
            slack: -diff,
            tolerance: tol,
            status,
            failed_hypotheses: Vec::new(),
            note: None,
        }
    }

    pub fn skipped(check: &str, ring: &str, missing: Vec<String>) -> BoundVerdict {
        BoundVerdict {
            check: check.into(),
            ring: ring.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            tolerance: 0.0,
            status: VerdictStatus::SkippedHypotheses,
            failed_hypotheses: missing,
            note: None,
        }
    }

    pub fn with_note(mut self, note: &str) -> BoundVerdict {
        self.note = Some(note.into());
        self
    }

    pub fn is_fail(&self) -> bool {
        self.status == VerdictStatus::Fail
    }
}

/// An ideal regarded as a rank-1 torsion-free module, or a free module
/// marker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModuleAsIdeal {
    Ideal(IdealPresentation),
    Free(u32),
}

impl ModuleAsIdeal {
    pub fn rank(&self) -> u32 {
        match self {
            ModuleAsIdeal::Ideal(_) => 1,
            ModuleAsIdeal::Free(n) => *n,
        }
    }
}

fn factorial(d: usize) -> f64 {
    (1..=d).map(|k| k as f64).product::<f64>().max(1.0)
}

/// The elementary sandwich `max{e/d!, 1} <= e_HK <= e` plus the
/// F-signature refinements `(e-1)(1-s) >= e_HK - 1` and the two-sided
/// ratio bound `mu/(e-mu) <= (e_HK-1)/(1-s) <= e-1`.
pub fn check_sandwich(prof: &InvariantProfile) -> Vec<BoundVerdict> {
    let ring = &prof.name;
    let mut out = Vec::new();
    let e = match prof.e {
        None => {
            out.push(BoundVerdict::skipped(
                "sandwich",
                ring,
                vec!["multiplicity available".into()],
            ));
            return out;
        }
        Some(e) => e as f64,
    };
    let e_hk = prof.e_hk();
    let tol = prof.tolerance();
    let lower = (e / factorial(prof.d)).max(1.0);
    out.push(BoundVerdict::le("sandwich-lower", ring, lower, e_hk, tol));
    out.push(BoundVerdict::le("sandwich-upper", ring, e_hk, e, tol));

    let s = match prof.s() {
        None => {
            out.push(BoundVerdict::skipped(
                "remark-lower",
                ring,
                vec!["F-signature available".into()],
            ));
            return out;
        }
        Some(s) => s,
    };
    let stol = prof.fsig_tolerance();
    // (e-1)(1-s) >= e_HK - 1
    out.push(BoundVerdict::le(
        "remark-lower",
        ring,
        e_hk - 1.0,
        (e - 1.0) * (1.0 - s),
        tol + (e - 1.0) * stol,
    ));
    if s >= 1.0 - stol - 1e-12 {
        out.push(BoundVerdict::skipped(
            "ratio-bound",
            ring,
            vec!["s < 1 (ring not regular-split)".into()],
        ));
        return out;
    }
    let ratio = (e_hk - 1.0) / (1.0 - s);
    let rtol = (tol + stol) / (1.0 - s);
    if let Some(mu) = prof.mu_hat {
        let mu = mu as f64;
        if mu < e {
            // mu_hat <= mu and x/(e-x) is increasing, so substituting
            // mu_hat only weakens the lower bound: sound.
            out.push(BoundVerdict::le("ratio-lower", ring, mu / (e - mu), ratio, rtol));
        }
    } else {
        out.push(BoundVerdict::skipped(
            "ratio-lower",
            ring,
            vec!["Dilworth lower bound available".into()],
        ));
    }
    out.push(BoundVerdict::le("ratio-upper", ring, ratio, e - 1.0, rtol));
    out
}

/// A named `mu(I/(x))` value supplied by the caller for the Gorenstein
/// lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealMu {
    pub ideal: String,
    pub mu: u64,
}

/// `e_HK >= (e - s*mu)/(e - mu)` per supplied ideal, the embedding-
/// dimension corollary with `mu = v - d`, and the strengthened
/// `e_HK >= e/(e - mu)` when `s = 0`.
pub fn check_gorenstein_lower(
    prof: &InvariantProfile,
    per_ideal: &[IdealMu],
) -> Result<Vec<BoundVerdict>, Error> {
    let ring = &prof.name;
    let mut missing = Vec::new();
    if !prof.flags.gorenstein {
        missing.push("gorenstein".to_string());
    }
    if prof.reduction.is_none() {
        missing.push("verified reduction".to_string());
    }
    if prof.e.is_none() {
        missing.push("multiplicity available".to_string());
    }
    if prof.s().is_none() {
        missing.push("F-signature available".to_string());
    }
    if !missing.is_empty() {
        return Ok(vec![BoundVerdict::skipped("gorenstein-lower", ring, missing)]);
    }
    let e = prof.e.unwrap() as f64;
    let s = prof.s().unwrap();
    let e_hk = prof.e_hk();
    let tol = prof.tolerance();
    let stol = prof.fsig_tolerance();
    let mut out = Vec::new();
    let mut emit = |name: String, mu: u64| -> Result<(), Error> {
        let mu = mu as f64;
        if mu >= e {
            return Err(Error::Data(format!(
                "mu(I/(x)) = {} >= e = {} is impossible for a proper ideal",
                mu, e
            )));
        }
        let denom = e - mu;
        let bound = (e - s * mu) / denom;
        let vtol = tol + (mu * stol) / denom;
        out.push(BoundVerdict::le(&name, ring, bound, e_hk, vtol));
        if s == 0.0 {
            out.push(BoundVerdict::le(
                &format!("{}-sharp", name),
                ring,
                e / denom,
                e_hk,
                tol,
            ));
        }
        Ok(())
    };
    for item in per_ideal {
        emit(format!("gorenstein-lower[{}]", item.ideal), item.mu)?;
    }
    let vd = (prof.v.saturating_sub(prof.d)) as u64;
    if (vd as f64) < e {
        emit("gorenstein-corollary-v".to_string(), vd)?;
    }
    Ok(out)
}

/// The main floor `e_HK >= 1 + min{1/d!, (mu/(e-mu)) / ceil(d/t)^d}`,
/// evaluated with the sound substitutions `mu -> mu_hat` and
/// `t -> r` (both only lower the floor), plus the dimension-only
/// Aberbach-Enescu floor `1 + 1/(d (d!(d-1)+1)^d)`.
pub fn check_main_lower(prof: &InvariantProfile) -> Vec<BoundVerdict> {
    let ring = &prof.name;
    let mut missing = Vec::new();
    if prof.regular {
        missing.push("non-regular".to_string());
    }
    if !prof.flags.unmixed {
        missing.push("unmixed".to_string());
    }
    if prof.e.is_none() {
        missing.push("multiplicity available".to_string());
    }
    if prof.mu_hat.is_none() {
        missing.push("Dilworth lower bound available".to_string());
    }
    let red = match &prof.reduction {
        None => {
            missing.push("verified reduction".to_string());
            None
        }
        Some(r) => Some(*r),
    };
    if let Some(red) = red {
        if red.t.unwrap_or(red.r) == 0 {
            missing.push("r >= 1 (ring not regular)".to_string());
        }
    }
    if !missing.is_empty() {
        return vec![BoundVerdict::skipped("main-lower", ring, missing)];
    }
    let red = red.unwrap();
    let e = prof.e.unwrap() as f64;
    let mu = prof.mu_hat.unwrap() as f64;
    let d = prof.d;
    let e_hk = prof.e_hk();
    let tol = prof.tolerance();
    let t_eff = red.t.unwrap_or(red.r).max(1);

    let floor_with = |mu: f64, t: u32| -> f64 {
        let ceil = (d as f64 / t as f64).ceil();
        let second = if mu < e { (mu / (e - mu)) / ceil.powi(d as i32) } else { 1.0 / factorial(d) };
        1.0 + (1.0 / factorial(d)).min(second)
    };
    let floor = floor_with(mu, t_eff);
    // Substitution soundness: larger mu or t can only raise the floor.
    debug_assert!(floor <= floor_with((mu + 1.0).min(e - 1e-9), t_eff) + 1e-12);
    debug_assert!(floor <= floor_with(mu, t_eff + 1) + 1e-12);

    let mut out = Vec::new();
    let mut main = BoundVerdict::le("main-lower", ring, floor, e_hk, tol);
    if e_hk >= 1.0 + 1.0 / factorial(d) - tol {
        main = main.with_note("meets the 1 + 1/d! threshold (Cohen-Macaulay and F-rational range)");
    }
    out.push(main);

    let ae = 1.0 + 1.0 / (d as f64 * (factorial(d) * (d as f64 - 1.0) + 1.0).powi(d as i32));
    out.push(BoundVerdict::le("ae-lower", ring, ae, e_hk, tol));
    out
}
