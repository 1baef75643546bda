//! Report document: JSON schema, CSV plot data, and the human verdict
//! table.

use crate::bounds::{BoundVerdict, VerdictStatus};
use crate::invariants::InvariantProfile;
use crate::zigzag::zigzag_numbers;
use crate::error::Error;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Modeling caveat attached to every report: the main floor theorems
/// are stated for F-finite local rings with infinite perfect residue
/// field; graded models over `F_p` rely on the graded analogue.
pub const MODELING_NOTE: &str = "graded models over F_p stand in for the local, \
infinite-residue-field setting via the graded analogue; mu_hat is a scanned lower \
bound for the Dilworth number, and t falls back to r outside toric-monomializable cases";

/// One zigzag row, serialized exactly (integers and rational strings)
/// with a float convenience column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZigzagRow {
    pub d: usize,
    pub c: String,
    pub floor: String,
    pub floor_f64: f64,
}

/// Everything recorded about one corpus entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingReport {
    pub name: String,
    pub path: String,
    pub profile: InvariantProfile,
    pub verdicts: Vec<BoundVerdict>,
    /// Per-entry annotations: engine substitutions, override hooks,
    /// lower-bound semantics.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    /// Unix seconds; excluded from determinism comparisons.
    pub timestamp: u64,
    pub modeling_note: String,
    pub rings: Vec<RingReport>,
    pub zigzag: Vec<ZigzagRow>,
    /// True iff any verdict failed (drives the process exit code).
    pub any_failed: bool,
}

impl ReportDocument {
    pub fn new(seed: u64, rings: Vec<RingReport>, zigzag_dmax: usize) -> Result<Self, Error> {
        let table = zigzag_numbers(zigzag_dmax)?;
        let zigzag = (0..=zigzag_dmax)
            .map(|d| {
                let floor = if d == 0 {
                    num::BigRational::from_integer(1.into())
                } else {
                    table.floors[d].clone()
                };
                ZigzagRow {
                    d,
                    c: table.c[d].to_string(),
                    floor: floor.to_string(),
                    floor_f64: floor.to_f64().unwrap_or(f64::NAN),
                }
            })
            .collect();
        let any_failed =
            rings.iter().any(|r| r.verdicts.iter().any(BoundVerdict::is_fail));
        Ok(ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            modeling_note: MODELING_NOTE.to_string(),
            rings,
            zigzag,
            any_failed,
        })
    }

    pub fn to_json(&self) -> Result<String, Error> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// CSV plot data: `(ring, q, length, length/q^d)` per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("ring,q,length,normalized\n");
        for ring in &self.rings {
            let d = ring.profile.d as i32;
            for s in &ring.profile.hk.samples {
                let norm = s.length as f64 / (s.q as f64).powi(d);
                out.push_str(&format!("{},{},{},{}\n", ring.name, s.q, s.length, norm));
            }
        }
        out
    }

    /// Human-readable verdict table.
    pub fn verdict_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<22} {:<26} {:>10} {:>10} {:>10}  {}\n",
            "ring", "check", "lhs", "rhs", "slack", "status"
        ));
        for ring in &self.rings {
            for v in &ring.verdicts {
                let status = match v.status {
                    VerdictStatus::Pass => "pass",
                    VerdictStatus::InconclusiveTolerance => "inconclusive",
                    VerdictStatus::Fail => "FAIL",
                    VerdictStatus::SkippedHypotheses => "skipped",
                };
                let num = |x: f64| {
                    if x.is_nan() {
                        "-".to_string()
                    } else {
                        format!("{:.4}", x)
                    }
                };
                out.push_str(&format!(
                    "{:<22} {:<26} {:>10} {:>10} {:>10}  {}{}\n",
                    truncate(&ring.name, 22),
                    truncate(&v.check, 26),
                    num(v.lhs),
                    num(v.rhs),
                    num(v.slack),
                    status,
                    match (&v.note, v.failed_hypotheses.is_empty()) {
                        (Some(n), _) => format!("  ({})", n),
                        (None, false) => format!("  (missing: {})", v.failed_hypotheses.join(", ")),
                        _ => String::new(),
                    }
                ));
            }
        }
        out
    }
}

fn truncate(s: &str, width: usize) -> String {
    if s.len() <= width {
        s.to_string()
    } else {
        format!("{}..", &s[..width - 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_is_a_valid_report() {
        let doc = ReportDocument::new(7, Vec::new(), 6).unwrap();
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        assert!(!doc.any_failed);
        let json = doc.to_json().unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
        assert_eq!(doc.to_csv(), "ring,q,length,normalized\n");
    }

    #[test]
    fn zigzag_rows_match_known_floors() {
        let doc = ReportDocument::new(0, Vec::new(), 5).unwrap();
        let floors: Vec<&str> = doc.zigzag.iter().map(|r| r.floor.as_str()).collect();
        assert_eq!(floors, vec!["1", "2", "3/2", "4/3", "29/24", "17/15"]);
    }
}
