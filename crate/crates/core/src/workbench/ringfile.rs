//! Flat key-value ring presentation files.
//!
//! ```text
//! # one key per line; '#' starts a comment; polynomial strings quoted
//! name "A1-quadric-p5"
//! p 5
//! vars x y z
//! weights 1 1 1
//! relations "x^2 + y^2 + z^2"
//! reduction "y" "z"
//! veronese 2
//! flags cohen_macaulay gorenstein normal unmixed
//! # optional per-entry overrides for the corpus runner
//! qmax 3
//! engine toric
//! checks sandwich gorenstein main
//! override_ehk 2.5
//! ```
//!
//! `override_ehk` is a testing hook: it replaces the fitted `e_HK`
//! estimate after profiling, producing a deliberately corrupted profile
//! for exercising the failure paths of the verdict machinery.

use crate::error::Error;
use crate::ffpoly::{parse_polynomial, Polynomial, PrimeModulus};
use crate::invariants::{Engine, RingFlags, RingPresentation};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Per-entry overrides honored by the corpus runner.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EntryOverrides {
    /// Sampling exponent cap (`q` runs over `p^1..p^qmax`).
    pub qmax_exp: Option<u32>,
    pub engine: Option<Engine>,
    /// Requested check suites; `None` means the applicable default set.
    pub checks: Option<Vec<String>>,
    /// Testing hook: corrupt the fitted `e_HK` after profiling.
    pub override_ehk: Option<f64>,
}

/// A parsed ring file: the validated presentation plus runner overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct RingFileData {
    pub ring: RingPresentation,
    pub overrides: EntryOverrides,
}

pub fn load_ring_file(path: &Path) -> Result<RingFileData, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_ring_file(&text, &path.display().to_string())
}

pub fn parse_ring_file(text: &str, path: &str) -> Result<RingFileData, Error> {
    let err = |line: usize, msg: String| Error::RingFile { path: path.to_string(), line, msg };

    let mut name: Option<String> = None;
    let mut p: Option<u64> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut weights: Option<Vec<u32>> = None;
    let mut relations: Vec<(usize, String)> = Vec::new();
    let mut reduction: Vec<(usize, String)> = Vec::new();
    let mut veronese: Option<u32> = None;
    let mut flags = RingFlags::default();
    let mut saw_flags = false;
    let mut overrides = EntryOverrides::default();
    let mut seen: Vec<&str> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line.as_str(), ""),
        };
        let values = tokenize(rest).map_err(|msg| err(lineno, msg))?;
        // Repeatable keys accumulate; scalar keys must be unique.
        if !matches!(key, "relations" | "reduction") {
            if seen.contains(&key) {
                return Err(err(lineno, format!("duplicate key `{}`", key)));
            }
        }
        match key {
            "name" => {
                name = Some(one_value(&values).map_err(|m| err(lineno, m))?);
            }
            "p" => {
                let v = one_value(&values).map_err(|m| err(lineno, m))?;
                p = Some(v.parse().map_err(|_| err(lineno, format!("bad integer `{}`", v)))?);
            }
            "vars" => {
                if values.is_empty() {
                    return Err(err(lineno, "vars needs at least one name".into()));
                }
                vars = Some(values.clone());
            }
            "weights" => {
                let ws: Result<Vec<u32>, _> = values.iter().map(|v| v.parse()).collect();
                weights =
                    Some(ws.map_err(|_| err(lineno, "weights must be positive integers".into()))?);
            }
            "relations" => relations.extend(values.iter().map(|v| (lineno, v.clone()))),
            "reduction" => reduction.extend(values.iter().map(|v| (lineno, v.clone()))),
            "veronese" => {
                let v = one_value(&values).map_err(|m| err(lineno, m))?;
                veronese =
                    Some(v.parse().map_err(|_| err(lineno, format!("bad integer `{}`", v)))?);
            }
            "flags" => {
                saw_flags = true;
                for v in &values {
                    match v.as_str() {
                        "cohen_macaulay" => flags.cohen_macaulay = true,
                        "gorenstein" => flags.gorenstein = true,
                        "normal" => flags.normal = true,
                        "unmixed" => flags.unmixed = true,
                        other => return Err(err(lineno, format!("unknown flag `{}`", other))),
                    }
                }
            }
            "qmax" => {
                let v = one_value(&values).map_err(|m| err(lineno, m))?;
                overrides.qmax_exp =
                    Some(v.parse().map_err(|_| err(lineno, format!("bad integer `{}`", v)))?);
            }
            "engine" => {
                let v = one_value(&values).map_err(|m| err(lineno, m))?;
                overrides.engine =
                    Some(v.parse().map_err(|e: Error| err(lineno, e.to_string()))?);
            }
            "checks" => {
                for v in &values {
                    if !matches!(
                        v.as_str(),
                        "sandwich" | "gorenstein" | "main" | "closed" | "radical" | "all"
                    ) {
                        return Err(err(lineno, format!("unknown check suite `{}`", v)));
                    }
                }
                overrides.checks = Some(values.clone());
            }
            "override_ehk" => {
                let v = one_value(&values).map_err(|m| err(lineno, m))?;
                overrides.override_ehk =
                    Some(v.parse().map_err(|_| err(lineno, format!("bad number `{}`", v)))?);
            }
            other => return Err(err(lineno, format!("unknown key `{}`", other))),
        }
        seen.push(match key {
            "name" => "name",
            "p" => "p",
            "vars" => "vars",
            "weights" => "weights",
            "veronese" => "veronese",
            "flags" => "flags",
            "qmax" => "qmax",
            "engine" => "engine",
            "checks" => "checks",
            "override_ehk" => "override_ehk",
            _ => "",
        });
    }

    let p = p.ok_or_else(|| err(0, "missing key `p`".into()))?;
    let vars = vars.ok_or_else(|| err(0, "missing key `vars`".into()))?;
    let modulus = PrimeModulus::new(p)?;
    {
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(err(0, "duplicate variable names".into()));
        }
    }
    let parse_poly = |(lineno, text): &(usize, String)| -> Result<Polynomial, Error> {
        parse_polynomial(text, modulus, &vars)
            .map_err(|e| err(*lineno, format!("in `{}`: {}", text, e)))
    };
    let relations: Vec<Polynomial> =
        relations.iter().map(parse_poly).collect::<Result<_, _>>()?;
    let reduction: Vec<Polynomial> =
        reduction.iter().map(parse_poly).collect::<Result<_, _>>()?;
    if !saw_flags && !relations.is_empty() {
        // A quotient with no asserted hypotheses is allowed; flags stay
        // all-false and the bound suites gate accordingly.
    }
    let name = name.unwrap_or_else(|| path.to_string());
    let ring = RingPresentation::new(
        name,
        modulus,
        vars,
        relations,
        weights,
        if reduction.is_empty() { None } else { Some(reduction) },
        veronese,
        flags,
    )
    .map_err(|e| err(0, e.to_string()))?;
    Ok(RingFileData { ring, overrides })
}

/// Canonical serializer; `parse_ring_file(save_ring_string(r))` is the
/// identity on the presentation.
pub fn save_ring_string(data: &RingFileData) -> String {
    let ring = &data.ring;
    let mut out = String::new();
    out.push_str(&format!("name \"{}\"\n", ring.name));
    out.push_str(&format!("p {}\n", ring.modulus.p()));
    out.push_str(&format!("vars {}\n", ring.variables.join(" ")));
    let ws: Vec<String> = ring.weights.iter().map(|w| w.to_string()).collect();
    out.push_str(&format!("weights {}\n", ws.join(" ")));
    for rel in &ring.relations {
        out.push_str(&format!("relations \"{}\"\n", rel.to_expression(&ring.variables)));
    }
    if let Some(red) = &ring.reduction {
        for g in red {
            out.push_str(&format!("reduction \"{}\"\n", g.to_expression(&ring.variables)));
        }
    }
    if let Some(e) = ring.veronese {
        out.push_str(&format!("veronese {}\n", e));
    }
    let mut fl = Vec::new();
    if ring.flags.cohen_macaulay {
        fl.push("cohen_macaulay");
    }
    if ring.flags.gorenstein {
        fl.push("gorenstein");
    }
    if ring.flags.normal {
        fl.push("normal");
    }
    if ring.flags.unmixed {
        fl.push("unmixed");
    }
    if !fl.is_empty() {
        out.push_str(&format!("flags {}\n", fl.join(" ")));
    }
    let ov = &data.overrides;
    if let Some(q) = ov.qmax_exp {
        out.push_str(&format!("qmax {}\n", q));
    }
    if let Some(e) = ov.engine {
        out.push_str(&format!("engine {}\n", e));
    }
    if let Some(checks) = &ov.checks {
        out.push_str(&format!("checks {}\n", checks.join(" ")));
    }
    if let Some(v) = ov.override_ehk {
        out.push_str(&format!("override_ehk {}\n", v));
    }
    out
}

fn strip_comment(line: &str) -> &str {
    // '#' outside quotes starts a comment.
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

fn tokenize(rest: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = rest.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(ch) => s.push(ch),
                    None => return Err("unterminated quoted string".into()),
                }
            }
            out.push(s);
        } else {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() {
                    break;
                }
                s.push(ch);
                chars.next();
            }
            out.push(s);
        }
    }
    Ok(out)
}

fn one_value(values: &[String]) -> Result<String, String> {
    if values.len() != 1 {
        return Err(format!("expected exactly one value, got {}", values.len()));
    }
    Ok(values[0].clone())
}
