use super::ring::{Engine, RingPresentation};
use crate::config::WorkLimits;
use crate::error::Error;
use crate::groebner::IdealPresentation;
use crate::hilbert::{colength_linalg, HilbertData, LinalgOptions};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// One Hilbert-Kunz sample `(q, l(R/I^[q]))` with the engine that
/// produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HkSample {
    pub q: u64,
    pub length: u64,
    pub engine: Engine,
}

/// A Hilbert-Kunz function sampled along powers of `p`, with the
/// two-parameter asymptotic fit `l(q) = e_HK q^d + beta q^(d-1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HkSeries {
    /// Human-readable description of the ideal being bracketed.
    pub ideal: String,
    pub samples: Vec<HkSample>,
    pub e_hk: f64,
    pub beta: f64,
    /// Absolute deviation of the fitted model at the third-largest
    /// sample (0 when only two samples exist).
    pub residual: f64,
    /// `residual / q^d` at the third-largest sample: the model error in
    /// multiplicity units, used to derive verdict tolerances.
    pub residual_rel: f64,
}

impl HkSeries {
    /// Fits the two largest samples exactly and measures the residual at
    /// the third largest.
    pub fn fit(ideal: String, samples: Vec<HkSample>, d: usize) -> Result<HkSeries, Error> {
        let (e_hk, beta, residual, residual_rel) = hk_estimate(&samples, d)?;
        // Lengths must be nondecreasing in q.
        let mut sorted = samples.clone();
        sorted.sort_by_key(|s| s.q);
        for w in sorted.windows(2) {
            if w[0].q == w[1].q {
                return Err(Error::Validation(format!("duplicate sample q={}", w[0].q)));
            }
            if w[0].length > w[1].length {
                return Err(Error::Validation(format!(
                    "lengths decrease from q={} to q={}",
                    w[0].q, w[1].q
                )));
            }
        }
        Ok(HkSeries { ideal, samples, e_hk, beta, residual, residual_rel })
    }
}

/// Exact two-point solve of `l(q) = A q^d + B q^(d-1)` on the two
/// largest samples; returns `(A, B, residual, residual/q^d)` with the
/// residual measured at the third-largest sample.
pub fn hk_estimate(samples: &[HkSample], d: usize) -> Result<(f64, f64, f64, f64), Error> {
    if samples.len() < 2 {
        return Err(Error::InsufficientSamples { need: 2, got: samples.len() });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by_key(|s| s.q);
    let s1 = &sorted[sorted.len() - 1];
    let s2 = &sorted[sorted.len() - 2];
    let rat = |x: u64| BigRational::from_integer(BigInt::from(x));
    let pow = |q: u64, k: usize| BigRational::from_integer(BigInt::from(q).pow(k as u32));
    // A q1^d + B q1^(d-1) = l1 ; A q2^d + B q2^(d-1) = l2
    let (a, b) = if d == 0 {
        // Zero-dimensional degenerate: l is eventually constant.
        (rat(s1.length), BigRational::from_integer(BigInt::from(0)))
    } else {
        let det = pow(s1.q, d) * pow(s2.q, d - 1) - pow(s2.q, d) * pow(s1.q, d - 1);
        if det == BigRational::from_integer(BigInt::from(0)) {
            return Err(Error::Validation("degenerate sample pair".into()));
        }
        let a = (rat(s1.length) * pow(s2.q, d - 1) - rat(s2.length) * pow(s1.q, d - 1)) / det.clone();
        let b = (pow(s1.q, d) * rat(s2.length) - pow(s2.q, d) * rat(s1.length)) / det;
        (a, b)
    };
    let (residual, residual_rel) = if sorted.len() >= 3 {
        let s3 = &sorted[sorted.len() - 3];
        let model = &a * pow(s3.q, d)
            + if d > 0 { &b * pow(s3.q, d - 1) } else { BigRational::from_integer(BigInt::from(0)) };
        let diff = (model - rat(s3.length)).abs();
        let rel = &diff / pow(s3.q, d);
        (diff.to_f64().unwrap_or(f64::NAN), rel.to_f64().unwrap_or(f64::NAN))
    } else {
        (0.0, 0.0)
    };
    Ok((
        a.to_f64().unwrap_or(f64::NAN),
        b.to_f64().unwrap_or(f64::NAN),
        residual,
        residual_rel,
    ))
}

/// `l(R/I^[q])` for `q = p^e_exp`, computed by the selected engine.
pub fn hk_function(
    ring: &RingPresentation,
    ideal: &IdealPresentation,
    e_exp: u32,
    engine: Engine,
    limits: &WorkLimits,
) -> Result<u64, Error> {
    let p = ring.modulus;
    let q = (p.p() as u64).pow(e_exp);
    let engine = resolve_engine(ring, ideal, engine);
    match engine {
        Engine::Auto => unreachable!("resolved above"),
        Engine::Groebner => {
            let bq = ideal.bracket_power(q)?;
            let len = ring.quotient_length(&bq, limits)?;
            if len == 0 {
                return Err(Error::NotArtinian);
            }
            Ok(len)
        }
        Engine::Linalg => {
            if !ring.is_hypersurface() {
                return Err(Error::NotHypersurface);
            }
            if !is_maximal_ideal(ring, ideal) {
                return Err(Error::UnsupportedRingClass(
                    "linalg engine handles the maximal ideal only".into(),
                ));
            }
            let opts = LinalgOptions {
                mem_cap_block: limits.mem_cap_block,
                weights: Some(ring.weights.clone()),
            };
            colength_linalg(&ring.relations[0], q, &opts)
        }
        Engine::Toric => {
            let e = ring.veronese.ok_or_else(|| {
                Error::UnsupportedRingClass("toric engine needs Veronese data".into())
            })?;
            if !is_maximal_ideal(ring, ideal) {
                return Err(Error::UnsupportedRingClass(
                    "toric engine handles the maximal ideal only".into(),
                ));
            }
            Ok(veronese_colength(e, q))
        }
    }
}

fn resolve_engine(ring: &RingPresentation, ideal: &IdealPresentation, engine: Engine) -> Engine {
    match engine {
        Engine::Auto => {
            if ring.veronese.is_some() && is_maximal_ideal(ring, ideal) {
                Engine::Toric
            } else if ring.is_hypersurface() && is_maximal_ideal(ring, ideal) {
                Engine::Linalg
            } else {
                Engine::Groebner
            }
        }
        other => other,
    }
}

fn is_maximal_ideal(ring: &RingPresentation, ideal: &IdealPresentation) -> bool {
    let n = ring.nvars();
    if ideal.generators().len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for g in ideal.generators() {
        if !g.is_monomial() {
            return false;
        }
        let (m, c) = &g.terms()[0];
        if *c != 1 || m.degree() != 1 {
            return false;
        }
        let v = m.support().next().unwrap();
        seen[v] = true;
    }
    seen.iter().all(|&s| s)
}

/// `l(V_e / m^[q])` for the plane Veronese `V_e = k[x,y]^(e)` by direct
/// lattice counting: semigroup elements `x^i y^j` (with `e | i+j`)
/// outside the bracket power of the monomial generator set.
pub fn veronese_colength(e: u32, q: u64) -> u64 {
    let e = e as u64;
    let mut count = 0u64;
    // Outside m^[q] means: for every a in 0..=e, not (i >= qa and
    // j >= q(e-a)). a = 0 forces j < qe; a = e forces i < qe.
    for i in 0..(q * e) {
        for j in 0..(q * e) {
            if (i + j) % e != 0 {
                continue;
            }
            if (0..=e).all(|a| i < q * a || j < q * (e - a)) {
                count += 1;
            }
        }
    }
    count
}

/// Hilbert-Samuel multiplicity from the leading-term Hilbert series of
/// the relations. Restricted to the standard grading; weighted rings
/// fall back to `e = l(R/(x))` when a Cohen-Macaulay flag and a declared
/// reduction are available.
pub fn hs_multiplicity(ring: &RingPresentation, limits: &WorkLimits) -> Result<u64, Error> {
    if ring.has_standard_grading() {
        let stair = ring.leading_staircase(limits)?;
        let data = HilbertData::from_staircase(&stair)?;
        if ring.flags.cohen_macaulay {
            if let Some(red) = &ring.reduction {
                if red.len() == data.krull_dim {
                    let j = IdealPresentation::from_gens(ring.modulus, ring.nvars(), red.clone());
                    let via_reduction = ring.quotient_length(&j, limits)?;
                    if via_reduction != data.multiplicity {
                        return Err(Error::Validation(format!(
                            "multiplicity cross-check failed: series gives {}, l(R/(x)) gives {}",
                            data.multiplicity, via_reduction
                        )));
                    }
                }
            }
        }
        return Ok(data.multiplicity);
    }
    if ring.flags.cohen_macaulay {
        if let Some(red) = &ring.reduction {
            let j = IdealPresentation::from_gens(ring.modulus, ring.nvars(), red.clone());
            let len = ring.quotient_length(&j, limits)?;
            if len == 0 {
                return Err(Error::NotArtinian);
            }
            return Ok(len);
        }
    }
    Err(Error::UnsupportedRingClass(
        "multiplicity for weighted gradings needs a Cohen-Macaulay flag and a declared reduction"
            .into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{parse_polynomial, PrimeModulus};
    use crate::invariants::ring::RingFlags;

    fn quadric(p: u64, vars: &[&str]) -> RingPresentation {
        let modulus = PrimeModulus::new(p).unwrap();
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let rel = parse_polynomial(
            &vars.iter().map(|v| format!("{}^2", v)).collect::<Vec<_>>().join("+"),
            modulus,
            &names,
        )
        .unwrap();
        RingPresentation::new(
            "quadric".into(),
            modulus,
            names,
            vec![rel],
            None,
            None,
            None,
            RingFlags { cohen_macaulay: true, gorenstein: true, normal: true, unmixed: true },
        )
        .unwrap()
    }

    #[test]
    fn regular_rings_give_q_to_the_d() {
        let p = PrimeModulus::new(3).unwrap();
        let r = RingPresentation::polynomial_ring(p, vec!["x".into(), "y".into()]);
        let m = r.maximal_ideal();
        let len = hk_function(&r, &m, 2, Engine::Groebner, &WorkLimits::default()).unwrap();
        assert_eq!(len, 81);
    }

    #[test]
    fn principal_ideal_in_one_variable() {
        // R = k[x], I = (x^2): l(R/I^[q]) = 2q
        let p = PrimeModulus::new(3).unwrap();
        let r = RingPresentation::polynomial_ring(p, vec!["x".into()]);
        let names = vec!["x".to_string()];
        let i = IdealPresentation::from_gens(
            p,
            1,
            vec![parse_polynomial("x^2", p, &names).unwrap()],
        );
        for e_exp in 1..=3 {
            let q = 3u64.pow(e_exp);
            let len = hk_function(&r, &i, e_exp, Engine::Groebner, &WorkLimits::default()).unwrap();
            assert_eq!(len, 2 * q);
        }
    }

    #[test]
    fn quadric_closed_form_all_engines() {
        let r = quadric(5, &["x", "y", "z"]);
        let mut with_veronese = r.clone();
        with_veronese.veronese = Some(2);
        let m = r.maximal_ideal();
        let limits = WorkLimits::default();
        for e_exp in 1..=2u32 {
            let q = 5u64.pow(e_exp);
            let expect = (3 * q * q - 1) / 2;
            assert_eq!(
                hk_function(&r, &m, e_exp, Engine::Groebner, &limits).unwrap(),
                expect
            );
            assert_eq!(
                hk_function(&r, &m, e_exp, Engine::Linalg, &limits).unwrap(),
                expect
            );
            assert_eq!(
                hk_function(&with_veronese, &m, e_exp, Engine::Toric, &limits).unwrap(),
                expect
            );
        }
    }

    #[test]
    fn veronese_counts() {
        // e = 2: (3q^2 - 1)/2
        for q in [3u64, 9, 5, 25] {
            assert_eq!(veronese_colength(2, q), (3 * q * q - 1) / 2);
        }
        // q = 1: l(V_e/m) = 1
        for e in 2..=4 {
            assert_eq!(veronese_colength(e, 1), 1);
        }
    }

    #[test]
    fn estimate_on_closed_form_samples() {
        let samples: Vec<HkSample> = [(3u64, 13u64), (9, 121), (27, 1093)]
            .iter()
            .map(|&(q, length)| HkSample { q, length, engine: Engine::Groebner })
            .collect();
        let (e_hk, beta, residual, _) = hk_estimate(&samples, 2).unwrap();
        assert!((e_hk - 1.5).abs() < 0.01, "e_hk = {}", e_hk);
        assert!(beta.abs() < 0.1, "beta = {}", beta);
        assert!(residual < 0.5, "residual = {}", residual);
    }

    #[test]
    fn estimate_exact_on_pure_powers() {
        let samples: Vec<HkSample> = [(5u64, 125u64), (25, 15625)]
            .iter()
            .map(|&(q, length)| HkSample { q, length, engine: Engine::Groebner })
            .collect();
        let (e_hk, beta, residual, _) = hk_estimate(&samples, 3).unwrap();
        assert_eq!(e_hk, 1.0);
        assert_eq!(beta, 0.0);
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn estimate_needs_two_samples() {
        let samples = vec![HkSample { q: 5, length: 25, engine: Engine::Groebner }];
        assert!(matches!(
            hk_estimate(&samples, 2),
            Err(Error::InsufficientSamples { need: 2, got: 1 })
        ));
    }

    #[test]
    fn multiplicity_examples() {
        let limits = WorkLimits::default();
        // quadric hypersurface -> 2
        assert_eq!(hs_multiplicity(&quadric(5, &["x", "y", "z"]), &limits).unwrap(), 2);
        // polynomial ring -> 1
        let p = PrimeModulus::new(5).unwrap();
        let r = RingPresentation::polynomial_ring(p, vec!["x".into(), "y".into()]);
        assert_eq!(hs_multiplicity(&r, &limits).unwrap(), 1);
        // k[x,y]/(x^3) -> 3
        let names = vec!["x".to_string(), "y".to_string()];
        let rel = parse_polynomial("x^3", p, &names).unwrap();
        let r = RingPresentation::new(
            "triple-line".into(),
            p,
            names,
            vec![rel],
            None,
            None,
            None,
            RingFlags::default(),
        )
        .unwrap();
        assert_eq!(hs_multiplicity(&r, &limits).unwrap(), 3);
    }

    #[test]
    fn multiplicity_cross_check_with_reduction() {
        let mut r = quadric(5, &["x", "y", "z"]);
        let p = r.modulus;
        r.reduction = Some(vec![
            Polynomial::variable(p, 3, 1),
            Polynomial::variable(p, 3, 2),
        ]);
        assert_eq!(hs_multiplicity(&r, &WorkLimits::default()).unwrap(), 2);
    }

    use crate::ffpoly::Polynomial;
}
