//! The two check families that need extra computed inputs: additivity
//! over integrally closed ideals (with rank-inequality witnesses), and
//! descent along radical extensions.

use super::{BoundVerdict, ModuleAsIdeal};
use crate::closure::closed_chain_length;
use crate::config::WorkLimits;
use crate::error::Error;
use crate::groebner::{CombineKind, IdealPresentation};
use crate::invariants::{
    hk_function, Engine, HkSample, HkSeries, InvariantProfile, RadicalExtensionSpec,
    RingPresentation,
};
use serde::{Deserialize, Serialize};

/// Precomputed data about one integrally closed `m`-primary ideal `I`:
/// its own Hilbert-Kunz series and its colength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedIdealCheckInput {
    pub ideal: String,
    pub hk: HkSeries,
    pub colength: u64,
}

/// A rank-inequality instance `l(IK/JK) >= chain(I/J) * rank(K)` for
/// `J ⊆ I` integrally closed monomial ideals and `K` a module presented
/// as an ideal.
#[derive(Debug, Clone)]
pub struct RankWitness {
    pub name: String,
    pub lower: IdealPresentation,
    pub upper: IdealPresentation,
    pub module: ModuleAsIdeal,
}

/// For normal rings: `e_HK(I) >= l(R/I)` and the additive refinement
/// `e_HK(I) >= l(R/I) + e_HK(R) - 1` for integrally closed `I`, plus
/// any supplied rank-inequality witnesses (exact integer comparisons).
pub fn check_integrally_closed(
    prof: &InvariantProfile,
    ring: &RingPresentation,
    input: Option<&ClosedIdealCheckInput>,
    witnesses: &[RankWitness],
    limits: &WorkLimits,
) -> Result<Vec<BoundVerdict>, Error> {
    let name = &prof.name;
    let mut out = Vec::new();
    match input {
        None => {}
        Some(_) if !prof.flags.normal => {
            out.push(BoundVerdict::skipped("closed-additive", name, vec!["normal".into()]));
        }
        Some(inp) => {
            let e_hk_i = inp.hk.e_hk;
            let tol = inp.hk.residual_rel.abs() + prof.tolerance();
            out.push(BoundVerdict::le(
                &format!("closed-wy-lower[{}]", inp.ideal),
                name,
                inp.colength as f64,
                e_hk_i,
                tol,
            ));
            out.push(BoundVerdict::le(
                &format!("closed-additive[{}]", inp.ideal),
                name,
                inp.colength as f64 + prof.e_hk() - 1.0,
                e_hk_i,
                tol,
            ));
        }
    }
    for w in witnesses {
        // The greedy chain length is itself a lower bound for the true
        // maximal chain length, so the instance below is a (weaker but
        // sound) consequence of the rank inequality.
        let cert = match closed_chain_length(&w.lower, &w.upper) {
            Ok(c) => c,
            Err(Error::NotMonomial) | Err(Error::Hypotheses(_)) => {
                out.push(BoundVerdict::skipped(
                    &format!("rank-lower[{}]", w.name),
                    name,
                    vec!["integrally closed monomial endpoints".into()],
                ));
                continue;
            }
            Err(other) => return Err(other),
        };
        cert.validate()?;
        let quotient = |i: &IdealPresentation| ring.quotient_length(i, limits);
        let module_len = match &w.module {
            ModuleAsIdeal::Ideal(k) => {
                let jk = w.lower.combine(CombineKind::Product, k, limits)?;
                let ik = w.upper.combine(CombineKind::Product, k, limits)?;
                quotient(&jk)? - quotient(&ik)?
            }
            ModuleAsIdeal::Free(r) => {
                (*r as u64) * (quotient(&w.lower)? - quotient(&w.upper)?)
            }
        };
        out.push(BoundVerdict::le(
            &format!("rank-lower[{}]", w.name),
            name,
            (cert.length as u64 * w.module.rank() as u64) as f64,
            module_len as f64,
            0.0,
        ));
    }
    Ok(out)
}

/// For `S = R[y]/(y^n - x)` with `x` a degree-one member of the
/// verified reduction: the descent inequality
/// `e_HK(R) - 1 >= (e_HK(S) - 1)/n` and the exact scaling
/// `e_HK(mS) = n * e_HK(R)`. Both `S`-side series are sampled here.
pub fn check_radical_descent(
    spec: &RadicalExtensionSpec,
    prof: &InvariantProfile,
    limits: &WorkLimits,
) -> Result<Vec<BoundVerdict>, Error> {
    let name = &prof.name;
    let base = &spec.base;
    let x_in_reduction = base.reduction.as_ref().is_some_and(|gens| {
        gens.iter().any(|g| {
            g.is_monomial()
                && g.terms().len() == 1
                && g.terms()[0].0.degree() == 1
                && g.terms()[0].0.support().next() == Some(spec.x_index)
        })
    });
    if !x_in_reduction || prof.reduction.is_none() {
        return Ok(vec![BoundVerdict::skipped(
            "radical-descent",
            name,
            vec!["x is a degree-one member of a verified reduction".into()],
        )]);
    }
    let n = spec.root_index as u64;
    let s = spec.extension()?;
    if spec.fiber_length(limits)? != n {
        return Err(Error::Validation(format!(
            "fiber length of {} is not the root index {}",
            s.name, n
        )));
    }
    let d = prof.d;
    let p = s.modulus.p() as u64;
    let emax = crate::invariants::default_q_exponent(&s).min(
        prof.hk.samples.iter().map(|smp| smp.q).max().map_or(2, |q| {
            // Do not sample S beyond the q-range already used for R.
            let mut e = 0;
            let mut qq = 1u64;
            while qq < q {
                qq *= p;
                e += 1;
            }
            e
        }),
    );
    let m_full = s.maximal_ideal();
    let m_base = IdealPresentation::from_gens(
        s.modulus,
        s.nvars(),
        (0..base.nvars())
            .map(|v| crate::ffpoly::Polynomial::variable(s.modulus, s.nvars(), v))
            .collect(),
    );
    let sample = |ideal: &IdealPresentation, label: &str| -> Result<HkSeries, Error> {
        let mut samples = Vec::new();
        for e_exp in 1..=emax.max(2) {
            let length = hk_function(&s, ideal, e_exp, Engine::Groebner, limits)?;
            samples.push(HkSample { q: p.pow(e_exp), length, engine: Engine::Groebner });
        }
        HkSeries::fit(label.into(), samples, d)
    };
    let hk_s = sample(&m_full, "mS + (rt)")?;
    let hk_ms = sample(&m_base, "mS")?;

    let tol_r = prof.tolerance();
    let mut out = Vec::new();
    out.push(BoundVerdict::le(
        "radical-descent",
        name,
        (hk_s.e_hk - 1.0) / n as f64,
        prof.e_hk() - 1.0,
        tol_r + (hk_s.residual_rel.abs() + 1e-9) / n as f64,
    ));
    out.push(BoundVerdict::eq(
        "radical-scaling",
        name,
        hk_ms.e_hk,
        n as f64 * prof.e_hk(),
        n as f64 * tol_r + hk_ms.residual_rel.abs() + 1e-6,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::VerdictStatus;
    use crate::ffpoly::{parse_polynomial, PrimeModulus};
    use crate::invariants::compute_profile;

    fn plane(p: u64) -> RingPresentation {
        RingPresentation::polynomial_ring(
            PrimeModulus::new(p).unwrap(),
            vec!["x".into(), "y".into()],
        )
    }

    fn monomial_ideal(p: PrimeModulus, texts: &[&str]) -> IdealPresentation {
        let names = vec!["x".to_string(), "y".to_string()];
        IdealPresentation::from_gens(
            p,
            2,
            texts.iter().map(|t| parse_polynomial(t, p, &names).unwrap()).collect(),
        )
    }

    #[test]
    fn m_squared_additivity_is_equality() {
        let limits = WorkLimits::default();
        let ring = plane(5);
        let prof = compute_profile(&ring, Some(2), Engine::Groebner, 7, &limits).unwrap();
        let p = ring.modulus;
        let m2 = IdealPresentation::power_of_maximal(p, 2, 2);
        let mut samples = Vec::new();
        for e_exp in 1..=2 {
            let length = hk_function(&ring, &m2, e_exp, Engine::Groebner, &limits).unwrap();
            samples.push(HkSample { q: 5u64.pow(e_exp), length, engine: Engine::Groebner });
        }
        let hk = HkSeries::fit("m^2".into(), samples, 2).unwrap();
        assert!((hk.e_hk - 3.0).abs() < 1e-9, "e_HK(m^2) = {}", hk.e_hk);
        let input = ClosedIdealCheckInput { ideal: "m^2".into(), hk, colength: 3 };
        let out = check_integrally_closed(&prof, &ring, Some(&input), &[], &limits).unwrap();
        let add = out.iter().find(|v| v.check.starts_with("closed-additive")).unwrap();
        // l(R/m^2) + e_HK(R) - 1 = 3 + 1 - 1 = 3 = e_HK(m^2): equality.
        assert_eq!(add.status, VerdictStatus::Pass);
        assert!(add.slack.abs() < 1e-6, "{:?}", add);
    }

    #[test]
    fn rank_witness_in_the_plane() {
        let limits = WorkLimits::default();
        let ring = plane(5);
        let p = ring.modulus;
        let witness = RankWitness {
            name: "m2-xy2-m".into(),
            lower: IdealPresentation::power_of_maximal(p, 2, 2),
            upper: monomial_ideal(p, &["x", "y^2"]),
            module: ModuleAsIdeal::Ideal(IdealPresentation::maximal_ideal(p, 2)),
        };
        let prof = compute_profile(&ring, Some(2), Engine::Groebner, 7, &limits).unwrap();
        let out = check_integrally_closed(&prof, &ring, None, &[witness], &limits).unwrap();
        assert_eq!(out.len(), 1);
        let v = &out[0];
        // l(IK/JK) = l(R/m^3) - l(R/(x^2,xy,y^3)) = 6 - 4 = 2 >= 1.
        assert_eq!(v.status, VerdictStatus::Pass);
        assert_eq!(v.lhs, 1.0);
        assert_eq!(v.rhs, 2.0);
    }

    #[test]
    fn non_monomial_witness_is_skipped() {
        let limits = WorkLimits::default();
        let ring = plane(5);
        let p = ring.modulus;
        let names = vec!["x".to_string(), "y".to_string()];
        let witness = RankWitness {
            name: "bad".into(),
            lower: IdealPresentation::from_gens(
                p,
                2,
                vec![parse_polynomial("x + y", p, &names).unwrap()],
            ),
            upper: monomial_ideal(p, &["x", "y"]),
            module: ModuleAsIdeal::Free(1),
        };
        let prof = compute_profile(&ring, Some(2), Engine::Groebner, 7, &limits).unwrap();
        let out = check_integrally_closed(&prof, &ring, None, &[witness], &limits).unwrap();
        assert_eq!(out[0].status, VerdictStatus::SkippedHypotheses);
    }

    #[test]
    fn regular_radical_descent() {
        let limits = WorkLimits::default();
        let ring = plane(5);
        let prof = compute_profile(&ring, Some(2), Engine::Groebner, 7, &limits).unwrap();
        let spec = RadicalExtensionSpec::new(ring, 0, 2).unwrap();
        let out = check_radical_descent(&spec, &prof, &limits).unwrap();
        assert_eq!(out.len(), 2);
        let descent = out.iter().find(|v| v.check == "radical-descent").unwrap();
        assert_eq!(descent.status, VerdictStatus::Pass);
        assert!(descent.lhs.abs() < 1e-9);
        let scaling = out.iter().find(|v| v.check == "radical-scaling").unwrap();
        assert_eq!(scaling.status, VerdictStatus::Pass, "{:?}", scaling);
        assert!((scaling.lhs - 2.0).abs() < 1e-6);
    }

    #[test]
    fn descent_requires_reduction_membership() {
        let limits = WorkLimits::default();
        let mut ring = plane(5);
        ring.reduction = None;
        let prof = compute_profile(&ring, Some(2), Engine::Groebner, 7, &limits).unwrap();
        let spec = RadicalExtensionSpec::new(ring, 0, 2).unwrap();
        let out = check_radical_descent(&spec, &prof, &limits).unwrap();
        assert_eq!(out[0].status, VerdictStatus::SkippedHypotheses);
    }
}
