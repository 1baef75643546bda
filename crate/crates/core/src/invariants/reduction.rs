use super::ring::RingPresentation;
use crate::config::WorkLimits;
use crate::error::Error;
use crate::ffpoly::MonomialOrder;
use crate::groebner::{CombineKind, IdealPresentation};
use serde::{Deserialize, Serialize};

/// Outcome of certifying `x` as a reduction of `m` and measuring the
/// associated indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionData {
    /// Smallest exponent with `m^(n0+1) = (x) m^n0`.
    pub n0: u32,
    /// Largest `i` with `m^i` not inside `(x)` (0 for regular rings).
    pub r: u32,
    /// Largest `i` with the integral closure of `m^i` not inside `(x)`,
    /// when a monomializable (toric) route exists; `r <= t` always.
    pub t: Option<u32>,
}

/// Certifies that `x_list` is a reduction of `m` in `R`: finds the
/// smallest `n0` within the budget such that
/// `m^(n0+1) = (x) m^n0` as ideals of `R`.
pub fn verify_reduction(
    ring: &RingPresentation,
    x_list: &[crate::ffpoly::Polynomial],
    limits: &WorkLimits,
) -> Result<u32, Error> {
    let d = ring.dimension(limits)?;
    if x_list.len() != d {
        return Err(Error::Validation(format!(
            "reduction must have d = {} elements, got {}",
            d,
            x_list.len()
        )));
    }
    let p = ring.modulus;
    let n = ring.nvars();
    let x_ideal = IdealPresentation::from_gens(p, n, x_list.to_vec());
    let with_relations = |i: &IdealPresentation| -> IdealPresentation {
        IdealPresentation::from_gens(
            p,
            n,
            ring.relations
                .iter()
                .cloned()
                .chain(i.generators().iter().cloned())
                .collect(),
        )
    };
    for n0 in 0..=(limits.reduction_budget as u32) {
        // (x) * m^n0 (m^0 = the unit ideal, so the product is (x)).
        let rhs = if n0 == 0 {
            x_ideal.clone()
        } else {
            x_ideal.combine(
                CombineKind::Product,
                &IdealPresentation::power_of_maximal(p, n, n0),
                limits,
            )?
        };
        let lhs = IdealPresentation::power_of_maximal(p, n, n0 + 1);
        // (x) m^n0 ⊆ m^(n0+1) holds identically; only the reverse
        // containment needs checking, modulo the relations.
        if lhs.contained_in(&with_relations(&rhs), limits)? {
            return Ok(n0);
        }
    }
    Err(Error::ReductionInconclusive(limits.reduction_budget))
}

/// Computes `r` (and `t` when a toric route exists) for a verified
/// reduction. `r` is found by Groebner containment tests
/// `m^i ⊆ (x) + relations`; `t` is computed only for flagged Veronese
/// rings via exact lattice counting, and is otherwise absent (callers
/// substitute `r`, which only weakens the floors it feeds).
pub fn reduction_indices(
    ring: &RingPresentation,
    x_list: &[crate::ffpoly::Polynomial],
    limits: &WorkLimits,
) -> Result<ReductionData, Error> {
    let n0 = verify_reduction(ring, x_list, limits)?;
    let p = ring.modulus;
    let n = ring.nvars();
    let target = IdealPresentation::from_gens(
        p,
        n,
        ring.relations
            .iter()
            .cloned()
            .chain(x_list.iter().cloned())
            .collect(),
    );
    let basis = target.groebner_basis(&MonomialOrder::grevlex(), limits)?;
    let mut r = 0u32;
    // m^(n0+1) = (x) m^n0 ⊆ (x), so the search space is finite.
    for i in 1..=(n0 + 1) {
        let mi = IdealPresentation::power_of_maximal(p, n, i);
        let inside = mi.generators().iter().all(|g| basis.contains(g));
        if !inside {
            r = i;
        } else {
            break;
        }
    }
    let t = match ring.veronese {
        Some(e) if is_corner_reduction(ring, x_list) => Some(veronese_t(e)),
        _ => None,
    };
    if let Some(t) = t {
        debug_assert!(r <= t);
    }
    Ok(ReductionData { n0, r, t })
}

/// For the plane Veronese `V_e`, the presentation orders the semigroup
/// generators as `u_0 = x^e, .., u_e = y^e`; the corner reduction is
/// `(u_0, u_e)`.
fn is_corner_reduction(ring: &RingPresentation, x_list: &[crate::ffpoly::Polynomial]) -> bool {
    if x_list.len() != 2 {
        return false;
    }
    let n = ring.nvars();
    let mut idx: Vec<usize> = Vec::new();
    for g in x_list {
        if !g.is_monomial() || g.terms()[0].0.degree() != 1 || g.terms()[0].1 != 1 {
            return false;
        }
        idx.push(g.terms()[0].0.support().next().unwrap());
    }
    idx.sort_unstable();
    idx == vec![0, n - 1]
}

/// `t` for `V_e` with the corner reduction, by lattice counting: the
/// closure of `m^i` is `{x^u y^v : e | u+v, u+v >= ie}` and the
/// reduction expands to `{u >= e or v >= e}`; nonunit semigroup elements
/// outside the reduction have `u + v = e`, so `t = 1` for every `e >= 2`.
fn veronese_t(e: u32) -> u32 {
    let mut t = 0;
    for u in 0..e {
        for v in 0..e {
            if (u + v) % e != 0 || (u, v) == (0, 0) {
                continue;
            }
            t = t.max((u + v) / e);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{parse_polynomial, Polynomial, PrimeModulus};
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
    fn polynomial_ring_reduction() {
        let p = PrimeModulus::new(5).unwrap();
        let r = RingPresentation::polynomial_ring(p, vec!["x".into(), "y".into()]);
        let vars: Vec<Polynomial> =
            (0..2).map(|v| Polynomial::variable(p, 2, v)).collect();
        let limits = WorkLimits::default();
        assert_eq!(verify_reduction(&r, &vars, &limits).unwrap(), 0);
        let data = reduction_indices(&r, &vars, &limits).unwrap();
        assert_eq!(data.r, 0);
    }

    #[test]
    fn quadric_reduction() {
        // A1 quadric: m^2 = (y, z) m since x^2 = -y^2 - z^2
        let r = quadric(5, &["x", "y", "z"]);
        let p = r.modulus;
        let red = vec![Polynomial::variable(p, 3, 1), Polynomial::variable(p, 3, 2)];
        let limits = WorkLimits::default();
        assert_eq!(verify_reduction(&r, &red, &limits).unwrap(), 1);
        let data = reduction_indices(&r, &red, &limits).unwrap();
        assert_eq!(data.r, 1);
        assert_eq!(data.t, None);
    }

    #[test]
    fn dim3_quadric_reduction() {
        let r = quadric(3, &["x", "y", "z", "w"]);
        let p = r.modulus;
        let red: Vec<Polynomial> = (1..4).map(|v| Polynomial::variable(p, 4, v)).collect();
        let data = reduction_indices(&r, &red, &WorkLimits::default()).unwrap();
        assert_eq!(data.n0, 1);
        assert_eq!(data.r, 1);
    }

    #[test]
    fn wrong_cardinality_fails() {
        let p = PrimeModulus::new(5).unwrap();
        let r = RingPresentation::polynomial_ring(p, vec!["x".into(), "y".into()]);
        let one = vec![Polynomial::variable(p, 2, 0)];
        assert!(matches!(
            verify_reduction(&r, &one, &WorkLimits::default()),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn non_reduction_is_inconclusive() {
        // (x^2, y) generates an m-primary ideal of k[x,y] that is not a
        // reduction of m in any exponent... it actually is one? No:
        // (x^2, y) has multiplicity 2 > 1 = e(m), so m^(n+1) never
        // equals (x^2, y) m^n.
        let p = PrimeModulus::new(5).unwrap();
        let r = RingPresentation::polynomial_ring(p, vec!["x".into(), "y".into()]);
        let names = vec!["x".to_string(), "y".to_string()];
        let gens = vec![
            parse_polynomial("x^2", p, &names).unwrap(),
            parse_polynomial("y", p, &names).unwrap(),
        ];
        assert!(matches!(
            verify_reduction(&r, &gens, &WorkLimits::default()),
            Err(Error::ReductionInconclusive(_))
        ));
    }

    #[test]
    fn veronese_t_is_one() {
        for e in 2..=5 {
            assert_eq!(veronese_t(e), 1);
        }
    }
}
