//! Integral closure of monomial ideals via Newton polyhedra, socles of
//! Artinian quotients, and constructive chains of integrally closed
//! ideals.

mod chain;
mod newton;
mod socle;

pub use chain::{closed_chain_length, ChainCertificate};
pub use newton::NewtonRegion;
pub use socle::{socle_ideal, SocleData};

use crate::error::Error;
use crate::ffpoly::{ExponentVector, Polynomial};
use crate::groebner::IdealPresentation;
use crate::hilbert::Staircase;

/// Integral closure of a monomial ideal: the minimal monomial generators
/// of the set of lattice points in the Newton region. Idempotent.
pub fn monomial_closure(i: &IdealPresentation) -> Result<IdealPresentation, Error> {
    let stair = Staircase::new(i.nvars(), i.monomial_exponents()?);
    let closed = monomial_closure_staircase(&stair)?;
    Ok(IdealPresentation::from_gens(
        i.modulus(),
        i.nvars(),
        closed
            .generators()
            .iter()
            .map(|m| Polynomial::monomial(i.modulus(), m.clone(), 1))
            .collect(),
    ))
}

/// True iff the monomial ideal equals its integral closure.
pub fn is_integrally_closed(i: &IdealPresentation) -> Result<bool, Error> {
    let stair = Staircase::new(i.nvars(), i.monomial_exponents()?);
    let closed = monomial_closure_staircase(&stair)?;
    Ok(stair.generators() == closed.generators())
}

/// Staircase-level closure. All minimal generators of the closure lie in
/// the componentwise-max box of the input generators: a region point
/// exceeding the box in coordinate `j` still dominates a convex
/// combination after dropping one unit from coordinate `j`.
pub(crate) fn monomial_closure_staircase(stair: &Staircase) -> Result<Staircase, Error> {
    let n = stair.nvars();
    let gens = stair.generators();
    if gens.is_empty() {
        return Ok(stair.clone());
    }
    let region = NewtonRegion::new(n, gens);
    let mut bound = vec![0u32; n];
    for g in gens {
        for j in 0..n {
            bound[j] = bound[j].max(g.0[j]);
        }
    }
    let mut inside: Vec<ExponentVector> = Vec::new();
    let mut exp = vec![0u32; n];
    loop {
        let m = ExponentVector(exp.clone());
        if region.contains(&m) {
            inside.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(Staircase::new(n, inside));
            }
            exp[i] += 1;
            if exp[i] <= bound[i] {
                break;
            }
            exp[i] = 0;
            i += 1;
        }
    }
}

/// Brute-force integral-dependence oracle: `x^v` is integral over the
/// monomial ideal iff `l * v` dominates a sum of `l` generator exponents
/// for some `l >= 1`. Searches `l <= lmax` by pruned enumeration of
/// generator multisets; used to cross-check the Newton-region closure.
pub fn power_membership_oracle(gens: &[ExponentVector], v: &ExponentVector, lmax: u32) -> bool {
    let n = v.len();
    for l in 1..=lmax {
        let target: Vec<u64> = v.0.iter().map(|&x| x as u64 * l as u64).collect();
        let mut sum = vec![0u64; n];
        if pick(gens, 0, l, &mut sum, &target) {
            return true;
        }
    }
    false
}

fn pick(gens: &[ExponentVector], start: usize, remaining: u32, sum: &mut [u64], target: &[u64]) -> bool {
    if remaining == 0 {
        return true;
    }
    for i in start..gens.len() {
        let mut ok = true;
        for (s, (&g, &t)) in sum.iter().zip(gens[i].0.iter().zip(target)) {
            if s + g as u64 > t {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        for (s, &g) in sum.iter_mut().zip(&gens[i].0) {
            *s += g as u64;
        }
        if pick(gens, i, remaining - 1, sum, target) {
            return true;
        }
        for (s, &g) in sum.iter_mut().zip(&gens[i].0) {
            *s -= g as u64;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::PrimeModulus;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    fn monomial_ideal(p: u64, n: usize, gens: &[&[u32]]) -> IdealPresentation {
        let p = PrimeModulus::new(p).unwrap();
        IdealPresentation::from_gens(
            p,
            n,
            gens.iter()
                .map(|g| Polynomial::monomial(p, ev(g), 1))
                .collect(),
        )
    }

    #[test]
    fn closure_of_cubes() {
        // (x^3, y^3) -> (x^3, x^2 y, x y^2, y^3)
        let i = monomial_ideal(5, 2, &[&[3, 0], &[0, 3]]);
        let c = monomial_closure(&i).unwrap();
        let mut exps = c.monomial_exponents().unwrap();
        exps.sort();
        assert_eq!(exps, vec![ev(&[0, 3]), ev(&[1, 2]), ev(&[2, 1]), ev(&[3, 0])]);
    }

    #[test]
    fn powers_of_m_are_closed() {
        let p = PrimeModulus::new(5).unwrap();
        for k in 1..=4 {
            let i = IdealPresentation::power_of_maximal(p, 2, k);
            assert!(is_integrally_closed(&i).unwrap(), "m^{}", k);
        }
        let i = IdealPresentation::power_of_maximal(p, 3, 2);
        assert!(is_integrally_closed(&i).unwrap());
    }

    #[test]
    fn idempotence() {
        let i = monomial_ideal(5, 2, &[&[3, 0], &[0, 3]]);
        let c1 = monomial_closure(&i).unwrap();
        let c2 = monomial_closure(&c1).unwrap();
        let mut a = c1.monomial_exponents().unwrap();
        let mut b = c2.monomial_exponents().unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn squares_are_not_closed() {
        let i = monomial_ideal(5, 2, &[&[2, 0], &[0, 2]]);
        assert!(!is_integrally_closed(&i).unwrap());
        let c = monomial_closure(&i).unwrap();
        let mut exps = c.monomial_exponents().unwrap();
        exps.sort();
        assert_eq!(exps, vec![ev(&[0, 2]), ev(&[1, 1]), ev(&[2, 0])]);
    }

    #[test]
    fn non_monomial_is_rejected() {
        let p = PrimeModulus::new(5).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let f = crate::ffpoly::parse_polynomial("x^2 + y", p, &names).unwrap();
        let i = IdealPresentation::from_gens(p, 2, vec![f]);
        assert!(matches!(monomial_closure(&i), Err(Error::NotMonomial)));
    }

    #[test]
    fn oracle_confirms_closure_elements() {
        let gens = vec![ev(&[3, 0]), ev(&[0, 3])];
        // x^2 y is in the closure: 3*(2,1) = (6,3) >= (3,0)+(3,0)+(0,3)
        assert!(power_membership_oracle(&gens, &ev(&[2, 1]), 12));
        assert!(power_membership_oracle(&gens, &ev(&[1, 2]), 12));
        assert!(!power_membership_oracle(&gens, &ev(&[1, 1]), 12));
        // every reported closure generator is confirmed
        let i = monomial_ideal(5, 2, &[&[3, 0], &[0, 3]]);
        for m in monomial_closure(&i).unwrap().monomial_exponents().unwrap() {
            assert!(power_membership_oracle(&gens, &m, 12));
        }
    }

    #[test]
    fn radical_extension_instances_are_closed() {
        // (u^i, y) in k[u,y] is integrally closed for 0 <= i <= n.
        for n in 2..=4u32 {
            for i in 0..=n {
                let ideal = if i == 0 {
                    monomial_ideal(5, 2, &[&[0, 0], &[0, 1]])
                } else {
                    monomial_ideal(5, 2, &[&[i, 0], &[0, 1]])
                };
                assert!(is_integrally_closed(&ideal).unwrap(), "n={} i={}", n, i);
            }
        }
    }

    #[test]
    fn monotonicity() {
        // I ⊆ J implies closure(I) ⊆ closure(J)
        let i = monomial_ideal(5, 2, &[&[3, 0], &[0, 3]]);
        let j = monomial_ideal(5, 2, &[&[2, 0], &[0, 2]]);
        let ci = Staircase::new(2, monomial_closure(&i).unwrap().monomial_exponents().unwrap());
        let cj = Staircase::new(2, monomial_closure(&j).unwrap().monomial_exponents().unwrap());
        for g in ci.generators() {
            assert!(cj.contains(g));
        }
    }
}
