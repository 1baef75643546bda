use super::socle::socle_monomials;
use super::{is_integrally_closed, monomial_closure_staircase};
use crate::error::Error;
use crate::ffpoly::{ExponentVector, MonomialOrder, Polynomial};
use crate::groebner::IdealPresentation;
use crate::hilbert::Staircase;

/// A verified chain `J = K_0 ⊂ K_1 ⊂ … ⊂ K_m = I` of integrally closed
/// monomial ideals, with the socle witness adjoined at each step.
///
/// The length is a constructive *lower* bound for the longest such
/// chain: the builder is greedy, not exhaustive.
#[derive(Debug, Clone)]
pub struct ChainCertificate {
    pub chain: Vec<IdealPresentation>,
    pub witnesses: Vec<ExponentVector>,
    pub length: usize,
}

impl ChainCertificate {
    /// Re-checks everything the certificate claims: every member is an
    /// integrally closed monomial ideal, inclusions are strict, and each
    /// witness lies in `K_{j+1} ∩ Soc(K_j)`.
    pub fn validate(&self) -> Result<(), Error> {
        if self.chain.is_empty() {
            return Err(Error::Validation("empty chain".into()));
        }
        if self.witnesses.len() + 1 != self.chain.len() || self.length + 1 != self.chain.len() {
            return Err(Error::Validation("chain bookkeeping mismatch".into()));
        }
        let stairs: Vec<Staircase> = self
            .chain
            .iter()
            .map(|k| Ok(Staircase::new(k.nvars(), k.monomial_exponents()?)))
            .collect::<Result<_, Error>>()?;
        for (j, k) in self.chain.iter().enumerate() {
            if !is_integrally_closed(k)? {
                return Err(Error::Validation(format!("chain member {} is not closed", j)));
            }
        }
        let n = self.chain[0].nvars();
        for j in 0..self.witnesses.len() {
            let (lo, hi) = (&stairs[j], &stairs[j + 1]);
            // K_j ⊂ K_{j+1} strictly.
            if !lo.generators().iter().all(|g| hi.contains(g)) {
                return Err(Error::Validation(format!("inclusion {} fails", j)));
            }
            if lo.generators() == hi.generators() {
                return Err(Error::Validation(format!("inclusion {} is not strict", j)));
            }
            let u = &self.witnesses[j];
            if lo.contains(u) || !hi.contains(u) {
                return Err(Error::Validation(format!("witness {} misplaced", j)));
            }
            for v in 0..n {
                if !lo.contains(&u.add(&ExponentVector::unit(n, v))) {
                    return Err(Error::Validation(format!("witness {} not in socle", j)));
                }
            }
        }
        Ok(())
    }
}

/// Builds a chain of integrally closed ideals from `j` up to `i` by
/// greedy socle adjunction: at each step every socle monomial of the
/// current ideal lying in `i` is tried, the closure of the enlarged
/// ideal is taken, and the candidate absorbing the most colength is
/// kept (ties broken toward the grevlex-smallest witness).
pub fn closed_chain_length(
    j: &IdealPresentation,
    i: &IdealPresentation,
    ) -> Result<ChainCertificate, Error> {
    let n = j.nvars();
    let p = j.modulus();
    if i.nvars() != n {
        return Err(Error::VariableCountMismatch(n, i.nvars()));
    }
    if !j.is_monomial() || !i.is_monomial() {
        return Err(Error::NotMonomial);
    }
    if !is_integrally_closed(j)? || !is_integrally_closed(i)? {
        return Err(Error::Hypotheses("both endpoints must be integrally closed".into()));
    }
    let top = Staircase::new(n, i.monomial_exponents()?);
    let mut cur = Staircase::new(n, j.monomial_exponents()?);
    if !cur.generators().iter().all(|g| top.contains(g)) {
        return Err(Error::Hypotheses("lower ideal is not contained in the upper one".into()));
    }
    let to_ideal = |s: &Staircase| -> IdealPresentation {
        IdealPresentation::from_gens(
            p,
            n,
            s.generators()
                .iter()
                .map(|m| Polynomial::monomial(p, m.clone(), 1))
                .collect(),
        )
    };
    let mut chain = vec![to_ideal(&cur)];
    let mut witnesses = Vec::new();
    if cur.generators() == top.generators() {
        return Ok(ChainCertificate { chain, witnesses, length: 0 });
    }
    cur.colength().map_err(|_| {
        Error::Hypotheses("quotient I/J must have finite length (J m-primary)".into())
    })?;

    let order = MonomialOrder::grevlex();
    loop {
        if cur.generators() == top.generators() {
            break;
        }
        let candidates: Vec<ExponentVector> = socle_monomials(&cur)
            .into_iter()
            .filter(|u| top.contains(u))
            .collect();
        if candidates.is_empty() {
            return Err(Error::Data("no socle witness available; chain stuck".into()));
        }
        let before = cur.colength()?;
        let mut best: Option<(u64, ExponentVector, Staircase)> = None;
        for u in candidates {
            let mut gens = cur.generators().to_vec();
            gens.push(u.clone());
            let closed = monomial_closure_staircase(&Staircase::new(n, gens))?;
            debug_assert!(closed.generators().iter().all(|g| top.contains(g)));
            let drop = before - closed.colength()?;
            let better = match &best {
                None => true,
                Some((bd, bu, _)) => {
                    drop > *bd
                        || (drop == *bd && order.compare(&u, bu) == std::cmp::Ordering::Less)
                }
            };
            if better {
                best = Some((drop, u, closed));
            }
        }
        let (_, u, next) = best.unwrap();
        witnesses.push(u);
        cur = next;
        chain.push(to_ideal(&cur));
    }
    let length = chain.len() - 1;
    Ok(ChainCertificate { chain, witnesses, length })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::PrimeModulus;

    fn m_power(p: u64, n: usize, k: u32) -> IdealPresentation {
        let p = PrimeModulus::new(p).unwrap();
        if k == 1 {
            IdealPresentation::maximal_ideal(p, n)
        } else {
            IdealPresentation::power_of_maximal(p, n, k)
        }
    }

    #[test]
    fn trivial_chain() {
        let m = m_power(5, 2, 1);
        let cert = closed_chain_length(&m, &m).unwrap();
        assert_eq!(cert.length, 0);
        cert.validate().unwrap();
    }

    #[test]
    fn m2_to_m() {
        let cert = closed_chain_length(&m_power(5, 2, 2), &m_power(5, 2, 1)).unwrap();
        assert_eq!(cert.length, 2);
        cert.validate().unwrap();
    }

    #[test]
    fn m3_to_m() {
        let cert = closed_chain_length(&m_power(5, 2, 3), &m_power(5, 2, 1)).unwrap();
        assert_eq!(cert.length, 4);
        cert.validate().unwrap();
    }

    #[test]
    fn rejects_non_closed_endpoint() {
        let p = PrimeModulus::new(5).unwrap();
        let bad = IdealPresentation::from_gens(
            p,
            2,
            vec![
                Polynomial::monomial(p, ExponentVector(vec![2, 0]), 1),
                Polynomial::monomial(p, ExponentVector(vec![0, 2]), 1),
            ],
        );
        assert!(matches!(
            closed_chain_length(&bad, &m_power(5, 2, 1)),
            Err(Error::Hypotheses(_))
        ));
    }
}
