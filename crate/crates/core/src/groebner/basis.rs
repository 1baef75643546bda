use crate::config::WorkLimits;
use crate::error::Error;
use crate::ffpoly::{ExponentVector, MonomialOrder, Polynomial, PrimeModulus};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashSet;

/// A polynomial kept sorted in descending order under the *active*
/// monomial order (which may differ from the canonical grevlex storage
/// order of [`Polynomial`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct OrdPoly {
    pub terms: Vec<(ExponentVector, u32)>,
}

impl OrdPoly {
    pub fn from_poly(f: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(ExponentVector, u32)> = f.terms().to_vec();
        terms.sort_by(|(a, _), (b, _)| order.compare(b, a));
        OrdPoly { terms }
    }

    pub fn into_poly(self, modulus: PrimeModulus, nvars: usize) -> Polynomial {
        Polynomial::from_terms(modulus, nvars, self.terms.into_iter().map(|(m, c)| (m, c as i64)))
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn leading(&self) -> &(ExponentVector, u32) {
        &self.terms[0]
    }

    /// `self - c * x^shift * g`, both operands sorted under `order`.
    fn sub_mul(
        &self,
        c: u32,
        shift: &ExponentVector,
        g: &OrdPoly,
        order: &MonomialOrder,
        p: PrimeModulus,
    ) -> OrdPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < g.terms.len() {
            if i == self.terms.len() {
                let (m, a) = &g.terms[j];
                let v = p.neg(p.mul(c, *a));
                if v != 0 {
                    out.push((m.add(shift), v));
                }
                j += 1;
                continue;
            }
            if j == g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let gm = g.terms[j].0.add(shift);
            match order.compare(&self.terms[i].0, &gm) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = p.neg(p.mul(c, g.terms[j].1));
                    if v != 0 {
                        out.push((gm, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = p.sub(self.terms[i].1, p.mul(c, g.terms[j].1));
                    if v != 0 {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        OrdPoly { terms: out }
    }

    fn monic(mut self, p: PrimeModulus) -> OrdPoly {
        if let Some(&(_, lc)) = self.terms.first() {
            if lc != 1 {
                let inv = p.inv(lc);
                for (_, c) in &mut self.terms {
                    *c = p.mul(*c, inv);
                }
            }
        }
        self
    }
}

/// Fully reduces `f` against `basis` (monic, sorted under `order`),
/// returning the remainder: no remaining term is divisible by any
/// leading term of the basis.
pub(crate) fn reduce_full(
    mut f: OrdPoly,
    basis: &[OrdPoly],
    order: &MonomialOrder,
    p: PrimeModulus,
) -> OrdPoly {
    let mut remainder: Vec<(ExponentVector, u32)> = Vec::new();
    'outer: while !f.is_zero() {
        let (lm, lc) = f.leading().clone();
        for g in basis {
            let (gm, _) = g.leading();
            if gm.divides(&lm) {
                let shift = lm.checked_sub(gm).expect("divisibility checked");
                f = f.sub_mul(lc, &shift, g, order, p);
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder.
        remainder.push((lm, lc));
        f.terms.remove(0);
    }
    OrdPoly { terms: remainder }
}

/// Work statistics recorded while constructing a basis.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct BasisStats {
    pub pairs_considered: usize,
    pub pairs_reduced: usize,
    pub pairs_skipped_coprime: usize,
    pub pairs_skipped_chain: usize,
    pub zero_reductions: usize,
    pub basis_size_peak: usize,
}

/// A reduced Groebner basis: pairwise interreduced, monic, deterministic.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    modulus: PrimeModulus,
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    ordered: Vec<OrdPoly>,
    leading: Vec<ExponentVector>,
    stats: BasisStats,
}

impl ReducedBasis {
    /// Runs Buchberger with the normal (sugar-free) pair-selection
    /// strategy and both classical criteria, then interreduces.
    pub fn compute(
        generators: &[Polynomial],
        modulus: PrimeModulus,
        nvars: usize,
        order: &MonomialOrder,
        limits: &WorkLimits,
    ) -> Result<ReducedBasis, Error> {
        let p = modulus;
        let mut stats = BasisStats::default();

        // Deterministic preprocessing: canonical sort, dedupe, drop zeros.
        let mut gens: Vec<OrdPoly> = generators
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| OrdPoly::from_poly(f, order).monic(p))
            .collect();
        gens.sort_by(|a, b| compare_polys(a, b, order));
        gens.dedup();

        let mut basis: Vec<OrdPoly> = Vec::new();
        // Pending S-pairs (i, j) with i < j, keyed by their lcm.
        let mut pairs: Vec<(ExponentVector, usize, usize)> = Vec::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();

        let push_element =
            |g: OrdPoly,
             basis: &mut Vec<OrdPoly>,
             pairs: &mut Vec<(ExponentVector, usize, usize)>,
             pending: &mut HashSet<(usize, usize)>,
             stats: &mut BasisStats|
             -> Result<(), Error> {
                let k = basis.len();
                for i in 0..k {
                    let lcm = basis[i].leading().0.lcm(&g.leading().0);
                    pairs.push((lcm, i, k));
                    pending.insert((i, k));
                }
                basis.push(g);
                stats.basis_size_peak = stats.basis_size_peak.max(basis.len());
                if basis.len() > limits.max_basis {
                    return Err(Error::WorkLimit(format!(
                        "basis size exceeded {}",
                        limits.max_basis
                    )));
                }
                Ok(())
            };

        for g in gens {
            let r = reduce_full(g, &basis, order, p);
            if !r.is_zero() {
                push_element(r.monic(p), &mut basis, &mut pairs, &mut pending, &mut stats)?;
            }
        }

        while !pairs.is_empty() {
            stats.pairs_considered += 1;
            if stats.pairs_considered > limits.pair_budget {
                return Err(Error::WorkLimit(format!(
                    "S-pair budget exceeded {}",
                    limits.pair_budget
                )));
            }
            // Normal strategy: smallest lcm under the active order.
            let best = pairs
                .iter()
                .enumerate()
                .min_by(|(_, (la, ia, ja)), (_, (lb, ib, jb))| {
                    order.compare(la, lb).then(ia.cmp(ib)).then(ja.cmp(jb))
                })
                .map(|(idx, _)| idx)
                .unwrap();
            let (lcm, i, j) = pairs.swap_remove(best);
            pending.remove(&(i, j));

            let (lmi, _) = basis[i].leading();
            let (lmj, _) = basis[j].leading();
            // Buchberger's first criterion: coprime leading terms.
            if lmi.coprime(lmj) {
                stats.pairs_skipped_coprime += 1;
                continue;
            }
            // Chain criterion: some k divides the lcm and both flanking
            // pairs are no longer pending.
            let mut chained = false;
            for k in 0..basis.len() {
                if k == i || k == j {
                    continue;
                }
                if basis[k].leading().0.divides(&lcm)
                    && !pending.contains(&key(i, k))
                    && !pending.contains(&key(j, k))
                {
                    chained = true;
                    break;
                }
            }
            if chained {
                stats.pairs_skipped_chain += 1;
                continue;
            }

            stats.pairs_reduced += 1;
            let si = lcm.checked_sub(lmi).unwrap();
            let sj = lcm.checked_sub(lmj).unwrap();
            // Both elements are monic, so the S-polynomial is
            // x^si * g_i - x^sj * g_j.
            let zero = OrdPoly { terms: Vec::new() };
            let spoly = zero
                .sub_mul(p.neg(1), &si, &basis[i], order, p)
                .sub_mul(1, &sj, &basis[j], order, p);
            let r = reduce_full(spoly, &basis, order, p);
            if r.is_zero() {
                stats.zero_reductions += 1;
            } else {
                push_element(r.monic(p), &mut basis, &mut pairs, &mut pending, &mut stats)?;
            }
        }

        // Minimalize: drop elements whose leading term is divisible by
        // another leading term.
        let mut keep: Vec<bool> = vec![true; basis.len()];
        for a in 0..basis.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..basis.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if basis[b].leading().0.divides(&basis[a].leading().0) {
                    // Prefer keeping the earlier/smaller element on ties.
                    if basis[a].leading().0 == basis[b].leading().0 && a < b {
                        keep[b] = false;
                    } else {
                        keep[a] = false;
                        break;
                    }
                }
            }
        }
        let minimal: Vec<OrdPoly> = basis
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(g, _)| g)
            .collect();

        // Interreduce tails: fully reduce each element against the others.
        let mut reduced: Vec<OrdPoly> = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<OrdPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce_full(minimal[i].clone(), &others, order, p).monic(p);
            debug_assert!(!r.is_zero());
            reduced.push(r);
        }
        reduced.sort_by(|a, b| compare_polys(a, b, order));

        let leading: Vec<ExponentVector> =
            reduced.iter().map(|g| g.leading().0.clone()).collect();
        let elements: Vec<Polynomial> = reduced
            .iter()
            .map(|g| g.clone().into_poly(p, nvars))
            .collect();
        Ok(ReducedBasis {
            modulus: p,
            nvars,
            order: order.clone(),
            elements,
            ordered: reduced,
            leading,
            stats,
        })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements in canonical form, monic, deterministically sorted.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// Leading monomials; for a reduced basis these are exactly the
    /// minimal generators of the leading-term ideal.
    pub fn leading_terms(&self) -> &[ExponentVector] {
        &self.leading
    }

    pub fn stats(&self) -> &BasisStats {
        &self.stats
    }

    /// True when every basis element is a monomial.
    pub fn is_monomial(&self) -> bool {
        self.elements.iter().all(|g| g.is_monomial())
    }

    /// Fully reduced normal form of `f` modulo the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let r = reduce_full(
            OrdPoly::from_poly(f, &self.order),
            &self.ordered,
            &self.order,
            self.modulus,
        );
        r.into_poly(self.modulus, self.nvars)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Is this the unit ideal?
    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(|m| m.is_zero())
    }

    /// Post-construction audit: every S-polynomial of the basis reduces
    /// to zero.
    pub fn audit(&self) -> bool {
        let p = self.modulus;
        for i in 0..self.ordered.len() {
            for j in i + 1..self.ordered.len() {
                let lmi = &self.ordered[i].leading().0;
                let lmj = &self.ordered[j].leading().0;
                let lcm = lmi.lcm(lmj);
                let si = lcm.checked_sub(lmi).unwrap();
                let sj = lcm.checked_sub(lmj).unwrap();
                let zero = OrdPoly { terms: Vec::new() };
                let spoly = zero
                    .sub_mul(p.neg(1), &si, &self.ordered[i], &self.order, p)
                    .sub_mul(1, &sj, &self.ordered[j], &self.order, p);
                if !reduce_full(spoly, &self.ordered, &self.order, p).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn compare_polys(a: &OrdPoly, b: &OrdPoly, order: &MonomialOrder) -> Ordering {
    for ((ma, ca), (mb, cb)) in a.terms.iter().zip(&b.terms) {
        match order.compare(ma, mb).then(ca.cmp(cb)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.terms.len().cmp(&b.terms.len())
}
