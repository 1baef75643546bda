use super::order::grevlex;
use super::{ExponentVector, MonomialOrder, PrimeModulus};
use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

/// A multivariate polynomial over `F_p` in canonical form: terms sorted
/// in descending grevlex order, no zero coefficients, no duplicate
/// monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    modulus: PrimeModulus,
    nvars: usize,
    terms: Vec<(ExponentVector, u32)>,
}

impl Polynomial {
    pub fn zero(modulus: PrimeModulus, nvars: usize) -> Self {
        Polynomial { modulus, nvars, terms: Vec::new() }
    }

    pub fn constant(modulus: PrimeModulus, nvars: usize, c: i64) -> Self {
        let c = modulus.reduce_i64(c);
        let mut f = Self::zero(modulus, nvars);
        if c != 0 {
            f.terms.push((ExponentVector::zero(nvars), c));
        }
        f
    }

    pub fn monomial(modulus: PrimeModulus, exp: ExponentVector, c: i64) -> Self {
        let nvars = exp.len();
        let c = modulus.reduce_i64(c);
        let mut f = Self::zero(modulus, nvars);
        if c != 0 {
            f.terms.push((exp, c));
        }
        f
    }

    pub fn variable(modulus: PrimeModulus, nvars: usize, var: usize) -> Self {
        Self::monomial(modulus, ExponentVector::unit(nvars, var), 1)
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms(
        modulus: PrimeModulus,
        nvars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, i64)>,
    ) -> Self {
        let mut map: HashMap<ExponentVector, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            let c = modulus.reduce_i64(c);
            let e = map.entry(m).or_insert(0);
            *e = modulus.add(*e, c);
        }
        let mut terms: Vec<(ExponentVector, u32)> =
            map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by(|(a, _), (b, _)| grevlex(&b.0, &a.0));
        Polynomial { modulus, nvars, terms }
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending grevlex) order.
    pub fn terms(&self) -> &[(ExponentVector, u32)] {
        &self.terms
    }

    pub fn coefficient(&self, m: &ExponentVector) -> u32 {
        self.terms
            .iter()
            .find(|(e, _)| e == m)
            .map(|&(_, c)| c)
            .unwrap_or(0)
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when every term has the same weighted degree.
    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Leading term under an arbitrary order (linear scan; the canonical
    /// storage order is grevlex regardless of `order`).
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&ExponentVector, u32)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.compare(a, b))
            .map(|(m, c)| (m, *c))
    }

    fn check_compat(&self, other: &Self) -> Result<(), Error> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.p(), other.modulus.p()));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let p = self.modulus;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                grevlex(&self.terms[i].0 .0, &other.terms[j].0 .0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    let c = if negate { p.neg(*c) } else { *c };
                    if c != 0 {
                        out.push((m.clone(), c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = other.terms[j].1;
                    let c = if negate { p.sub(*a, b) } else { p.add(*a, b) };
                    if c != 0 {
                        out.push((m.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { modulus: p, nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Self {
        let p = self.modulus;
        Polynomial {
            modulus: p,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), p.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let p = self.modulus;
        let c = p.reduce_i64(c);
        if c == 0 {
            return Self::zero(p, self.nvars);
        }
        Polynomial {
            modulus: p,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), p.mul(*a, c))).collect(),
        }
    }

    /// Multiplies by a single term. Preserves sortedness (orders are
    /// multiplicative), so this is a cheap map.
    pub fn mul_term(&self, m: &ExponentVector, c: u32) -> Self {
        let p = self.modulus;
        if c == 0 {
            return Self::zero(p, self.nvars);
        }
        Polynomial {
            modulus: p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.add(m), p.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        let p = self.modulus;
        let mut map: HashMap<ExponentVector, u32> = HashMap::new();
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &small.terms {
            for (e, a) in &big.terms {
                let key = m.add(e);
                let v = map.entry(key).or_insert(0);
                *v = p.add(*v, p.mul(*c, *a));
            }
        }
        let mut terms: Vec<(ExponentVector, u32)> =
            map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by(|(a, _), (b, _)| grevlex(&b.0, &a.0));
        Ok(Polynomial { modulus: p, nvars: self.nvars, terms })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.modulus, self.nvars, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            e >>= 1;
        }
        acc
    }

    /// `f^q` for `q` a power of the characteristic, computed termwise via
    /// the Frobenius identity `(sum c_i x^a_i)^q = sum c_i^q x^(q a_i)`.
    pub fn frobenius_power(&self, q: u64) -> Result<Self, Error> {
        let p = self.modulus;
        if !p.is_power(q) {
            return Err(Error::NotPowerOfP(q, p.p()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.scale(q as u32), p.pow(*c, q) as i64))
            .collect::<Vec<_>>();
        Ok(Self::from_terms(p, self.nvars, terms))
    }

    /// Renders the polynomial using the given variable names. The output
    /// re-parses to an equal polynomial.
    pub fn to_expression(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_zero() {
                factors.push(c.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => {
                        let mut s = String::new();
                        write!(s, "{}^{}", names[v], e).unwrap();
                        factors.push(s);
                    }
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> PrimeModulus {
        PrimeModulus::new(5).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn freshman_dream() {
        // (x+y)^2 at p=2 -> x^2 + y^2
        let p = PrimeModulus::new(2).unwrap();
        let x = Polynomial::variable(p, 2, 0);
        let y = Polynomial::variable(p, 2, 1);
        let f = x.add(&y).unwrap().pow(2);
        let expect = Polynomial::from_terms(p, 2, vec![(ev(&[2, 0]), 1), (ev(&[0, 2]), 1)]);
        assert_eq!(f, expect);
        assert_eq!(f, x.add(&y).unwrap().frobenius_power(2).unwrap());
    }

    #[test]
    fn cancel_to_zero() {
        let p = p5();
        let f = Polynomial::from_terms(p, 2, vec![(ev(&[2, 0]), 1), (ev(&[1, 1]), 3)]);
        assert!(f.sub(&f).unwrap().is_zero());
        assert!(f.add(&f.scale(-1)).unwrap().is_zero());
    }

    #[test]
    fn mul_identity() {
        let p = p5();
        let f = Polynomial::from_terms(p, 2, vec![(ev(&[2, 1]), 2), (ev(&[0, 0]), 4)]);
        let one = Polynomial::constant(p, 2, 1);
        assert_eq!(f.mul(&one).unwrap(), f);
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let f = Polynomial::constant(p5(), 1, 1);
        let g = Polynomial::constant(PrimeModulus::new(3).unwrap(), 1, 1);
        assert!(matches!(f.add(&g), Err(Error::ModulusMismatch(5, 3))));
    }

    #[test]
    fn leading_term_depends_on_order() {
        let p = p5();
        // f = x + y^3
        let f = Polynomial::from_terms(p, 2, vec![(ev(&[1, 0]), 1), (ev(&[0, 3]), 1)]);
        let (lt, _) = f.leading_term(&MonomialOrder::lex()).unwrap();
        assert_eq!(lt, &ev(&[1, 0]));
        let (lt, _) = f.leading_term(&MonomialOrder::grevlex()).unwrap();
        assert_eq!(lt, &ev(&[0, 3]));
    }
}
