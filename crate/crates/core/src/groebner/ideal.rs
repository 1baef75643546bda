use super::basis::ReducedBasis;
use crate::config::WorkLimits;
use crate::error::Error;
use crate::ffpoly::{ExponentVector, MonomialOrder, Polynomial, PrimeModulus};
use serde::{Deserialize, Serialize};

/// How to combine two ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CombineKind {
    Sum,
    Product,
    Intersection,
}

/// An ideal of the ambient polynomial ring `F_p[x_1..x_n]`, given by a
/// finite generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealPresentation {
    modulus: PrimeModulus,
    nvars: usize,
    generators: Vec<Polynomial>,
    homogeneous: bool,
}

impl IdealPresentation {
    /// Builds an ideal presentation, dropping zero generators. When
    /// `homogeneous_weights` is given, every generator is verified to be
    /// homogeneous under those weights.
    pub fn new(
        modulus: PrimeModulus,
        nvars: usize,
        generators: Vec<Polynomial>,
        homogeneous_weights: Option<&[u32]>,
    ) -> Result<Self, Error> {
        let generators: Vec<Polynomial> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.p(), g.modulus().p()));
            }
            if g.nvars() != nvars {
                return Err(Error::VariableCountMismatch(nvars, g.nvars()));
            }
        }
        let homogeneous = match homogeneous_weights {
            Some(w) => {
                for g in &generators {
                    if !g.is_homogeneous(w) {
                        return Err(Error::Validation(format!(
                            "generator `{:?}` is not homogeneous under the declared weights",
                            g
                        )));
                    }
                }
                true
            }
            None => false,
        };
        Ok(IdealPresentation { modulus, nvars, generators, homogeneous })
    }

    pub fn from_gens(modulus: PrimeModulus, nvars: usize, generators: Vec<Polynomial>) -> Self {
        Self::new(modulus, nvars, generators, None).expect("validated by callers")
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.is_monomial())
    }

    /// Monomial generator exponents, when every generator is a monomial.
    pub fn monomial_exponents(&self) -> Result<Vec<ExponentVector>, Error> {
        self.generators
            .iter()
            .map(|g| {
                if g.is_monomial() {
                    Ok(g.terms()[0].0.clone())
                } else {
                    Err(Error::NotMonomial)
                }
            })
            .collect()
    }

    /// The maximal ideal `(x_1, .., x_n)` of the ambient ring.
    pub fn maximal_ideal(modulus: PrimeModulus, nvars: usize) -> Self {
        let gens = (0..nvars)
            .map(|v| Polynomial::variable(modulus, nvars, v))
            .collect();
        IdealPresentation { modulus, nvars, generators: gens, homogeneous: true }
    }

    /// All monomials of total degree `k` — the generators of `m^k`.
    pub fn power_of_maximal(modulus: PrimeModulus, nvars: usize, k: u32) -> Self {
        let mut gens = Vec::new();
        let mut exp = vec![0u32; nvars];
        fill_degree(&mut gens, &mut exp, 0, k, nvars, modulus);
        IdealPresentation { modulus, nvars, generators: gens, homogeneous: true }
    }

    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        limits: &WorkLimits,
    ) -> Result<ReducedBasis, Error> {
        ReducedBasis::compute(&self.generators, self.modulus, self.nvars, order, limits)
    }

    /// Sum, product, or intersection of two ideals in the same ring.
    /// Intersection goes through tag-variable elimination:
    /// `I ∩ J = (t·I + (1−t)·J) ∩ F_p[x]`.
    pub fn combine(
        &self,
        kind: CombineKind,
        other: &IdealPresentation,
        limits: &WorkLimits,
    ) -> Result<IdealPresentation, Error> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.p(), other.modulus.p()));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, other.nvars));
        }
        match kind {
            CombineKind::Sum => {
                let mut gens = self.generators.clone();
                gens.extend(other.generators.iter().cloned());
                Ok(IdealPresentation {
                    modulus: self.modulus,
                    nvars: self.nvars,
                    generators: gens,
                    homogeneous: self.homogeneous && other.homogeneous,
                })
            }
            CombineKind::Product => {
                let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
                for f in &self.generators {
                    for g in &other.generators {
                        gens.push(f.mul(g)?);
                    }
                }
                Ok(IdealPresentation {
                    modulus: self.modulus,
                    nvars: self.nvars,
                    generators: gens,
                    homogeneous: self.homogeneous && other.homogeneous,
                })
            }
            CombineKind::Intersection => self.intersection(other, limits),
        }
    }

    fn intersection(
        &self,
        other: &IdealPresentation,
        limits: &WorkLimits,
    ) -> Result<IdealPresentation, Error> {
        let p = self.modulus;
        let n = self.nvars;
        // Tag variable t goes in front; eliminate it with a block order.
        let t = Polynomial::variable(p, n + 1, 0);
        let one_minus_t = Polynomial::constant(p, n + 1, 1).sub(&t)?;
        let mut gens = Vec::new();
        for f in &self.generators {
            gens.push(t.mul(&extend_front(f))?);
        }
        for g in &other.generators {
            gens.push(one_minus_t.mul(&extend_front(g))?);
        }
        let order = MonomialOrder::elimination(1);
        let basis = ReducedBasis::compute(&gens, p, n + 1, &order, limits)?;
        let kept: Vec<Polynomial> = basis
            .elements()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.0[0] == 0))
            .map(restrict_front)
            .collect();
        Ok(IdealPresentation { modulus: p, nvars: n, generators: kept, homogeneous: false })
    }

    /// Colon ideal `(I : f) = { g : g·f ∈ I }`, computed as
    /// `(I ∩ (f)) / f`.
    pub fn colon(&self, f: &Polynomial, limits: &WorkLimits) -> Result<IdealPresentation, Error> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let principal = IdealPresentation {
            modulus: self.modulus,
            nvars: self.nvars,
            generators: vec![f.clone()],
            homogeneous: false,
        };
        let meet = self.intersection(&principal, limits)?;
        // Every generator of I ∩ (f) is divisible by f; divide exactly.
        let order = MonomialOrder::grevlex();
        let f_basis =
            ReducedBasis::compute(std::slice::from_ref(f), self.modulus, self.nvars, &order, limits)?;
        let mut gens = Vec::new();
        for g in meet.generators {
            gens.push(divide_exact(&g, f, &f_basis)?);
        }
        Ok(IdealPresentation {
            modulus: self.modulus,
            nvars: self.nvars,
            generators: gens,
            homogeneous: false,
        })
    }

    /// Colon by an ideal: `(I : J) = ∩_g (I : g)` over the generators of `J`.
    pub fn colon_ideal(
        &self,
        other: &IdealPresentation,
        limits: &WorkLimits,
    ) -> Result<IdealPresentation, Error> {
        let mut acc: Option<IdealPresentation> = None;
        for g in &other.generators {
            let c = self.colon(g, limits)?;
            acc = Some(match acc {
                None => c,
                Some(prev) => prev.combine(CombineKind::Intersection, &c, limits)?,
            });
        }
        acc.ok_or(Error::ZeroPolynomial)
    }

    /// Frobenius bracket power `I^[q]`: the ideal generated by `g^q` for
    /// each generator `g`. Requires `q` to be a power of `p`.
    pub fn bracket_power(&self, q: u64) -> Result<IdealPresentation, Error> {
        if !self.modulus.is_power(q) {
            return Err(Error::NotPowerOfP(q, self.modulus.p()));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.frobenius_power(q))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealPresentation {
            modulus: self.modulus,
            nvars: self.nvars,
            generators: gens,
            homogeneous: self.homogeneous,
        })
    }

    /// Ideal equality via mutual normal forms.
    pub fn equals(&self, other: &IdealPresentation, limits: &WorkLimits) -> Result<bool, Error> {
        let order = MonomialOrder::grevlex();
        let ba = self.groebner_basis(&order, limits)?;
        let bb = other.groebner_basis(&order, limits)?;
        Ok(self.generators.iter().all(|g| bb.contains(g))
            && other.generators.iter().all(|g| ba.contains(g)))
    }

    /// Containment `self ⊆ other` via normal forms.
    pub fn contained_in(
        &self,
        other: &IdealPresentation,
        limits: &WorkLimits,
    ) -> Result<bool, Error> {
        let order = MonomialOrder::grevlex();
        let bb = other.groebner_basis(&order, limits)?;
        Ok(self.generators.iter().all(|g| bb.contains(g)))
    }
}

fn fill_degree(
    gens: &mut Vec<Polynomial>,
    exp: &mut Vec<u32>,
    var: usize,
    remaining: u32,
    nvars: usize,
    modulus: PrimeModulus,
) {
    if var == nvars - 1 {
        exp[var] = remaining;
        gens.push(Polynomial::monomial(modulus, ExponentVector(exp.clone()), 1));
        exp[var] = 0;
        return;
    }
    for e in 0..=remaining {
        exp[var] = e;
        fill_degree(gens, exp, var + 1, remaining - e, nvars, modulus);
    }
    exp[var] = 0;
}

/// Re-embeds a polynomial with a fresh variable prepended at index 0.
pub(crate) fn extend_front(f: &Polynomial) -> Polynomial {
    let terms = f.terms().iter().map(|(m, c)| {
        let mut e = Vec::with_capacity(m.len() + 1);
        e.push(0);
        e.extend_from_slice(&m.0);
        (ExponentVector(e), *c as i64)
    });
    Polynomial::from_terms(f.modulus(), f.nvars() + 1, terms.collect::<Vec<_>>())
}

/// Drops the first variable (which must not occur).
pub(crate) fn restrict_front(f: &Polynomial) -> Polynomial {
    let terms = f.terms().iter().map(|(m, c)| {
        debug_assert_eq!(m.0[0], 0);
        (ExponentVector(m.0[1..].to_vec()), *c as i64)
    });
    Polynomial::from_terms(f.modulus(), f.nvars() - 1, terms.collect::<Vec<_>>())
}

/// Exact division `g / f`, verified by multiplying back is unnecessary:
/// we reduce `g` by the single-element basis `{f}` and demand remainder
/// zero, collecting the quotient along the way.
fn divide_exact(
    g: &Polynomial,
    f: &Polynomial,
    f_basis: &ReducedBasis,
) -> Result<Polynomial, Error> {
    // Quotient via repeated leading-term division. Since g ∈ (f), the
    // remainder must vanish.
    let p = g.modulus();
    let order = MonomialOrder::grevlex();
    let mut rem = g.clone();
    let mut quotient = Polynomial::zero(p, g.nvars());
    let (flm, flc) = f.leading_term(&order).map(|(m, c)| (m.clone(), c)).unwrap();
    let flc_inv = p.inv(flc);
    while !rem.is_zero() {
        let (lm, lc) = rem.leading_term(&order).map(|(m, c)| (m.clone(), c)).unwrap();
        let shift = lm.checked_sub(&flm).map_err(|_| {
            Error::Data("colon witness not divisible by f".into())
        })?;
        let c = p.mul(lc, flc_inv);
        let qterm = Polynomial::monomial(p, shift, c as i64);
        quotient = quotient.add(&qterm)?;
        rem = rem.sub(&qterm.mul(f)?)?;
    }
    debug_assert!(f_basis.contains(g));
    Ok(quotient)
}
