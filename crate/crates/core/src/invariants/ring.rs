use crate::config::WorkLimits;
use crate::error::Error;
use crate::ffpoly::{MonomialOrder, Polynomial, PrimeModulus};
use crate::groebner::IdealPresentation;
use crate::hilbert::Staircase;
use serde::{Deserialize, Serialize};

/// Ring-theoretic hypotheses carried as validated-or-asserted flags;
/// the bounds module gates every inequality on them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFlags {
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub normal: bool,
    pub unmixed: bool,
}

/// Which colength engine to use for Hilbert-Kunz samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Engine {
    Groebner,
    Linalg,
    Toric,
    Auto,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "groebner" => Ok(Engine::Groebner),
            "linalg" => Ok(Engine::Linalg),
            "toric" => Ok(Engine::Toric),
            "auto" => Ok(Engine::Auto),
            other => Err(Error::Validation(format!("unknown engine `{}`", other))),
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Engine::Groebner => "groebner",
            Engine::Linalg => "linalg",
            Engine::Toric => "toric",
            Engine::Auto => "auto",
        };
        f.write_str(s)
    }
}

/// A graded ring `R = F_p[x_1..x_n] / (relations)` with the irrelevant
/// maximal ideal, optional declared reduction, and class flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingPresentation {
    pub name: String,
    pub modulus: PrimeModulus,
    pub variables: Vec<String>,
    pub relations: Vec<Polynomial>,
    /// Grading weights per variable; all ones for the standard grading.
    pub weights: Vec<u32>,
    /// Declared reduction elements `x = (x_1..x_d)` of `m`, if any.
    pub reduction: Option<Vec<Polynomial>>,
    /// Veronese degree `e` when the ring is (a presentation of) the
    /// plane Veronese subring `k[x,y]^(e)`; enables the lattice engine.
    pub veronese: Option<u32>,
    pub flags: RingFlags,
}

impl RingPresentation {
    pub fn new(
        name: String,
        modulus: PrimeModulus,
        variables: Vec<String>,
        relations: Vec<Polynomial>,
        weights: Option<Vec<u32>>,
        reduction: Option<Vec<Polynomial>>,
        veronese: Option<u32>,
        flags: RingFlags,
    ) -> Result<Self, Error> {
        let n = variables.len();
        let weights = weights.unwrap_or_else(|| vec![1; n]);
        if weights.len() != n {
            return Err(Error::VariableCountMismatch(weights.len(), n));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Validation("grading weights must be positive".into()));
        }
        for rel in &relations {
            if rel.nvars() != n {
                return Err(Error::VariableCountMismatch(rel.nvars(), n));
            }
            if rel.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.p(), rel.modulus().p()));
            }
            if !rel.is_homogeneous(&weights) {
                return Err(Error::Validation(format!(
                    "relation `{}` is not homogeneous under the declared weights",
                    rel.to_expression(&variables)
                )));
            }
        }
        if let Some(e) = veronese {
            if e < 2 {
                return Err(Error::Validation("veronese degree must be at least 2".into()));
            }
        }
        Ok(RingPresentation {
            name,
            modulus,
            variables,
            relations,
            weights,
            reduction,
            veronese,
            flags,
        })
    }

    /// Polynomial ring shortcut: no relations, standard grading.
    pub fn polynomial_ring(modulus: PrimeModulus, variables: Vec<String>) -> Self {
        let n = variables.len();
        let vars: Vec<Polynomial> = (0..n)
            .map(|v| Polynomial::variable(modulus, n, v))
            .collect();
        RingPresentation {
            name: format!("k[{}]", variables.join(",")),
            modulus,
            variables,
            relations: Vec::new(),
            weights: vec![1; n],
            reduction: Some(vars),
            veronese: None,
            flags: RingFlags {
                cohen_macaulay: true,
                gorenstein: true,
                normal: true,
                unmixed: true,
            },
        }
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// Embedding dimension: the ambient variable count (presentations
    /// are assumed minimal).
    pub fn embedding_dim(&self) -> usize {
        self.nvars()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.relations.len() == 1
    }

    /// Regular means no relations here: the desk models are either
    /// polynomial rings or genuinely singular quotients.
    pub fn is_regular(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn has_standard_grading(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// The irrelevant maximal ideal `(x_1..x_n)` of the ambient ring.
    pub fn maximal_ideal(&self) -> IdealPresentation {
        IdealPresentation::maximal_ideal(self.modulus, self.nvars())
    }

    /// The relations as an ideal of the ambient ring.
    pub fn relation_ideal(&self) -> IdealPresentation {
        IdealPresentation::from_gens(self.modulus, self.nvars(), self.relations.clone())
    }

    /// The staircase of the leading ideal of the relations.
    pub fn leading_staircase(&self, limits: &WorkLimits) -> Result<Staircase, Error> {
        let basis = self
            .relation_ideal()
            .groebner_basis(&MonomialOrder::grevlex(), limits)?;
        Ok(Staircase::new(self.nvars(), basis.leading_terms().to_vec()))
    }

    /// Krull dimension of `R`.
    pub fn dimension(&self, limits: &WorkLimits) -> Result<usize, Error> {
        Ok(self.leading_staircase(limits)?.krull_dimension())
    }

    /// `l(R/(J + relations))` by Groebner staircase counting.
    pub fn quotient_length(
        &self,
        j: &IdealPresentation,
        limits: &WorkLimits,
    ) -> Result<u64, Error> {
        let full = IdealPresentation::from_gens(
            self.modulus,
            self.nvars(),
            self.relations
                .iter()
                .cloned()
                .chain(j.generators().iter().cloned())
                .collect(),
        );
        let basis = full.groebner_basis(&MonomialOrder::grevlex(), limits)?;
        if basis.is_unit_ideal() {
            return Ok(0);
        }
        Staircase::new(self.nvars(), basis.leading_terms().to_vec()).colength()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_polynomial;

    pub(crate) fn quadric(p: u64, vars: &[&str]) -> RingPresentation {
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
    fn polynomial_ring_basics() {
        let p = PrimeModulus::new(5).unwrap();
        let r = RingPresentation::polynomial_ring(p, vec!["x".into(), "y".into()]);
        let limits = WorkLimits::default();
        assert_eq!(r.dimension(&limits).unwrap(), 2);
        assert!(r.is_regular());
        assert!(!r.is_hypersurface());
    }

    #[test]
    fn quadric_dimension() {
        let r = quadric(5, &["x", "y", "z"]);
        assert_eq!(r.dimension(&WorkLimits::default()).unwrap(), 2);
        assert!(r.is_hypersurface());
        assert!(!r.is_regular());
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let p = PrimeModulus::new(5).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let rel = parse_polynomial("x^2 + y", p, &names).unwrap();
        assert!(RingPresentation::new(
            "bad".into(),
            p,
            names,
            vec![rel],
            None,
            None,
            None,
            RingFlags::default(),
        )
        .is_err());
    }

    #[test]
    fn weighted_grading_accepts_matching_relation() {
        // y^2 - x^3 homogeneous under weights (2, 3)
        let p = PrimeModulus::new(5).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let rel = parse_polynomial("y^2 - x^3", p, &names).unwrap();
        let r = RingPresentation::new(
            "cusp".into(),
            p,
            names,
            vec![rel],
            Some(vec![2, 3]),
            None,
            None,
            RingFlags::default(),
        )
        .unwrap();
        assert!(!r.has_standard_grading());
        assert_eq!(r.dimension(&WorkLimits::default()).unwrap(), 1);
    }

    #[test]
    fn quotient_length_of_reduction() {
        let r = quadric(5, &["x", "y", "z"]);
        let p = r.modulus;
        let j = IdealPresentation::from_gens(
            p,
            3,
            vec![Polynomial::variable(p, 3, 1), Polynomial::variable(p, 3, 2)],
        );
        // R/(y,z) = k[x]/(x^2)
        assert_eq!(r.quotient_length(&j, &WorkLimits::default()).unwrap(), 2);
    }
}
