use super::ring::RingPresentation;
use crate::config::WorkLimits;
use crate::error::Error;
use crate::ffpoly::{ExponentVector, Polynomial};
use crate::groebner::IdealPresentation;
use serde::{Deserialize, Serialize};

/// A radical extension `S = R[y] / (y^n - x)` for `x` a degree-one
/// member of the reduction. The extension carries the scaled grading
/// (old variables get weight `n`, the root gets weight 1), under which
/// every relation stays homogeneous. `S/mS ≅ k[Y]/(Y^n)` has length `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadicalExtensionSpec {
    pub base: RingPresentation,
    /// Index of the base variable playing the role of `x`.
    pub x_index: usize,
    /// Root index `n >= 2`; the generic degree of the extension.
    pub root_index: u32,
}

impl RadicalExtensionSpec {
    pub fn new(base: RingPresentation, x_index: usize, root_index: u32) -> Result<Self, Error> {
        if x_index >= base.nvars() {
            return Err(Error::Validation(format!("no variable #{}", x_index)));
        }
        if root_index < 2 {
            return Err(Error::Validation("root index must be at least 2".into()));
        }
        if !base.has_standard_grading() {
            return Err(Error::UnsupportedRingClass(
                "radical extensions are built over standard-graded bases".into(),
            ));
        }
        Ok(RadicalExtensionSpec { base, x_index, root_index })
    }

    /// The extension ring `S`, presented over the base variables plus a
    /// trailing root variable.
    pub fn extension(&self) -> Result<RingPresentation, Error> {
        let base = &self.base;
        let p = base.modulus;
        let n_old = base.nvars();
        let n = n_old + 1;
        let nth = self.root_index;
        let mut variables = base.variables.clone();
        variables.push("rt".to_string());
        let mut weights = vec![nth; n_old];
        weights.push(1);
        let mut relations: Vec<Polynomial> =
            base.relations.iter().map(extend_back).collect();
        // rt^n - x
        let mut root_exp = vec![0u32; n];
        root_exp[n - 1] = nth;
        let mut x_exp = vec![0u32; n];
        x_exp[self.x_index] = 1;
        let rel = Polynomial::from_terms(
            p,
            n,
            vec![(ExponentVector(root_exp), 1), (ExponentVector(x_exp), -1)],
        );
        relations.push(rel);
        RingPresentation::new(
            format!("{}[rt]/(rt^{} - {})", base.name, nth, base.variables[self.x_index]),
            p,
            variables,
            relations,
            Some(weights),
            None,
            None,
            base.flags,
        )
    }

    /// `l(S/mS)` where `m` is the base maximal ideal: must equal the
    /// root index exactly.
    pub fn fiber_length(&self, limits: &WorkLimits) -> Result<u64, Error> {
        let s = self.extension()?;
        let p = s.modulus;
        let n = s.nvars();
        let m_base = IdealPresentation::from_gens(
            p,
            n,
            (0..n - 1).map(|v| Polynomial::variable(p, n, v)).collect(),
        );
        s.quotient_length(&m_base, limits)
    }
}

/// Re-embeds a base polynomial with the root variable appended (unused
/// in every term).
fn extend_back(f: &Polynomial) -> Polynomial {
    let n = f.nvars() + 1;
    Polynomial::from_terms(
        f.modulus(),
        n,
        f.terms()
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.push(0);
                (ExponentVector(e), *c as i64)
            })
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{parse_polynomial, PrimeModulus};
    use crate::invariants::ring::RingFlags;

    fn quadric(p: u64) -> RingPresentation {
        let modulus = PrimeModulus::new(p).unwrap();
        let names: Vec<String> = ["x", "y", "z"].iter().map(|v| v.to_string()).collect();
        let rel = parse_polynomial("x^2 + y^2 + z^2", modulus, &names).unwrap();
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
    fn fiber_length_equals_root_index() {
        let limits = WorkLimits::default();
        for n in 2..=4 {
            let spec = RadicalExtensionSpec::new(quadric(5), 1, n).unwrap();
            assert_eq!(spec.fiber_length(&limits).unwrap(), n as u64, "n = {}", n);
        }
    }

    #[test]
    fn extension_is_weighted_homogeneous() {
        let spec = RadicalExtensionSpec::new(quadric(5), 1, 3).unwrap();
        let s = spec.extension().unwrap();
        assert_eq!(s.weights, vec![3, 3, 3, 1]);
        assert_eq!(s.nvars(), 4);
        // dimension is preserved
        assert_eq!(s.dimension(&WorkLimits::default()).unwrap(), 2);
    }

    #[test]
    fn polynomial_base() {
        // R = k[x]: S = k[x, rt]/(rt^n - x) ≅ k[rt], so dim 1.
        let p = PrimeModulus::new(5).unwrap();
        let base = RingPresentation::polynomial_ring(p, vec!["x".into()]);
        let spec = RadicalExtensionSpec::new(base, 0, 2).unwrap();
        let s = spec.extension().unwrap();
        assert_eq!(s.dimension(&WorkLimits::default()).unwrap(), 1);
        assert_eq!(spec.fiber_length(&WorkLimits::default()).unwrap(), 2);
    }
}
