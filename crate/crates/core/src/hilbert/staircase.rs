use crate::error::Error;
use crate::ffpoly::ExponentVector;

/// The minimal monomial generators of a leading-term ideal.
///
/// Invariant: the generator set is an antichain under divisibility. The
/// quotient is zero-dimensional exactly when every variable appears as a
/// pure power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    nvars: usize,
    generators: Vec<ExponentVector>,
}

impl Staircase {
    /// Builds a staircase from arbitrary monomial generators,
    /// minimalizing to an antichain.
    pub fn new(nvars: usize, generators: Vec<ExponentVector>) -> Self {
        let mut gens: Vec<ExponentVector> = Vec::new();
        let mut sorted = generators;
        sorted.sort_by_key(|m| m.degree());
        for m in sorted {
            assert_eq!(m.len(), nvars);
            if !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        gens.sort();
        Staircase { nvars, generators: gens }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn contains_unit(&self) -> bool {
        self.generators.iter().any(|m| m.is_zero())
    }

    /// True when `m` lies in the monomial ideal.
    pub fn contains(&self, m: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// For each variable, the smallest pure-power exponent among the
    /// generators, if any.
    fn pure_power_bounds(&self) -> Vec<Option<u32>> {
        let mut bounds = vec![None; self.nvars];
        for g in &self.generators {
            let mut support = g.support();
            if let (Some(v), None) = (support.next(), support.next()) {
                let e = g.0[v];
                bounds[v] = Some(match bounds[v] {
                    None => e,
                    Some(b) => e.min(b),
                });
            }
        }
        bounds
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_bounds().iter().all(|b| b.is_some())
    }

    /// Krull dimension of the quotient: the maximum size of a variable
    /// subset meeting no generator's support entirely.
    pub fn krull_dimension(&self) -> usize {
        if self.contains_unit() {
            // Unit ideal: empty quotient. Report 0 by convention.
            return 0;
        }
        let n = self.nvars;
        let supports: Vec<u64> = self
            .generators
            .iter()
            .map(|g| g.support().fold(0u64, |acc, v| acc | (1 << v)))
            .collect();
        let mut best = 0usize;
        // A subset U is independent iff no generator has support ⊆ U.
        for mask in 0u64..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|&s| s & !mask != 0) {
                best = size;
            }
        }
        best
    }

    /// Exact count of standard monomials (the colength of the monomial
    /// ideal). Errors when the quotient is not zero-dimensional.
    pub fn colength(&self) -> Result<u64, Error> {
        if self.contains_unit() {
            return Ok(0);
        }
        let bounds = self.pure_power_bounds();
        for (v, b) in bounds.iter().enumerate() {
            if b.is_none() {
                return Err(Error::NotZeroDimensional(format!("#{}", v)));
            }
        }
        Ok(count_standard(self.nvars, &self.generators, &bounds))
    }
}

/// Counts standard monomials by slicing on the first variable's exponent
/// and recursing on the projected staircase in the remaining variables.
fn count_standard(nvars: usize, gens: &[ExponentVector], bounds: &[Option<u32>]) -> u64 {
    if nvars == 0 {
        return if gens.iter().any(|g| g.is_zero()) { 0 } else { 1 };
    }
    if nvars == 1 {
        return bounds[0].expect("zero-dimensional") as u64;
    }
    let b0 = bounds[0].expect("zero-dimensional");
    let mut total = 0u64;
    for k in 0..b0 {
        // Slice x_0 = k: generators with x_0-exponent <= k survive,
        // projected to the remaining variables.
        let slice: Vec<ExponentVector> = gens
            .iter()
            .filter(|g| g.0[0] <= k)
            .map(|g| ExponentVector(g.0[1..].to_vec()))
            .collect();
        let sliced = Staircase::new(nvars - 1, slice);
        let sub_bounds = sliced.pure_power_bounds();
        total += count_standard(nvars - 1, &sliced.generators, &sub_bounds);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn colength_box() {
        // (x^2, y^3) -> 6
        let s = Staircase::new(2, vec![ev(&[2, 0]), ev(&[0, 3])]);
        assert_eq!(s.colength().unwrap(), 6);
    }

    #[test]
    fn colength_bracket_cube() {
        // (x,y,z)^[q] -> q^3
        let q = 9;
        let s = Staircase::new(
            3,
            vec![ev(&[q, 0, 0]), ev(&[0, q, 0]), ev(&[0, 0, q])],
        );
        assert_eq!(s.colength().unwrap(), (q as u64).pow(3));
    }

    #[test]
    fn colength_with_mixed_generator() {
        // leading ideal of (x^3,y^3,z^3,x^2+y^2+z^2) at p=5 has colength 13
        // staircase: x^2, y^3, z^3, x*y^2*z^... — computed via groebner in
        // integration tests; here check a hand staircase: (x^2, y^3, z^3, x*y^2)
        let s = Staircase::new(
            3,
            vec![ev(&[2, 0, 0]), ev(&[0, 3, 0]), ev(&[0, 0, 3]), ev(&[1, 2, 0])],
        );
        // standard: x^a y^b z^c, a<2, b<3, c<3 minus those with a>=1,b>=2
        assert_eq!(s.colength().unwrap(), 18 - 3);
    }

    #[test]
    fn krull_dimension_examples() {
        // (x^2) in 3 variables -> dim 2
        let s = Staircase::new(3, vec![ev(&[2, 0, 0])]);
        assert_eq!(s.krull_dimension(), 2);
        // zero ideal in n variables -> n
        let s = Staircase::new(4, vec![]);
        assert_eq!(s.krull_dimension(), 4);
        // (x, y) in k[x,y] -> 0
        let s = Staircase::new(2, vec![ev(&[1, 0]), ev(&[0, 1])]);
        assert_eq!(s.krull_dimension(), 0);
        assert!(s.is_zero_dimensional());
    }

    #[test]
    fn not_zero_dimensional_is_an_error() {
        let s = Staircase::new(2, vec![ev(&[1, 0])]);
        assert!(matches!(s.colength(), Err(Error::NotZeroDimensional(_))));
    }

    #[test]
    fn minimalization_to_antichain() {
        let s = Staircase::new(2, vec![ev(&[1, 0]), ev(&[2, 0]), ev(&[1, 1])]);
        assert_eq!(s.generators(), &[ev(&[1, 0])]);
    }
}
