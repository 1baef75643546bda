use super::Staircase;
use crate::error::Error;
use crate::ffpoly::ExponentVector;
use serde::{Deserialize, Serialize};

/// Hilbert-series data of a monomial quotient under the standard
/// (unit-weight) grading.
///
/// `numerator` holds the coefficient sequence of the series numerator
/// *after* cancelling `(1-T)^(n-d)`, i.e. the quotient's Hilbert series
/// is `numerator(T) / (1-T)^d`. The multiplicity is `numerator(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub krull_dim: usize,
    pub multiplicity: u64,
}

const NODE_BUDGET: usize = 1 << 22;

impl HilbertData {
    /// Computes the numerator via the standard splitting recursion on a
    /// minimal generator: `N(I + (m)) = N(I) - T^deg(m) N(I : m)`.
    pub fn from_staircase(staircase: &Staircase) -> Result<HilbertData, Error> {
        let n = staircase.nvars();
        let mut budget = NODE_BUDGET;
        let raw = numerator(staircase.generators().to_vec(), &mut budget)?;

        // Split off (1 - T) factors: N = (1-T)^c * reduced.
        let mut reduced = raw;
        let mut c = 0usize;
        while reduced.iter().sum::<i64>() == 0 && reduced.iter().any(|&x| x != 0) {
            reduced = divide_one_minus_t(&reduced);
            c += 1;
        }
        if reduced.iter().all(|&x| x == 0) {
            // Unit ideal: empty quotient.
            return Ok(HilbertData { numerator: vec![0], krull_dim: 0, multiplicity: 0 });
        }
        let krull_dim = n - c.min(n);
        let e = reduced.iter().sum::<i64>();
        debug_assert!(e >= 1, "multiplicity of a nonzero ring is positive");
        while reduced.len() > 1 && *reduced.last().unwrap() == 0 {
            reduced.pop();
        }
        Ok(HilbertData { numerator: reduced, krull_dim, multiplicity: e as u64 })
    }
}

/// Raw numerator of the Hilbert series over `(1-T)^n`.
fn numerator(gens: Vec<ExponentVector>, budget: &mut usize) -> Result<Vec<i64>, Error> {
    if *budget == 0 {
        return Err(Error::WorkLimit("Hilbert numerator recursion budget".into()));
    }
    *budget -= 1;
    match gens.len() {
        0 => Ok(vec![1]),
        _ => {
            let mut gens = gens;
            // Split on a generator of maximal degree; colons then shrink fast.
            let idx = gens
                .iter()
                .enumerate()
                .max_by_key(|(_, g)| g.degree())
                .map(|(i, _)| i)
                .unwrap();
            let pivot = gens.swap_remove(idx);
            let rest = numerator(gens.clone(), budget)?;
            // (rest-ideal : pivot)
            let colon: Vec<ExponentVector> = gens
                .iter()
                .map(|g| g.checked_sub(&g.gcd(&pivot)).expect("gcd divides"))
                .collect();
            let colon = Staircase::new(pivot.len(), colon).generators().to_vec();
            let sub = numerator(colon, budget)?;
            let shift = pivot.degree() as usize;
            let mut out = rest;
            if out.len() < sub.len() + shift {
                out.resize(sub.len() + shift, 0);
            }
            for (i, &c) in sub.iter().enumerate() {
                out[i + shift] -= c;
            }
            Ok(out)
        }
    }
}

fn divide_one_minus_t(poly: &[i64]) -> Vec<i64> {
    // poly = (1 - T) * q  =>  q_i = sum_{j<=i} poly_j
    let mut out = Vec::with_capacity(poly.len().saturating_sub(1));
    let mut acc = 0i64;
    for &c in &poly[..poly.len().saturating_sub(1)] {
        acc += c;
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn square_of_maximal_ideal() {
        // (x^2, xy, y^2) in k[x,y]: series 1 + 2T, l = 3, d = 0
        let s = Staircase::new(2, vec![ev(&[2, 0]), ev(&[1, 1]), ev(&[0, 2])]);
        let h = HilbertData::from_staircase(&s).unwrap();
        assert_eq!(h.krull_dim, 0);
        assert_eq!(h.numerator, vec![1, 2]);
        assert_eq!(h.multiplicity, 3);
        assert_eq!(s.colength().unwrap(), 3);
    }

    #[test]
    fn zero_ideal_line() {
        let s = Staircase::new(1, vec![]);
        let h = HilbertData::from_staircase(&s).unwrap();
        assert_eq!(h.krull_dim, 1);
        assert_eq!(h.numerator, vec![1]);
        assert_eq!(h.multiplicity, 1);
    }

    #[test]
    fn hypersurface_in_plane() {
        // (x^2) in k[x,y]: (1-T^2)/(1-T)^2 -> numerator 1+T, d=1, e=2
        let s = Staircase::new(2, vec![ev(&[2, 0])]);
        let h = HilbertData::from_staircase(&s).unwrap();
        assert_eq!(h.krull_dim, 1);
        assert_eq!(h.numerator, vec![1, 1]);
        assert_eq!(h.multiplicity, 2);
    }

    #[test]
    fn cusp_multiplicity() {
        // leading ideal (x^3) in k[x,y] -> numerator 1+T+T^2, e=3
        let s = Staircase::new(2, vec![ev(&[3, 0])]);
        let h = HilbertData::from_staircase(&s).unwrap();
        assert_eq!(h.numerator, vec![1, 1, 1]);
        assert_eq!(h.multiplicity, 3);
    }

    #[test]
    fn unit_ideal() {
        let s = Staircase::new(2, vec![ev(&[0, 0])]);
        let h = HilbertData::from_staircase(&s).unwrap();
        assert_eq!(h.multiplicity, 0);
    }

    #[test]
    fn zero_dim_multiplicity_equals_colength() {
        let s = Staircase::new(3, vec![ev(&[2, 0, 0]), ev(&[0, 3, 0]), ev(&[0, 0, 4]), ev(&[1, 1, 1])]);
        let h = HilbertData::from_staircase(&s).unwrap();
        assert_eq!(h.krull_dim, 0);
        assert_eq!(h.multiplicity, s.colength().unwrap());
    }
}
