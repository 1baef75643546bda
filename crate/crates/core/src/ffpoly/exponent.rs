use crate::error::Error;
use serde::{Deserialize, Serialize};

/// An exponent vector: one nonnegative exponent per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total (unweighted) degree.
    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Weighted degree under the given variable weights.
    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        debug_assert_eq!(weights.len(), self.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// Componentwise subtraction; errors when any component would go
    /// negative.
    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = Vec::with_capacity(self.len());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            if a < b {
                return Err(Error::NegativeExponent);
            }
            out.push(a - b);
        }
        Ok(ExponentVector(out))
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn scale(&self, k: u32) -> Self {
        ExponentVector(self.0.iter().map(|&a| a * k).collect())
    }

    /// Variable indices with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn componentwise_ops() {
        let a = ExponentVector(vec![2, 0, 1]);
        let b = ExponentVector(vec![1, 3, 1]);
        assert_eq!(a.add(&b).0, vec![3, 3, 2]);
        assert_eq!(a.lcm(&b).0, vec![2, 3, 1]);
        assert_eq!(a.gcd(&b).0, vec![1, 0, 1]);
        assert!(b.checked_sub(&a).is_err());
        assert_eq!(b.checked_sub(&ExponentVector(vec![1, 1, 0])).unwrap().0, vec![0, 2, 1]);
        assert!(!a.divides(&b));
        assert!(ExponentVector(vec![1, 0, 1]).divides(&b));
        assert!(ExponentVector(vec![1, 0, 0]).coprime(&ExponentVector(vec![0, 2, 0])));
        assert_eq!(a.degree(), 3);
        assert_eq!(a.weighted_degree(&[1, 2, 3]), 5);
    }
}
