use super::ExponentVector;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Which total order on monomials to use.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Lexicographic, first variable dominant.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Elimination order: grevlex on the first `block` variables beats
    /// grevlex on the rest. Used to eliminate tag variables.
    Block { block: usize },
}

/// A monomial order: an [`OrderKind`] together with an optional variable
/// permutation (`perm[i]` is the ambient index of the i-th most
/// significant position).
///
/// Every order here is total, multiplicative, and has 1 as its minimum;
/// these axioms are property-tested rather than assumed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: None }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, perm: None }
    }

    /// Elimination order making the first `block` (permuted) variables
    /// infinitely heavier than the rest.
    pub fn elimination(block: usize) -> Self {
        MonomialOrder { kind: OrderKind::Block { block }, perm: None }
    }

    pub fn with_perm(mut self, perm: Vec<usize>) -> Self {
        self.perm = Some(perm);
        self
    }

    /// Compares monomials `a` and `b` under this order.
    /// Panics in debug builds on length mismatch.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        assert_eq!(a.len(), b.len(), "exponent vector length mismatch");
        match &self.perm {
            None => self.compare_raw(&a.0, &b.0),
            Some(perm) => {
                let pa: Vec<u32> = perm.iter().map(|&i| a.0[i]).collect();
                let pb: Vec<u32> = perm.iter().map(|&i| b.0[i]).collect();
                self.compare_raw(&pa, &pb)
            }
        }
    }

    fn compare_raw(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => lex(a, b),
            OrderKind::GrevLex => grevlex(a, b),
            OrderKind::Block { block } => {
                let k = block.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (&x, &y) in a.iter().zip(b) {
        match x.cmp(&y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub(crate) fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Equal degree: the larger monomial is the one with the *smaller*
    // exponent at the last position where they differ.
    for (&x, &y) in a.iter().zip(b).rev() {
        match x.cmp(&y) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}
