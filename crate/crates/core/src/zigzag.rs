//! Euler zigzag numbers `c_d` (alternating-permutation counts, the
//! Taylor coefficients of `sec x + tan x` times `d!`) and the
//! conjectural Hilbert-Kunz floors `1 + c_d/d!`.
//!
//! Two independent algorithms are always run and compared: the
//! boustrophedon recurrence and formal division of the `sec + tan`
//! series, both in exact big-integer arithmetic.

use crate::error::Error;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// Exact zigzag numbers `c_0..c_dmax` together with the floors
/// `1 + c_d/d!` as reduced rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagTable {
    pub c: Vec<BigInt>,
    pub floors: Vec<BigRational>,
}

/// Computes `c_0..c_dmax` by the boustrophedon recurrence, checks the
/// result against series division, and attaches the floors.
pub fn zigzag_numbers(dmax: usize) -> Result<ZigzagTable, Error> {
    if dmax > 64 {
        return Err(Error::WorkLimit(format!(
            "zigzag table capped at d = 64, requested {}",
            dmax
        )));
    }
    let c = boustrophedon(dmax);
    let by_series = series_division(dmax);
    if c != by_series {
        // Two exact algorithms disagreeing means a genuine bug.
        return Err(Error::Data(
            "zigzag recurrence and series division disagree".into(),
        ));
    }
    let mut fact = BigInt::one();
    let mut floors = Vec::with_capacity(dmax + 1);
    for (d, cd) in c.iter().enumerate() {
        if d > 0 {
            fact *= BigInt::from(d);
        }
        floors.push(BigRational::one() + BigRational::new(cd.clone(), fact.clone()));
    }
    Ok(ZigzagTable { c, floors })
}

/// The floor `1 + c_d/d!` as a reduced rational.
pub fn conjecture_floor(d: usize) -> Result<BigRational, Error> {
    if d == 0 {
        return Err(Error::Validation("floor needs d >= 1".into()));
    }
    Ok(zigzag_numbers(d)?.floors.swap_remove(d))
}

/// Boustrophedon (Seidel-Entringer-Arnold) triangle. Each row is filled
/// alternately left-to-right and right-to-left with running sums; the
/// zigzag number is the last entry written.
fn boustrophedon(dmax: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(dmax + 1);
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    out.push(BigInt::one());
    for d in 1..=dmax {
        let mut next: Vec<BigInt> = vec![BigInt::zero()];
        for k in 0..d {
            let v = next[k].clone() + &row[d - 1 - k];
            next.push(v);
        }
        out.push(next[d].clone());
        row = next;
    }
    out
}

/// `c_d = d! * [x^d](sec x + tan x)`, with the series obtained by
/// formally dividing `1 + sin x` by `cos x` over the rationals.
fn series_division(dmax: usize) -> Vec<BigInt> {
    let n = dmax + 1;
    // Taylor coefficients of 1 + sin and cos.
    let mut num = vec![BigRational::zero(); n];
    let mut den = vec![BigRational::zero(); n];
    let mut fact = BigInt::one();
    for d in 0..n {
        if d > 0 {
            fact *= BigInt::from(d);
        }
        let inv_fact = BigRational::new(BigInt::one(), fact.clone());
        let sign = if (d / 2) % 2 == 0 { 1 } else { -1 };
        match d % 2 {
            0 => den[d] = inv_fact * BigInt::from(sign),
            _ => num[d] = inv_fact * BigInt::from(sign),
        }
    }
    num[0] = BigRational::one();
    // Long division: q with num = den * q, den[0] = 1.
    let mut q = vec![BigRational::zero(); n];
    for d in 0..n {
        let mut acc = num[d].clone();
        for k in 0..d {
            acc -= &q[k] * &den[d - k];
        }
        q[d] = acc; // den[0] == 1
    }
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for (d, qd) in q.iter().enumerate() {
        if d > 0 {
            fact *= BigInt::from(d);
        }
        let cd = qd * BigRational::from_integer(fact.clone());
        debug_assert!(cd.is_integer());
        out.push(cd.to_integer());
    }
    out
}
