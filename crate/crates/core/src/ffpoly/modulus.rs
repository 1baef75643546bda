use crate::error::Error;
use serde::{Deserialize, Serialize};

/// A prime modulus `p` with `2 <= p < 2^31`, checked at construction.
///
/// All coefficient arithmetic happens through this type and always
/// reduces into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus {
    p: u32,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < 2 || p > (1 << 31) - 1 {
            return Err(Error::ModulusRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u32 {
        let m = self.p as i64;
        (((x % m) + m) % m) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let m = self.p as u64;
        if s >= m { (s - m) as u32 } else { s as u32 }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b { a - b } else { a + self.p - b }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 { 0 } else { self.p - a }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc: u32 = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p as u64 - 2)
    }

    /// Checks whether `q` is a power of `p` (including `q = 1`).
    pub fn is_power(&self, q: u64) -> bool {
        let mut q = q;
        if q == 0 {
            return false;
        }
        while q % self.p as u64 == 0 {
            q /= self.p as u64;
        }
        q == 1
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self, Error> {
        PrimeModulus::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(m: PrimeModulus) -> u64 {
        m.p as u64
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
