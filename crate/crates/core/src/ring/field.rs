//! Arithmetic in the prime field F_p.

use std::sync::Arc;

use super::RingError;

/// Characteristics up to this size get a precomputed inverse table.
const INVERSE_TABLE_LIMIT: u32 = 1 << 20;

/// The prime field F_p with canonical representatives in `[0, p)`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u32,
    inverses: Option<Arc<Vec<u32>>>,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}
impl Eq for PrimeField {}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, RingError> {
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(RingError::NotPrime(p as u64));
        }
        let inverses = (p <= INVERSE_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; p as usize];
            if p > 1 {
                t[1] = 1;
            }
            // inv(i) = -(p / i) * inv(p mod i)
            for i in 2..p as u64 {
                let q = p as u64 / i;
                let r = (p as u64 % i) as usize;
                t[i as usize] = ((p as u64 - q) * t[r] as u64 % p as u64) as u32;
            }
            Arc::new(t)
        });
        Ok(PrimeField { p, inverses })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduce a signed integer to its canonical representative.
    #[inline]
    pub fn from_i64(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric lift into `(-p/2, p/2]`, used for display.
    pub fn to_i64(&self, c: u32) -> i64 {
        if c > self.p / 2 {
            c as i64 - self.p as i64
        } else {
            c as i64
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        match &self.inverses {
            Some(t) => t[a as usize],
            None => self.pow(a, self.p as u64 - 2),
        }
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
}
