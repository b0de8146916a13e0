//! Arithmetic in the prime field GF(p).

use serde::{Deserialize, Serialize};

use crate::error::LinalgError;

/// Largest modulus accepted; products of two residues then fit in a `u64`.
pub const MAX_MODULUS: u32 = (1 << 31) - 1;

/// A prime field GF(p). Elements are plain `u32` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if p > MAX_MODULUS || !is_prime(p as u64) {
            return Err(LinalgError::NotPrime(p as u64));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + (self.p - b) as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in GF({})", self.p);
        // Extended Euclid on i64 avoids the log(p) squarings of Fermat.
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for readable output.
    pub fn signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(2_147_483_647).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 101, 2_147_483_647] {
            let f = Fp::new(p).unwrap();
            for a in 1..p.min(200) {
                assert_eq!(f.mul(a, f.inv(a)), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn large_modulus_does_not_overflow() {
        let f = Fp::new(2_147_483_647).unwrap();
        let a = f.p - 1;
        assert_eq!(f.mul(a, a), 1);
        assert_eq!(f.add(a, a), f.p - 2);
        assert_eq!(f.sub(0, 1), f.p - 1);
        assert_eq!(f.pow(3, (f.p - 1) as u64), 1);
    }
}
