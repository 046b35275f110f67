//! Arithmetic in the prime field GF(p), p < 2^31.
//!
//! Elements are plain `u32` values in `[0, p)`. Products are formed in 64 bits
//! and reduced, so no operation can overflow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

/// Deterministic primality by trial division; p < 2^31 keeps this under 46341 steps.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Maps an arbitrary integer to its residue.
    #[inline]
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
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

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
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

    /// Multiplicative inverse via the extended Euclidean algorithm.
    ///
    /// Panics on zero: every caller inverts a leading coefficient, which is
    /// nonzero by the polynomial invariant.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.from_i64(t0)
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for rendering.
    pub fn to_signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites_and_large_moduli() {
        assert_eq!(PrimeField::new(4), Err(Error::NonPrimeModulus(4)));
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2_147_483_649).is_err());
    }

    #[test]
    fn accepts_primes() {
        for p in [2u64, 3, 5, 101, 65_521, 2_147_483_647] {
            assert_eq!(PrimeField::new(p).unwrap().modulus() as u64, p);
        }
    }

    #[test]
    fn signed_rendering() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.to_signed(4), -1);
        assert_eq!(f.to_signed(2), 2);
        assert_eq!(f.from_i64(-7), 3);
    }

    fn field() -> impl Strategy<Value = PrimeField> {
        prop_oneof![Just(2u64), Just(3), Just(101), Just(2_147_483_647)].prop_map(|p| PrimeField::new(p).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in field(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let p = f.modulus();
            let (a, b, c) = (a % p, b % p, c % p);
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a)), 1);
                prop_assert_eq!(f.inv(a), f.pow(a, p as u64 - 2));
            }
        }
    }
}
