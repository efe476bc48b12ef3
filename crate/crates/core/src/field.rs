//! Prime fields `Z_p` with residues kept in `[0, p)`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted modulus. Products of two residues must fit in `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    modulus: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Builds `Z_p`. Primality is checked by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { modulus: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Residue of an arbitrary integer.
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.modulus as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.modulus as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.modulus as u64) as u32
    }

    /// `1 - k`, the complementary weight in affine combinations.
    pub fn one_minus(&self, k: u32) -> u32 {
        self.sub(1 % self.modulus, k)
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: u32) -> Result<u32> {
        let a = a % self.modulus;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.modulus as u64 - 2))
    }

    /// All residues in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.modulus
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_composites() {
        assert_eq!(PrimeField::new(5).unwrap().modulus(), 5);
        assert_eq!(PrimeField::new(2).unwrap().modulus(), 2);
        assert_eq!(PrimeField::new(6), Err(Error::NotPrime(6)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(0), Err(Error::NotPrime(0)));
        assert_eq!(PrimeField::new(91), Err(Error::NotPrime(91)));
    }

    #[test]
    fn inverse_examples() {
        let f = PrimeField::new(5).unwrap();
        // exhaustive search oracle
        let brute = |a: u32| (1..5).find(|b| (a * b) % 5 == 1).unwrap();
        assert_eq!(brute(2), 3);
        assert_eq!(f.inv(2), Ok(3));
        assert_eq!(f.inv(1), Ok(1));
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_sweep() {
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..f.modulus() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn reduce_negative() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.reduce(-1), 2);
        assert_eq!(f.reduce(7), 1);
        assert_eq!(f.one_minus(2), 2);
        assert_eq!(PrimeField::new(2).unwrap().one_minus(1), 0);
    }
}
