use crate::error::{Error, Result};

/// Largest prime modulus accepted; everything in this crate runs at desk scale.
pub const MAX_PRIME: u64 = 1 << 16;

/// The prime field GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::UnsupportedField(format!(
                "prime modulus {p} exceeds the desk-scale bound {MAX_PRIME}"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Euler's criterion; 0 counts as a square.
    pub fn is_square(&self, a: u64) -> bool {
        if a == 0 || self.p == 2 {
            return true;
        }
        self.pow(a, (self.p - 1) / 2) == 1
    }

    /// Smallest square root of `a`, by exhaustive search over the residues.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        (0..self.p).find(|&s| self.mul(s, s) == a)
    }
}
