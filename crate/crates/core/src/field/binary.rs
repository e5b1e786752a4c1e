use crate::error::{Error, Result};

/// Largest extension degree accepted for GF(2^k).
pub const MAX_BINARY_DEGREE: u32 = 16;

/// The binary field GF(2^k), elements stored as polynomial bit vectors
/// (bit i = coefficient of x^i) reduced modulo a fixed irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryField {
    k: u32,
    poly: u64,
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Remainder of carry-less division of `a` by `m` over GF(2).
fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

fn is_irreducible(p: u64, k: u32) -> bool {
    if k == 1 {
        return true;
    }
    // Trial division by every polynomial of degree 1..=k/2 suffices at this size.
    for d in 1..=k / 2 {
        for low in 0..(1u64 << d) {
            let divisor = (1u64 << d) | low;
            if poly_rem(p, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// Numerically smallest irreducible monic polynomial of degree k over GF(2).
fn find_irreducible(k: u32) -> u64 {
    let top = 1u64 << k;
    (0..top)
        .map(|low| top | low)
        .find(|&cand| is_irreducible(cand, k))
        .expect("an irreducible polynomial of every degree exists")
}

impl BinaryField {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || k > MAX_BINARY_DEGREE {
            return Err(Error::UnsupportedField(format!(
                "GF(2^{k}) is outside the supported degree range 1..={MAX_BINARY_DEGREE}"
            )));
        }
        Ok(BinaryField {
            k,
            poly: find_irreducible(k),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        1 << self.k
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        poly_rem(acc, self.poly)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
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
        Ok(self.pow(a, self.order() - 2))
    }

    /// The unique square root: squaring is the Frobenius bijection, so
    /// sqrt(x) = x^(2^(k-1)).
    pub fn sqrt(&self, a: u64) -> u64 {
        let mut s = a;
        for _ in 0..self.k.saturating_sub(1) {
            s = self.mul(s, s);
        }
        s
    }
}
