//! Exact arithmetic for the three field families the canonical-form theorems
//! need: prime fields GF(p), binary fields GF(2^k), and the square-closed
//! quadratic tower over an odd prime.

mod binary;
mod prime;
mod tower;

pub use binary::{BinaryField, MAX_BINARY_DEGREE};
pub use prime::{PrimeField, MAX_PRIME};
pub use tower::{TowerElem, TowerField, DEFAULT_TOWER_CAP, MAX_TOWER_CAP};

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// A field context; cheap to clone and safe to share across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldCtx {
    Prime(PrimeField),
    Binary(BinaryField),
    Tower(TowerField),
}

impl Hash for FieldCtx {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            FieldCtx::Prime(f) => (0u8, f.p()).hash(state),
            FieldCtx::Binary(f) => (1u8, f.k() as u64).hash(state),
            FieldCtx::Tower(f) => (2u8, f.p(), f.cap()).hash(state),
        }
    }
}

/// A field element. Elements carry no context pointer; all arithmetic goes
/// through the owning [`FieldCtx`]. Tower elements are level-normalized, so
/// equality and hashing are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Prime(u64),
    Binary(u64),
    Tower(TowerElem),
}

macro_rules! kind_panic {
    ($op:expr) => {
        panic!("field element kind does not match its context in {}", $op)
    };
}

impl FieldCtx {
    pub fn prime(p: u64) -> Result<Self> {
        Ok(FieldCtx::Prime(PrimeField::new(p)?))
    }

    pub fn binary(k: u32) -> Result<Self> {
        Ok(FieldCtx::Binary(BinaryField::new(k)?))
    }

    pub fn tower(p: u64, cap: u8) -> Result<Self> {
        Ok(FieldCtx::Tower(TowerField::new(p, cap)?))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Prime(f) => f.p(),
            FieldCtx::Binary(_) => 2,
            FieldCtx::Tower(f) => f.p(),
        }
    }

    /// Number of elements, or None for the (infinite) tower union.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldCtx::Prime(f) => Some(f.p()),
            FieldCtx::Binary(f) => Some(f.order()),
            FieldCtx::Tower(_) => None,
        }
    }

    /// True when every element has a square root inside the field.
    pub fn square_closed(&self) -> bool {
        !matches!(self, FieldCtx::Prime(f) if f.p() != 2)
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldCtx::Prime(_) => FieldElem::Prime(0),
            FieldCtx::Binary(_) => FieldElem::Binary(0),
            FieldCtx::Tower(f) => FieldElem::Tower(f.zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.embed_int(1)
    }

    /// The image of a small integer under the canonical ring map Z -> F.
    pub fn embed_int(&self, v: i64) -> FieldElem {
        match self {
            FieldCtx::Prime(f) => FieldElem::Prime(f.reduce_i64(v)),
            FieldCtx::Binary(_) => FieldElem::Binary(v.rem_euclid(2) as u64),
            FieldCtx::Tower(f) => {
                FieldElem::Tower(f.embed(v.rem_euclid(f.p() as i64) as u64))
            }
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        *a == self.zero()
    }

    pub fn owns(&self, a: &FieldElem) -> bool {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime(v)) => *v < f.p(),
            (FieldCtx::Binary(f), FieldElem::Binary(v)) => *v < f.order(),
            (FieldCtx::Tower(f), FieldElem::Tower(e)) => {
                e.level() <= f.cap()
                    && e.coeffs().iter().all(|&c| c < f.p())
                    && f.normalize(e) == *e
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (FieldCtx::Prime(f), FieldElem::Prime(x), FieldElem::Prime(y)) => {
                FieldElem::Prime(f.add(*x, *y))
            }
            (FieldCtx::Binary(f), FieldElem::Binary(x), FieldElem::Binary(y)) => {
                FieldElem::Binary(f.add(*x, *y))
            }
            (FieldCtx::Tower(f), FieldElem::Tower(x), FieldElem::Tower(y)) => {
                FieldElem::Tower(f.add(x, y))
            }
            _ => kind_panic!("add"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime(x)) => FieldElem::Prime(f.neg(*x)),
            (FieldCtx::Binary(_), FieldElem::Binary(x)) => FieldElem::Binary(*x),
            (FieldCtx::Tower(f), FieldElem::Tower(x)) => FieldElem::Tower(f.neg(x)),
            _ => kind_panic!("neg"),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (FieldCtx::Prime(f), FieldElem::Prime(x), FieldElem::Prime(y)) => {
                FieldElem::Prime(f.mul(*x, *y))
            }
            (FieldCtx::Binary(f), FieldElem::Binary(x), FieldElem::Binary(y)) => {
                FieldElem::Binary(f.mul(*x, *y))
            }
            (FieldCtx::Tower(f), FieldElem::Tower(x), FieldElem::Tower(y)) => {
                FieldElem::Tower(f.mul(x, y))
            }
            _ => kind_panic!("mul"),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime(x)) => Ok(FieldElem::Prime(f.inv(*x)?)),
            (FieldCtx::Binary(f), FieldElem::Binary(x)) => Ok(FieldElem::Binary(f.inv(*x)?)),
            (FieldCtx::Tower(f), FieldElem::Tower(x)) => Ok(FieldElem::Tower(f.inv(x)?)),
            _ => kind_panic!("inv"),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Whether `a` has a square root without leaving the field (for the
    /// tower: without leaving the element's own level).
    pub fn is_square(&self, a: &FieldElem) -> bool {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime(x)) => f.is_square(*x),
            (FieldCtx::Binary(_), FieldElem::Binary(_)) => true,
            (FieldCtx::Tower(f), FieldElem::Tower(x)) => f.is_square(x),
            _ => kind_panic!("is_square"),
        }
    }

    /// A square root of `a`. Binary fields use the Frobenius power, the tower
    /// lifts one level when needed, and prime fields search exhaustively and
    /// report NonSquare on failure (the F = F^2 hypothesis fails there).
    pub fn sqrt(&self, a: &FieldElem) -> Result<FieldElem> {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime(x)) => f
                .sqrt(*x)
                .map(FieldElem::Prime)
                .ok_or_else(|| Error::NonSquare(self.format_elem(a))),
            (FieldCtx::Binary(f), FieldElem::Binary(x)) => Ok(FieldElem::Binary(f.sqrt(*x))),
            (FieldCtx::Tower(f), FieldElem::Tower(x)) => Ok(FieldElem::Tower(f.sqrt(x)?)),
            _ => kind_panic!("sqrt"),
        }
    }

    /// Tower elements re-normalized to minimal level; other kinds unchanged.
    pub fn tower_normalize(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (FieldCtx::Tower(f), FieldElem::Tower(x)) => FieldElem::Tower(f.normalize(x)),
            _ => a.clone(),
        }
    }

    /// Enumeration index of an element; only meaningful for finite kinds.
    pub fn elem_to_index(&self, a: &FieldElem) -> u64 {
        match a {
            FieldElem::Prime(v) | FieldElem::Binary(v) => *v,
            FieldElem::Tower(_) => panic!("tower fields are not enumerable"),
        }
    }

    pub fn elem_from_index(&self, idx: u64) -> FieldElem {
        match self {
            FieldCtx::Prime(_) => FieldElem::Prime(idx),
            FieldCtx::Binary(_) => FieldElem::Binary(idx),
            FieldCtx::Tower(_) => panic!("tower fields are not enumerable"),
        }
    }

    pub fn random_elem<R: rand::Rng>(&self, rng: &mut R) -> FieldElem {
        match self {
            FieldCtx::Prime(f) => FieldElem::Prime(rng.gen_range(0..f.p())),
            FieldCtx::Binary(f) => FieldElem::Binary(rng.gen_range(0..f.order())),
            FieldCtx::Tower(f) => {
                let level = rng.gen_range(0..=f.cap().min(2));
                FieldElem::Tower(f.random_at(rng, level))
            }
        }
    }

    pub fn random_nonzero<R: rand::Rng>(&self, rng: &mut R) -> FieldElem {
        loop {
            let e = self.random_elem(rng);
            if !self.is_zero(&e) {
                return e;
            }
        }
    }

    /// Element text syntax: prime "2"; binary coefficients low-to-high joined
    /// by ':' ("1:0:1"); tower "L1;0:1". Printed forms round-trip bit-exactly.
    pub fn format_elem(&self, a: &FieldElem) -> String {
        match (self, a) {
            (FieldCtx::Prime(_), FieldElem::Prime(v)) => v.to_string(),
            (FieldCtx::Binary(f), FieldElem::Binary(v)) => (0..f.k())
                .map(|i| ((v >> i) & 1).to_string())
                .collect::<Vec<_>>()
                .join(":"),
            (FieldCtx::Tower(_), FieldElem::Tower(e)) => {
                let coeffs = e
                    .coeffs()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(":");
                format!("L{};{}", e.level(), coeffs)
            }
            _ => kind_panic!("format_elem"),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse(format!("element '{s}': {msg}"));
        match self {
            FieldCtx::Prime(f) => {
                let v: i64 = s.parse().map_err(|_| bad("expected an integer"))?;
                Ok(FieldElem::Prime(f.reduce_i64(v)))
            }
            FieldCtx::Binary(f) => {
                let mut bits = 0u64;
                let mut count = 0u32;
                for (i, tok) in s.split(':').enumerate() {
                    let b: u64 = tok
                        .trim()
                        .parse()
                        .map_err(|_| bad("expected 0/1 coefficients"))?;
                    if b > 1 {
                        return Err(bad("binary coefficients must be 0 or 1"));
                    }
                    bits |= b << i;
                    count += 1;
                }
                if count > f.k() {
                    return Err(bad("too many coefficients for this field"));
                }
                Ok(FieldElem::Binary(bits))
            }
            FieldCtx::Tower(f) => {
                if let Some(rest) = s.strip_prefix('L') {
                    let (level_s, coeff_s) = rest
                        .split_once(';')
                        .ok_or_else(|| bad("expected L<level>;<coeffs>"))?;
                    let level: u8 = level_s.parse().map_err(|_| bad("bad level"))?;
                    let coeffs: Vec<u64> = coeff_s
                        .split(':')
                        .map(|t| {
                            t.trim()
                                .parse::<u64>()
                                .map_err(|_| bad("bad coefficient"))
                        })
                        .collect::<Result<_>>()?;
                    f.make_elem(level, coeffs).map(FieldElem::Tower)
                } else {
                    // Level-0 shorthand, signed integers accepted.
                    let v: i64 = s.parse().map_err(|_| bad("expected an integer or L-form"))?;
                    Ok(self.embed_int(v))
                }
            }
        }
    }

    /// Field spec syntax used in matrix files and on the command line:
    /// GF(p), GF(2^k) (also GF(4), GF(8), ...), TOWER(p) or TOWER(p,cap).
    pub fn parse_spec(s: &str) -> Result<FieldCtx> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad field spec '{s}'"));
        if let Some(body) = s.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')) {
            if let Some((base, exp)) = body.split_once('^') {
                let p: u64 = base.trim().parse().map_err(|_| bad())?;
                let k: u32 = exp.trim().parse().map_err(|_| bad())?;
                if p != 2 {
                    return Err(Error::UnsupportedField(format!(
                        "GF({p}^{k}): odd-characteristic extensions are only available as TOWER({p})"
                    )));
                }
                return FieldCtx::binary(k);
            }
            let q: u64 = body.trim().parse().map_err(|_| bad())?;
            // Factor q = p^k.
            let mut p = 2;
            while p * p <= q && !q.is_multiple_of(p) {
                p += 1;
            }
            if !q.is_multiple_of(p) {
                p = q;
            }
            let mut k = 0u32;
            let mut rest = q;
            while rest > 1 && rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            if rest != 1 || k == 0 {
                return Err(bad());
            }
            if k == 1 {
                return FieldCtx::prime(p);
            }
            if p == 2 {
                return FieldCtx::binary(k);
            }
            return Err(Error::UnsupportedField(format!(
                "GF({q}): odd-characteristic extensions are only available as TOWER({p})"
            )));
        }
        if let Some(body) = s.strip_prefix("TOWER(").and_then(|t| t.strip_suffix(')')) {
            let (p_s, cap) = match body.split_once(',') {
                Some((a, b)) => (
                    a.trim().to_string(),
                    b.trim().parse::<u8>().map_err(|_| bad())?,
                ),
                None => (body.trim().to_string(), DEFAULT_TOWER_CAP),
            };
            let p: u64 = p_s.parse().map_err(|_| bad())?;
            return FieldCtx::tower(p, cap);
        }
        Err(bad())
    }

    pub fn spec_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Prime(ff) => write!(f, "GF({})", ff.p()),
            FieldCtx::Binary(ff) => write!(f, "GF(2^{})", ff.k()),
            FieldCtx::Tower(ff) => {
                if ff.cap() == DEFAULT_TOWER_CAP {
                    write!(f, "TOWER({})", ff.p())
                } else {
                    write!(f, "TOWER({},{})", ff.p(), ff.cap())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings_round_trip() {
        for spec in ["GF(2)", "GF(7)", "GF(2^3)", "TOWER(3)", "TOWER(5,4)"] {
            let ctx = FieldCtx::parse_spec(spec).unwrap();
            assert_eq!(ctx.spec_string(), spec);
            assert_eq!(FieldCtx::parse_spec(&ctx.spec_string()).unwrap(), ctx);
        }
        // GF(4) normalizes to the explicit power form.
        let ctx = FieldCtx::parse_spec("GF(4)").unwrap();
        assert_eq!(ctx.spec_string(), "GF(2^2)");
        assert!(FieldCtx::parse_spec("GF(9)").is_err());
        assert!(FieldCtx::parse_spec("GF(6)").is_err());
    }

    #[test]
    fn element_text_round_trips() {
        let gf7 = FieldCtx::prime(7).unwrap();
        for v in 0..7 {
            let e = FieldElem::Prime(v);
            assert_eq!(gf7.parse_elem(&gf7.format_elem(&e)).unwrap(), e);
        }
        assert_eq!(gf7.parse_elem("-1").unwrap(), FieldElem::Prime(6));

        let gf8 = FieldCtx::binary(3).unwrap();
        let e = FieldElem::Binary(0b101);
        assert_eq!(gf8.format_elem(&e), "1:0:1");
        assert_eq!(gf8.parse_elem("1:0:1").unwrap(), e);
        assert_eq!(gf8.parse_elem("1").unwrap(), FieldElem::Binary(1));

        let t = FieldCtx::tower(3, 8).unwrap();
        let g = t.parse_elem("L1;0:1").unwrap();
        assert_eq!(t.format_elem(&g), "L1;0:1");
        // Non-minimal input normalizes on parse.
        assert_eq!(t.parse_elem("L1;2:0").unwrap(), t.embed_int(2));
        assert_eq!(t.parse_elem("2").unwrap(), t.embed_int(2));
    }

    #[test]
    fn square_closure_flags() {
        assert!(!FieldCtx::prime(3).unwrap().square_closed());
        assert!(FieldCtx::prime(2).unwrap().square_closed());
        assert!(FieldCtx::binary(2).unwrap().square_closed());
        assert!(FieldCtx::tower(3, 8).unwrap().square_closed());
    }
}
