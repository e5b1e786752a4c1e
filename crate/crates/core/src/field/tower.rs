//! The square-closed quadratic tower over an odd prime field.
//!
//! Level l represents GF(p^(2^l)); level l+1 is the degree-2 extension of
//! level l obtained by adjoining a square root of ns_l, the first non-square
//! of level l in a fixed deterministic enumeration. Every element of a level
//! is a square one level up, so the union is a field of odd characteristic in
//! which every element is a square.

use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};

pub const DEFAULT_TOWER_CAP: u8 = 8;
pub const MAX_TOWER_CAP: u8 = 12;

/// An element of the tower, kept at its minimal level.
///
/// `coeffs` has length 2^level; splitting it in halves (low, high) expresses
/// the element as low + high * g_level with g_level^2 = ns_(level-1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerElem {
    level: u8,
    coeffs: Vec<u64>,
}

impl TowerElem {
    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn normalized(mut coeffs: Vec<u64>, mut level: u8) -> TowerElem {
        while level > 0 {
            let half = coeffs.len() / 2;
            if coeffs[half..].iter().all(|&c| c == 0) {
                coeffs.truncate(half);
                level -= 1;
            } else {
                break;
            }
        }
        TowerElem { level, coeffs }
    }
}

#[derive(Debug)]
struct TowerInner {
    p: u64,
    cap: u8,
    // ns[l] = full-width (2^l coefficients) non-square of level l.
    ns: RwLock<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug)]
pub struct TowerField {
    inner: Arc<TowerInner>,
}

impl PartialEq for TowerField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.cap == other.inner.cap
    }
}
impl Eq for TowerField {}

/// Scalar helpers mod p plus the non-square table; recursion never touches
/// the lock once a snapshot is taken.
struct Ops<'a> {
    p: u64,
    ns: &'a [Vec<u64>],
}

impl<'a> Ops<'a> {
    fn padd(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn psub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn pmul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn ppow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.pmul(acc, base);
            }
            base = self.pmul(base, base);
            exp >>= 1;
        }
        acc
    }
    fn pinv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.ppow(a, self.p - 2)
    }

    fn vadd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.padd(x, y)).collect()
    }
    fn vsub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.psub(x, y)).collect()
    }
    fn vneg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| self.psub(0, x)).collect()
    }
    fn vscale(&self, a: &[u64], c: u64) -> Vec<u64> {
        a.iter().map(|&x| self.pmul(x, c)).collect()
    }
    fn vzero(a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn vmul(&self, level: u8, a: &[u64], b: &[u64]) -> Vec<u64> {
        if level == 0 {
            return vec![self.pmul(a[0], b[0])];
        }
        let h = a.len() / 2;
        let (a0, a1) = a.split_at(h);
        let (b0, b1) = b.split_at(h);
        let ns = &self.ns[level as usize - 1];
        let low = self.vadd(
            &self.vmul(level - 1, a0, b0),
            &self.vmul(level - 1, ns, &self.vmul(level - 1, a1, b1)),
        );
        let high = self.vadd(
            &self.vmul(level - 1, a0, b1),
            &self.vmul(level - 1, a1, b0),
        );
        let mut out = low;
        out.extend(high);
        out
    }

    /// Norm down to the previous level: N(a0 + a1 g) = a0^2 - ns a1^2.
    fn vnorm(&self, level: u8, a: &[u64]) -> Vec<u64> {
        debug_assert!(level >= 1);
        let h = a.len() / 2;
        let (a0, a1) = a.split_at(h);
        let ns = &self.ns[level as usize - 1];
        self.vsub(
            &self.vmul(level - 1, a0, a0),
            &self.vmul(level - 1, ns, &self.vmul(level - 1, a1, a1)),
        )
    }

    fn vinv(&self, level: u8, a: &[u64]) -> Result<Vec<u64>> {
        if Self::vzero(a) {
            return Err(Error::DivisionByZero);
        }
        if level == 0 {
            return Ok(vec![self.pinv(a[0])]);
        }
        let h = a.len() / 2;
        let (a0, a1) = a.split_at(h);
        // (a0 + a1 g)^-1 = (a0 - a1 g) / (a0^2 - ns a1^2); the denominator is
        // nonzero because ns is a non-square one level down.
        let denom = self.vnorm(level, a);
        let di = self.vinv(level - 1, &denom)?;
        let mut out = self.vmul(level - 1, a0, &di);
        out.extend(self.vmul(level - 1, &self.vneg(a1), &di));
        Ok(out)
    }

    /// Quadratic-residue test within a level; descends along the norm.
    fn vis_square(&self, level: u8, a: &[u64]) -> bool {
        if Self::vzero(a) {
            return true;
        }
        if level == 0 {
            return self.ppow(a[0], (self.p - 1) / 2) == 1;
        }
        let norm = self.vnorm(level, a);
        self.vis_square(level - 1, &norm)
    }

    /// A square root within the level, or None if the element is a non-square
    /// there. For a0 + a1 g with a1 != 0 the root u + v g satisfies
    /// u^2 = (a0 ± sqrt(N))/2 (exactly one branch is a nonzero square) and
    /// v = a1 / 2u.
    fn vsqrt(&self, level: u8, a: &[u64]) -> Option<Vec<u64>> {
        if Self::vzero(a) {
            return Some(vec![0; a.len()]);
        }
        if level == 0 {
            return (0..self.p)
                .find(|&s| self.pmul(s, s) == a[0])
                .map(|s| vec![s]);
        }
        let h = a.len() / 2;
        let (a0, a1) = a.split_at(h);
        let ns = &self.ns[level as usize - 1];
        if Self::vzero(a1) {
            if self.vis_square(level - 1, a0) {
                let mut out = self.vsqrt(level - 1, a0)?;
                out.extend(vec![0; h]);
                return Some(out);
            }
            // a0 and ns are both non-squares below, so a0/ns is a square and
            // (c g)^2 = c^2 ns = a0.
            let t = self.vmul(level - 1, a0, &self.vinv(level - 1, ns).ok()?);
            let c = self.vsqrt(level - 1, &t)?;
            let mut out = vec![0; h];
            out.extend(c);
            return Some(out);
        }
        let norm = self.vnorm(level, a);
        if !self.vis_square(level - 1, &norm) {
            return None;
        }
        let r = self.vsqrt(level - 1, &norm)?;
        let half = self.pinv(2);
        for cand in [
            self.vscale(&self.vadd(a0, &r), half),
            self.vscale(&self.vsub(a0, &r), half),
        ] {
            if !Self::vzero(&cand) && self.vis_square(level - 1, &cand) {
                let u = self.vsqrt(level - 1, &cand)?;
                let two_u = self.vscale(&u, 2);
                let v = self
                    .vmul(level - 1, a1, &self.vinv(level - 1, &two_u).ok()?);
                let mut out = u;
                out.extend(v);
                return Some(out);
            }
        }
        None
    }
}

fn lift(coeffs: &[u64], to_width: usize) -> Vec<u64> {
    let mut out = coeffs.to_vec();
    out.resize(to_width, 0);
    out
}

impl TowerField {
    pub fn new(p: u64, cap: u8) -> Result<Self> {
        let base = super::prime::PrimeField::new(p)?;
        if base.p() == 2 {
            return Err(Error::UnsupportedField(
                "the quadratic tower requires an odd prime".into(),
            ));
        }
        if cap == 0 || cap > MAX_TOWER_CAP {
            return Err(Error::UnsupportedField(format!(
                "tower level cap {cap} is outside 1..={MAX_TOWER_CAP}"
            )));
        }
        Ok(TowerField {
            inner: Arc::new(TowerInner {
                p,
                cap,
                ns: RwLock::new(Vec::new()),
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn cap(&self) -> u8 {
        self.inner.cap
    }

    /// Non-squares up to `level - 1` inclusive, growing the cached table as
    /// needed. Levels are filled in order, so concurrent growth is safe.
    fn snapshot(&self, level: u8) -> Vec<Vec<u64>> {
        {
            let ns = self.inner.ns.read().unwrap();
            if ns.len() >= level as usize {
                return ns[..level as usize].to_vec();
            }
        }
        let mut ns = self.inner.ns.write().unwrap();
        while ns.len() < level as usize {
            let l = ns.len() as u8;
            let ops = Ops {
                p: self.inner.p,
                ns: &ns,
            };
            // First non-square in the fixed enumeration: coefficient vectors
            // read as base-p counters, coefficient 0 fastest.
            let width = 1usize << l;
            let mut digits = vec![0u64; width];
            let found = loop {
                if !ops.vis_square(l, &digits) {
                    break digits.clone();
                }
                let mut i = 0;
                loop {
                    assert!(i < width, "no non-square found at tower level {l}");
                    digits[i] += 1;
                    if digits[i] < self.inner.p {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
            };
            ns.push(found);
        }
        ns[..level as usize].to_vec()
    }

    pub fn zero(&self) -> TowerElem {
        TowerElem {
            level: 0,
            coeffs: vec![0],
        }
    }

    pub fn embed(&self, r: u64) -> TowerElem {
        TowerElem {
            level: 0,
            coeffs: vec![r % self.inner.p],
        }
    }

    pub fn make_elem(&self, level: u8, coeffs: Vec<u64>) -> Result<TowerElem> {
        if level > self.inner.cap {
            return Err(Error::TowerLevel {
                level,
                cap: self.inner.cap,
            });
        }
        if coeffs.len() != 1usize << level {
            return Err(Error::Parse(format!(
                "tower level {level} needs {} coefficients, got {}",
                1usize << level,
                coeffs.len()
            )));
        }
        let coeffs = coeffs.into_iter().map(|c| c % self.inner.p).collect();
        Ok(TowerElem::normalized(coeffs, level))
    }

    fn binop(
        &self,
        a: &TowerElem,
        b: &TowerElem,
        f: impl Fn(&Ops, u8, &[u64], &[u64]) -> Vec<u64>,
    ) -> TowerElem {
        let level = a.level.max(b.level);
        let width = 1usize << level;
        let table = self.snapshot(level);
        let ops = Ops {
            p: self.inner.p,
            ns: &table,
        };
        let av = lift(&a.coeffs, width);
        let bv = lift(&b.coeffs, width);
        TowerElem::normalized(f(&ops, level, &av, &bv), level)
    }

    pub fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.binop(a, b, |ops, _, x, y| ops.vadd(x, y))
    }

    pub fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.binop(a, b, |ops, _, x, y| ops.vsub(x, y))
    }

    pub fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.binop(a, b, |ops, level, x, y| ops.vmul(level, x, y))
    }

    pub fn neg(&self, a: &TowerElem) -> TowerElem {
        let table = self.snapshot(a.level);
        let ops = Ops {
            p: self.inner.p,
            ns: &table,
        };
        TowerElem::normalized(ops.vneg(&a.coeffs), a.level)
    }

    pub fn inv(&self, a: &TowerElem) -> Result<TowerElem> {
        let table = self.snapshot(a.level);
        let ops = Ops {
            p: self.inner.p,
            ns: &table,
        };
        Ok(TowerElem::normalized(
            ops.vinv(a.level, &a.coeffs)?,
            a.level,
        ))
    }

    pub fn is_square(&self, a: &TowerElem) -> bool {
        let table = self.snapshot(a.level);
        let ops = Ops {
            p: self.inner.p,
            ns: &table,
        };
        ops.vis_square(a.level, &a.coeffs)
    }

    /// Square root, searching the element's own level first and lifting one
    /// level when the element is a non-square there. Lifting past the cap is
    /// an error rather than silent degradation.
    pub fn sqrt(&self, a: &TowerElem) -> Result<TowerElem> {
        let table = self.snapshot(a.level);
        let ops = Ops {
            p: self.inner.p,
            ns: &table,
        };
        if let Some(root) = ops.vsqrt(a.level, &a.coeffs) {
            return Ok(TowerElem::normalized(root, a.level));
        }
        let up = a.level + 1;
        if up > self.inner.cap {
            return Err(Error::TowerLevel {
                level: up,
                cap: self.inner.cap,
            });
        }
        let table = self.snapshot(up);
        let ops = Ops {
            p: self.inner.p,
            ns: &table,
        };
        let lifted = lift(&a.coeffs, 1usize << up);
        let root = ops
            .vsqrt(up, &lifted)
            .expect("every element is a square one level up");
        Ok(TowerElem::normalized(root, up))
    }

    /// Re-normalization to minimal level; idempotent by construction.
    pub fn normalize(&self, a: &TowerElem) -> TowerElem {
        TowerElem::normalized(a.coeffs.clone(), a.level)
    }

    pub fn random_at<R: rand::Rng>(&self, rng: &mut R, level: u8) -> TowerElem {
        let level = level.min(self.inner.cap);
        let coeffs = (0..1usize << level)
            .map(|_| rng.gen_range(0..self.inner.p))
            .collect();
        TowerElem::normalized(coeffs, level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3() -> TowerField {
        TowerField::new(3, 8).unwrap()
    }

    #[test]
    fn first_nonsquares_over_gf3() {
        let f = t3();
        let table = f.snapshot(2);
        assert_eq!(table[0], vec![2]);
        // Squares of GF(9) are {0, 1, 2, g, 2g}; the first non-square in the
        // base-3 counter order 0,1,2,g,1+g,... is 1+g.
        assert_eq!(table[1], vec![1, 1]);
    }

    #[test]
    fn sqrt_of_two_is_the_level_one_generator() {
        let f = t3();
        let two = f.embed(2);
        assert!(!f.is_square(&two));
        let root = f.sqrt(&two).unwrap();
        assert_eq!(root.level(), 1);
        assert_eq!(root.coeffs(), &[0, 1]);
        assert_eq!(f.mul(&root, &root), two);
        // g is not fixed by the base-field Frobenius: g^3 != g.
        let g3 = f.mul(&f.mul(&root, &root), &root);
        assert_ne!(g3, root);
    }

    #[test]
    fn normalization_trims_embedded_elements() {
        let f = t3();
        let e = f.make_elem(1, vec![2, 0]).unwrap();
        assert_eq!(e.level(), 0);
        assert_eq!(e.coeffs(), &[2]);
        let one = f.embed(1);
        assert_eq!(f.normalize(&one), one);
        let g = f.make_elem(1, vec![0, 1]).unwrap();
        assert_eq!(g.level(), 1);
    }

    #[test]
    fn sqrt_squares_back_exhaustively_at_level_one() {
        let f = t3();
        for c0 in 0..3 {
            for c1 in 0..3 {
                let e = f.make_elem(1, vec![c0, c1]).unwrap();
                let r = f.sqrt(&e).unwrap();
                assert_eq!(f.mul(&r, &r), e, "sqrt({c0}+{c1}g)");
                assert!(r.level() <= 2);
            }
        }
    }

    #[test]
    fn inverse_law_at_level_two() {
        let f = t3();
        let e = f.make_elem(2, vec![1, 2, 0, 1]).unwrap();
        let i = f.inv(&e).unwrap();
        assert_eq!(f.mul(&e, &i), f.embed(1));
    }

    #[test]
    fn cap_is_enforced() {
        let f = TowerField::new(3, 1).unwrap();
        // 1+g is the first non-square of GF(9); its root lives at level 2,
        // beyond the cap.
        let x = f.make_elem(1, vec![1, 1]).unwrap();
        assert!(!f.is_square(&x));
        assert!(matches!(
            f.sqrt(&x),
            Err(Error::TowerLevel { level: 2, cap: 1 })
        ));
    }
}
