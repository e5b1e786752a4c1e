//! Canonical representatives under U- and B-congruence (u' X u = Y) for
//! symmetric and alternating matrices, across all characteristic cases.
//!
//! Odd characteristic reduces a symmetric matrix to a sub-permutation matrix.
//! In characteristic 2 the diagonal cannot always be cleared; the reduction
//! then lands on a pseudo-permutation, and a second phase removes the
//! problematic X-pairs to reach the unique specialized pseudo-permutation.

use crate::equiv::GroupTag;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::Matrix;

/// The single upper-triangular witness u with u' X u = Y.
#[derive(Clone, Debug)]
pub struct CongrWitness {
    pub u: Matrix,
    pub group: GroupTag,
}

impl CongrWitness {
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        self.u.transpose().mul(x)?.mul(&self.u)
    }
}

/// X-pairs, X-indices and the problematic subset of a pseudo-permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairStructure {
    pub pairs: Vec<(usize, usize)>,
    pub indices: Vec<usize>,
    pub problematic: Vec<(usize, usize)>,
}

impl PairStructure {
    pub fn of(m: &Matrix) -> Result<PairStructure> {
        m.pseudo_structure()
            .map(|s| PairStructure {
                pairs: s.pairs,
                indices: s.indices,
                problematic: s.problematic,
            })
            .ok_or(Error::NotPseudoPermutation)
    }
}

/// Working state: the matrix being reduced and the accumulated witness.
struct Reducer {
    y: Matrix,
    u: Matrix,
    ctx: FieldCtx,
    n: usize,
}

impl Reducer {
    fn new(x: &Matrix) -> Reducer {
        Reducer {
            y: x.clone(),
            u: Matrix::identity(x.ctx().clone(), x.n()),
            ctx: x.ctx().clone(),
            n: x.n(),
        }
    }

    /// Congruence by I + c E_{src,dst} (src < dst): row dst += c row src,
    /// then col dst += c col src; the sequential order realizes u' X u
    /// exactly, including the c^2 X_ss term on the diagonal.
    fn transvection(&mut self, src: usize, dst: usize, c: &FieldElem) {
        debug_assert!(src < dst);
        if self.ctx.is_zero(c) {
            return;
        }
        self.y.row_add(src, dst, c);
        self.y.col_add(src, dst, c);
        self.u.col_add(src, dst, c);
    }

    /// Congruence by an invertible diagonal matrix.
    fn diag_scale(&mut self, d: &[FieldElem]) {
        for (t, dt) in d.iter().enumerate() {
            self.y.scale_row(t, dt);
            self.y.scale_col(t, dt);
            self.u.scale_col(t, dt);
        }
    }

    /// Symmetric congruence reduction. Scans for the topmost still-active
    /// nonzero row i and its leftmost nonzero column j (j >= i by symmetry),
    /// clears the off-pivot entries of rows/columns i and j, and in odd
    /// characteristic also kills the (j, j) diagonal entry. With `keep_diag`
    /// the diagonal survives and the result is a pseudo-permutation.
    fn reduce(&mut self, keep_diag: bool) -> Result<()> {
        let mut active = vec![true; self.n];
        while let Some(i) = (0..self.n)
            .find(|&r| active[r] && (0..self.n).any(|c| !self.y.is_zero_at(r, c)))
        {
            let j = (0..self.n)
                .find(|&c| !self.y.is_zero_at(i, c))
                .expect("row i is nonzero");
            debug_assert!(j >= i && active[j]);
            if j == i {
                let dinv = self.ctx.inv(self.y.get(i, i))?;
                for c in i + 1..self.n {
                    if !self.y.is_zero_at(i, c) {
                        let t = self.ctx.neg(&self.ctx.mul(self.y.get(i, c), &dinv));
                        self.transvection(i, c, &t);
                    }
                }
                active[i] = false;
            } else {
                let a = self.y.get(i, j).clone();
                let ainv = self.ctx.inv(&a)?;
                for c in j + 1..self.n {
                    if !self.y.is_zero_at(i, c) {
                        let t = self.ctx.neg(&self.ctx.mul(self.y.get(i, c), &ainv));
                        self.transvection(j, c, &t);
                    }
                }
                for r in i + 1..self.n {
                    if r != j && !self.y.is_zero_at(r, j) {
                        let t = self.ctx.neg(&self.ctx.mul(self.y.get(r, j), &ainv));
                        self.transvection(i, r, &t);
                    }
                }
                if !keep_diag && !self.y.is_zero_at(j, j) {
                    // Adds 2ca to the (j, j) entry; possible only away from
                    // characteristic 2.
                    let two_a = self.ctx.mul(&self.ctx.embed_int(2), &a);
                    let c = self.ctx.neg(&self.ctx.div(self.y.get(j, j), &two_a)?);
                    self.transvection(i, j, &c);
                }
                active[i] = false;
                active[j] = false;
            }
        }
        Ok(())
    }

    /// Phase 2 of the characteristic-2 symmetric case: while a problematic
    /// pair (i, j) exists, cancel its diagonal entry against an interior
    /// index or an inside pair (choosing a with a^2 Z_ll = Z_jj, which exists
    /// because squaring is onto), then re-clear the spoiled entries through
    /// Z_ji and Z_ij. Each round removes exactly one pair.
    fn specialize(&mut self) -> Result<()> {
        loop {
            let s = self
                .y
                .pseudo_structure()
                .expect("reduction output stays a pseudo-permutation");
            let Some(&(i, j)) = s.problematic.iter().min_by_key(|&&(pi, pj)| (pj, pi)) else {
                break;
            };
            let pair_count = s.pairs.len();
            let interior = s
                .indices
                .iter()
                .copied()
                .filter(|&t| i < t && t < j)
                .min();
            if let Some(t) = interior {
                let a = self.ctx.sqrt(&self.ctx.div(self.y.get(j, j), self.y.get(t, t))?)?;
                self.transvection(t, j, &a);
                let c = self
                    .ctx
                    .neg(&self.ctx.div(self.y.get(j, t), self.y.get(j, i))?);
                self.transvection(i, t, &c);
            } else {
                let (k, l) = s
                    .pairs
                    .iter()
                    .copied()
                    .filter(|&(k, l)| i < k && l < j)
                    .min_by_key(|&(k, l)| (l, k))
                    .expect("a problematic pair has an inside pair or interior index");
                let a = self.ctx.sqrt(&self.ctx.div(self.y.get(j, j), self.y.get(l, l))?)?;
                self.transvection(l, j, &a);
                let ck = self
                    .ctx
                    .neg(&self.ctx.div(self.y.get(j, k), self.y.get(j, i))?);
                self.transvection(i, k, &ck);
                let cl = self
                    .ctx
                    .neg(&self.ctx.div(self.y.get(j, l), self.y.get(j, i))?);
                self.transvection(i, l, &cl);
            }
            let after = self
                .y
                .pseudo_structure()
                .expect("specialization keeps the pseudo-permutation shape");
            assert!(
                after.pairs.len() < pair_count,
                "problematic-pair elimination must remove a pair"
            );
        }
        Ok(())
    }

    fn finish(self, group: GroupTag) -> (Matrix, CongrWitness) {
        (self.y, CongrWitness { u: self.u, group })
    }
}

fn require_symmetric(x: &Matrix) -> Result<()> {
    if !x.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

fn require_alternating(x: &Matrix) -> Result<()> {
    if !x.is_alternating() {
        return Err(Error::NotAlternating);
    }
    Ok(())
}

/// U-congruence canonical form of a symmetric matrix, characteristic != 2:
/// the unique sub-permutation matrix in the orbit.
pub fn u_congr_canonical_sym(x: &Matrix) -> Result<(Matrix, CongrWitness)> {
    require_symmetric(x)?;
    if x.ctx().characteristic() == 2 {
        return Err(Error::Char2);
    }
    let mut r = Reducer::new(x);
    r.reduce(false)?;
    debug_assert!(r.y.is_sub_permutation());
    Ok(r.finish(GroupTag::U))
}

/// U-congruence canonical form of an alternating matrix, any characteristic.
pub fn u_congr_canonical_alt(x: &Matrix) -> Result<(Matrix, CongrWitness)> {
    require_alternating(x)?;
    // The diagonal stays zero throughout, so the diagonal-killing step never
    // fires and the same reduction works in every characteristic.
    let mut r = Reducer::new(x);
    r.reduce(x.ctx().characteristic() == 2)?;
    debug_assert!(r.y.is_sub_permutation() && r.y.is_alternating());
    Ok(r.finish(GroupTag::U))
}

/// U-congruence canonical form of a symmetric matrix in characteristic 2
/// over a perfect field: the unique specialized pseudo-permutation.
pub fn u_congr_canonical_sym_char2(x: &Matrix) -> Result<(Matrix, CongrWitness)> {
    require_symmetric(x)?;
    if x.ctx().characteristic() != 2 {
        return Err(Error::NotChar2);
    }
    let mut r = Reducer::new(x);
    r.reduce(true)?;
    r.specialize()?;
    debug_assert!(r.y.classify().specialized_pseudo_permutation);
    Ok(r.finish(GroupTag::U))
}

/// B-congruence canonical form of a symmetric matrix, characteristic != 2:
/// the sub-permutation (0,1)-matrix. Fixed points need square roots, so the
/// F = F^2 hypothesis matters; over a plain prime field a non-square value
/// surfaces as [`Error::NonSquare`].
pub fn b_congr_canonical_sym(x: &Matrix) -> Result<(Matrix, CongrWitness)> {
    let (y, w) = u_congr_canonical_sym(x)?;
    let ctx = y.ctx().clone();
    let n = y.n();
    let mut d = vec![ctx.one(); n];
    for c in 0..n {
        let Some(r) = (0..n).find(|&r| !y.is_zero_at(r, c)) else {
            continue;
        };
        if r == c {
            d[c] = ctx.inv(&ctx.sqrt(y.get(c, c))?)?;
        } else if r > c {
            // Couple (c, r): scale the larger index so d_c d_r f = 1.
            d[r] = ctx.inv(y.get(r, c))?;
        }
    }
    let mut red = Reducer {
        y,
        u: w.u,
        ctx,
        n,
    };
    red.diag_scale(&d);
    debug_assert!(red.y.is_sub_permutation() && red.y.is_zero_one());
    Ok(red.finish(GroupTag::B))
}

/// B-congruence canonical form of an alternating matrix: the (1,-1)-matrix.
/// Needs only division, so it works over every field.
pub fn b_congr_canonical_alt(x: &Matrix) -> Result<(Matrix, CongrWitness)> {
    let (y, w) = u_congr_canonical_alt(x)?;
    let ctx = y.ctx().clone();
    let n = y.n();
    let mut d = vec![ctx.one(); n];
    for c in 0..n {
        if let Some(r) = (c + 1..n).find(|&r| !y.is_zero_at(r, c)) {
            // Above-diagonal entry of this couple is (c, r); make it 1.
            d[r] = ctx.inv(y.get(c, r))?;
        }
    }
    let mut red = Reducer {
        y,
        u: w.u,
        ctx,
        n,
    };
    red.diag_scale(&d);
    debug_assert!(red.y.classify().one_minus_one);
    Ok(red.finish(GroupTag::B))
}

/// B-congruence canonical form in characteristic 2: the specialized
/// pseudo-permutation (0,1)-matrix. Pair diagonals fix d_j by a square root,
/// the pair value then fixes d_i; plain couples need only division.
pub fn b_congr_canonical_sym_char2(x: &Matrix) -> Result<(Matrix, CongrWitness)> {
    let (y, w) = u_congr_canonical_sym_char2(x)?;
    let ctx = y.ctx().clone();
    let n = y.n();
    let structure = y
        .pseudo_structure()
        .expect("canonical form is a pseudo-permutation");
    let mut d = vec![ctx.one(); n];
    let mut done = vec![false; n];
    for &(i, j) in &structure.pairs {
        d[j] = ctx.inv(&ctx.sqrt(y.get(j, j))?)?;
        d[i] = ctx.inv(&ctx.mul(&d[j], y.get(i, j)))?;
        done[i] = true;
        done[j] = true;
    }
    for &s in &structure.indices {
        d[s] = ctx.inv(&ctx.sqrt(y.get(s, s))?)?;
        done[s] = true;
    }
    for c in 0..n {
        if done[c] {
            continue;
        }
        if let Some(r) = (c + 1..n).find(|&r| !y.is_zero_at(r, c)) {
            d[r] = ctx.inv(y.get(c, r))?;
            done[c] = true;
            done[r] = true;
        }
    }
    let mut red = Reducer {
        y,
        u: w.u,
        ctx,
        n,
    };
    red.diag_scale(&d);
    debug_assert!(red.y.classify().specialized_pseudo_permutation && red.y.is_zero_one());
    Ok(red.finish(GroupTag::B))
}

/// Zero out Y_jj of every Y-pair; the result is a sub-permutation matrix
/// equivalent (not congruent) to Y.
pub fn hat(y: &Matrix) -> Result<Matrix> {
    let s = PairStructure::of(y)?;
    let mut out = y.clone();
    for (_, j) in s.pairs {
        out.set(j, j, y.ctx().zero());
    }
    debug_assert!(out.is_sub_permutation());
    Ok(out)
}

/// Dispatch on the matrix kind: alternating matrices take the alternating
/// route (any characteristic), symmetric ones the characteristic-appropriate
/// route. Anything else is rejected.
pub fn u_congr_canonical(x: &Matrix) -> Result<(Matrix, CongrWitness)> {
    if x.is_alternating() {
        u_congr_canonical_alt(x)
    } else if x.is_symmetric() {
        if x.ctx().characteristic() == 2 {
            u_congr_canonical_sym_char2(x)
        } else {
            u_congr_canonical_sym(x)
        }
    } else {
        Err(Error::KindMismatch(
            "congruence canonical forms need a symmetric or alternating matrix".into(),
        ))
    }
}

pub fn b_congr_canonical(x: &Matrix) -> Result<(Matrix, CongrWitness)> {
    if x.is_alternating() {
        b_congr_canonical_alt(x)
    } else if x.is_symmetric() {
        if x.ctx().characteristic() == 2 {
            b_congr_canonical_sym_char2(x)
        } else {
            b_congr_canonical_sym(x)
        }
    } else {
        Err(Error::KindMismatch(
            "congruence canonical forms need a symmetric or alternating matrix".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::witness_in_group;

    fn gf(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    fn check(x: &Matrix, y: &Matrix, w: &CongrWitness) {
        assert!(witness_in_group(&w.u, w.group));
        assert_eq!(&w.apply(x).unwrap(), y);
    }

    #[test]
    fn sym_odd_char_examples() {
        let ctx = gf(3);
        let x = Matrix::from_int(&ctx, &[&[0, 1], &[1, 1]]);
        let expect = Matrix::from_int(&ctx, &[&[0, 1], &[1, 0]]);
        let (y, w) = u_congr_canonical_sym(&x).unwrap();
        assert_eq!(y, expect);
        check(&x, &y, &w);

        for fixed in [
            Matrix::from_int(&ctx, &[&[0, 1], &[1, 0]]),
            Matrix::from_int(&ctx, &[&[2, 0], &[0, 1]]),
        ] {
            let (y, w) = u_congr_canonical_sym(&fixed).unwrap();
            assert_eq!(y, fixed);
            check(&fixed, &y, &w);
        }
    }

    #[test]
    fn alternating_examples() {
        let ctx = gf(3);
        let x = Matrix::from_int(&ctx, &[&[0, 1], &[-1, 0]]);
        let (y, w) = u_congr_canonical_alt(&x).unwrap();
        assert_eq!(y, x);
        check(&x, &y, &w);

        let zero = Matrix::zero(ctx.clone(), 2);
        assert_eq!(u_congr_canonical_alt(&zero).unwrap().0, zero);

        let x = Matrix::from_int(
            &ctx,
            &[
                &[0, 1, 0, 1],
                &[-1, 0, 0, 0],
                &[0, 0, 0, 1],
                &[-1, 0, -1, 0],
            ],
        );
        let expect = Matrix::from_int(
            &ctx,
            &[
                &[0, 1, 0, 0],
                &[-1, 0, 0, 0],
                &[0, 0, 0, 1],
                &[0, 0, -1, 0],
            ],
        );
        let (y, w) = u_congr_canonical_alt(&x).unwrap();
        assert_eq!(y, expect);
        check(&x, &y, &w);
    }

    #[test]
    fn char2_fixture_x3() {
        let ctx = gf(2);
        let x = Matrix::from_int(&ctx, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 1]]);
        let expect = Matrix::from_int(&ctx, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let (y, w) = u_congr_canonical_sym_char2(&x).unwrap();
        assert_eq!(y, expect);
        check(&x, &y, &w);
    }

    #[test]
    fn char2_fixture_y4() {
        let ctx = gf(2);
        let x = Matrix::from_int(
            &ctx,
            &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 1, 0], &[1, 0, 0, 1]],
        );
        let expect = Matrix::from_int(
            &ctx,
            &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 1, 0], &[1, 0, 0, 0]],
        );
        let (y, w) = u_congr_canonical_sym_char2(&x).unwrap();
        assert_eq!(y, expect);
        check(&x, &y, &w);
    }

    #[test]
    fn char2_specialized_is_fixed() {
        let ctx = gf(2);
        let first_display = Matrix::from_int(
            &ctx,
            &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 1]],
        );
        let (y, w) = u_congr_canonical_sym_char2(&first_display).unwrap();
        assert_eq!(y, first_display);
        check(&first_display, &y, &w);
        let (y, _) = b_congr_canonical_sym_char2(&first_display).unwrap();
        assert_eq!(y, first_display);
    }

    #[test]
    fn b_congr_scales_to_zero_one() {
        let tower = FieldCtx::tower(3, 8).unwrap();
        let x = Matrix::from_int(&tower, &[&[2, 0], &[0, 0]]);
        let expect = Matrix::from_int(&tower, &[&[1, 0], &[0, 0]]);
        let (y, w) = b_congr_canonical_sym(&x).unwrap();
        assert_eq!(y, expect);
        check(&x, &y, &w);

        let id = Matrix::identity(tower.clone(), 2);
        assert_eq!(b_congr_canonical_sym(&id).unwrap().0, id);

        let swap = Matrix::from_int(&tower, &[&[0, 1], &[1, 0]]);
        assert_eq!(b_congr_canonical_sym(&swap).unwrap().0, swap);

        // Over GF(3) the fixed-point value 2 is a non-square.
        let bad = Matrix::from_int(&gf(3), &[&[2, 0], &[0, 0]]);
        assert!(matches!(
            b_congr_canonical_sym(&bad),
            Err(Error::NonSquare(_))
        ));
    }

    #[test]
    fn b_congr_alt_scaling() {
        let ctx = gf(3);
        let x = Matrix::from_int(&ctx, &[&[0, 2], &[-2, 0]]);
        let expect = Matrix::from_int(&ctx, &[&[0, 1], &[-1, 0]]);
        let (y, w) = b_congr_canonical_alt(&x).unwrap();
        assert_eq!(y, expect);
        check(&x, &y, &w);

        let gf5 = gf(5);
        let x = Matrix::from_int(
            &gf5,
            &[
                &[0, 2, 0, 0],
                &[-2, 0, 0, 0],
                &[0, 0, 0, 0],
                &[0, 0, 0, 0],
            ],
        );
        let expect = Matrix::from_int(
            &gf5,
            &[
                &[0, 1, 0, 0],
                &[-1, 0, 0, 0],
                &[0, 0, 0, 0],
                &[0, 0, 0, 0],
            ],
        );
        let (y, w) = b_congr_canonical_alt(&x).unwrap();
        assert_eq!(y, expect);
        check(&x, &y, &w);
    }

    #[test]
    fn b_congr_char2_over_gf4() {
        let gf4 = FieldCtx::binary(2).unwrap();
        let w_elem = FieldElem::Binary(0b10);
        let mut x = Matrix::zero(gf4.clone(), 2);
        x.set(0, 0, w_elem.clone());
        let expect = Matrix::from_int(&gf4, &[&[1, 0], &[0, 0]]);
        let (y, w) = b_congr_canonical_sym_char2(&x).unwrap();
        assert_eq!(y, expect);
        check(&x, &y, &w);
        // The witness entry is 1/sqrt(w) = (w+1)^-1 = w.
        assert_eq!(*w.u.get(0, 0), w_elem);

        let mut x = Matrix::identity(gf4.clone(), 2);
        x.set(1, 1, w_elem);
        let (y, w) = b_congr_canonical_sym_char2(&x).unwrap();
        assert_eq!(y, Matrix::identity(gf4.clone(), 2));
        check(&x, &y, &w);
    }

    #[test]
    fn hat_strips_pair_diagonals() {
        let ctx = gf(2);
        let x = Matrix::from_int(&ctx, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 1]]);
        let expect = Matrix::from_int(&ctx, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(hat(&x).unwrap(), expect);
        assert_eq!(hat(&expect).unwrap(), expect);

        let y = Matrix::from_int(
            &ctx,
            &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 1, 0], &[1, 0, 0, 1]],
        );
        let expect = Matrix::from_int(
            &ctx,
            &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]],
        );
        assert_eq!(hat(&y).unwrap(), expect);

        assert!(hat(&Matrix::from_int(&ctx, &[&[1, 1], &[1, 0]])).is_err());
    }

    #[test]
    fn kind_and_characteristic_errors() {
        let gf2 = gf(2);
        let gf3 = gf(3);
        let sym2 = Matrix::identity(gf2.clone(), 2);
        assert!(matches!(u_congr_canonical_sym(&sym2), Err(Error::Char2)));
        let sym3 = Matrix::identity(gf3.clone(), 2);
        assert!(matches!(
            u_congr_canonical_sym_char2(&sym3),
            Err(Error::NotChar2)
        ));
        let asym = Matrix::from_int(&gf3, &[&[0, 1], &[0, 0]]);
        assert!(matches!(
            u_congr_canonical_sym(&asym),
            Err(Error::NotSymmetric)
        ));
        assert!(matches!(
            u_congr_canonical_alt(&sym3),
            Err(Error::NotAlternating)
        ));
        assert!(matches!(
            u_congr_canonical(&asym),
            Err(Error::KindMismatch(_))
        ));
    }
}
