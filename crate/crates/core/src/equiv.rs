//! Canonical representatives under B-equivalence and U-equivalence, with
//! transforming witnesses: Y = h' X k with h, k in the acting group.

use crate::error::Result;

use crate::matrix::Matrix;

/// Which triangular group acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupTag {
    U,
    B,
}

/// The pair (h, k) with h' X k = Y. Witnesses are valid but not canonical:
/// different pivot schedules give different witnesses for the same Y.
#[derive(Clone, Debug)]
pub struct EquivWitness {
    pub h: Matrix,
    pub k: Matrix,
    pub group: GroupTag,
}

impl EquivWitness {
    /// h' X k, for checking the witness identity exactly.
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        self.h.transpose().mul(x)?.mul(&self.k)
    }
}

fn eliminate(x: &Matrix, scale_pivots: bool) -> (Matrix, EquivWitness) {
    let n = x.n();
    let ctx = x.ctx().clone();
    let mut y = x.clone();
    // ht accumulates the lower-unitriangular left factor h'; k the right one.
    let mut ht = Matrix::identity(ctx.clone(), n);
    let mut k = Matrix::identity(ctx.clone(), n);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        let Some(j) = (0..n).find(|&c| !y.is_zero_at(i, c)) else {
            continue;
        };
        let pivot = y.get(i, j).clone();
        let pivot_inv = ctx.inv(&pivot).expect("pivot is nonzero");
        // Clear the pivot column below row i (lower-unitriangular left action).
        for r in i + 1..n {
            if !y.is_zero_at(r, j) {
                let c = ctx.neg(&ctx.mul(y.get(r, j), &pivot_inv));
                y.row_add(i, r, &c);
                ht.row_add(i, r, &c);
            }
        }
        // Clear the pivot row right of column j (unit upper right action).
        for c2 in j + 1..n {
            if !y.is_zero_at(i, c2) {
                let t = ctx.neg(&ctx.mul(y.get(i, c2), &pivot_inv));
                y.col_add(j, c2, &t);
                k.col_add(j, c2, &t);
            }
        }
        pivots.push((i, j));
    }
    if scale_pivots {
        for (i, j) in pivots {
            let d = ctx.inv(y.get(i, j)).expect("pivot is nonzero");
            y.scale_col(j, &d);
            k.scale_col(j, &d);
        }
    }
    debug_assert!(y.is_sub_permutation());
    let group = if scale_pivots { GroupTag::B } else { GroupTag::U };
    (
        y,
        EquivWitness {
            h: ht.transpose(),
            k,
            group,
        },
    )
}

/// The unique sub-permutation (0,1)-matrix B-equivalent to X.
pub fn b_equiv_canonical(x: &Matrix) -> (Matrix, EquivWitness) {
    eliminate(x, true)
}

/// The unique sub-permutation matrix U-equivalent to X; uniqueness includes
/// the nonzero values, so no pivot scaling happens here.
pub fn u_equiv_canonical(x: &Matrix) -> (Matrix, EquivWitness) {
    eliminate(x, false)
}

pub fn b_equivalent(a: &Matrix, b: &Matrix) -> Result<bool> {
    a.check_compat(b)?;
    Ok(b_equiv_canonical(a).0 == b_equiv_canonical(b).0)
}

pub fn u_equivalent(a: &Matrix, b: &Matrix) -> Result<bool> {
    a.check_compat(b)?;
    Ok(u_equiv_canonical(a).0 == u_equiv_canonical(b).0)
}

/// Check the witness group shape: upper triangular, invertible diagonal, and
/// unit diagonal for U.
pub fn witness_in_group(m: &Matrix, tag: GroupTag) -> bool {
    let ctx = m.ctx();
    let one = ctx.one();
    for r in 0..m.n() {
        for c in 0..r {
            if !m.is_zero_at(r, c) {
                return false;
            }
        }
        match tag {
            GroupTag::U => {
                if *m.get(r, r) != one {
                    return false;
                }
            }
            GroupTag::B => {
                if m.is_zero_at(r, r) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn gf2() -> FieldCtx {
        FieldCtx::prime(2).unwrap()
    }
    fn gf3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }

    fn check_witness(x: &Matrix, y: &Matrix, w: &EquivWitness) {
        assert!(witness_in_group(&w.h, w.group));
        assert!(witness_in_group(&w.k, w.group));
        assert_eq!(&w.apply(x).unwrap(), y);
    }

    #[test]
    fn identity_and_zero_are_fixed() {
        for ctx in [gf2(), gf3()] {
            for m in [Matrix::identity(ctx.clone(), 3), Matrix::zero(ctx.clone(), 3)] {
                let (y, w) = b_equiv_canonical(&m);
                assert_eq!(y, m);
                check_witness(&m, &y, &w);
                let (y, w) = u_equiv_canonical(&m);
                assert_eq!(y, m);
                check_witness(&m, &y, &w);
            }
        }
    }

    #[test]
    fn char2_fixture_reduces_to_the_antidiagonal() {
        let ctx = gf2();
        let x = Matrix::from_int(&ctx, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 1]]);
        let anti = Matrix::from_int(&ctx, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let (y, w) = b_equiv_canonical(&x);
        assert_eq!(y, anti);
        check_witness(&x, &y, &w);
        assert!(b_equivalent(&x, &anti).unwrap());
        assert!(!b_equivalent(&Matrix::identity(ctx.clone(), 3), &anti).unwrap());
    }

    #[test]
    fn u_equivalence_keeps_values() {
        let ctx = gf3();
        let d = Matrix::from_int(&ctx, &[&[2, 0], &[0, 0]]);
        let (y, w) = u_equiv_canonical(&d);
        assert_eq!(y, d);
        check_witness(&d, &y, &w);

        let ctx = gf2();
        let x = Matrix::from_int(&ctx, &[&[0, 1], &[1, 1]]);
        let expect = Matrix::from_int(&ctx, &[&[0, 1], &[1, 0]]);
        let (y, w) = u_equiv_canonical(&x);
        assert_eq!(y, expect);
        check_witness(&x, &y, &w);
    }

    #[test]
    fn canonical_is_idempotent() {
        let ctx = gf3();
        let x = Matrix::from_int(&ctx, &[&[1, 2, 0], &[2, 2, 1], &[0, 1, 1]]);
        let (y, _) = b_equiv_canonical(&x);
        assert_eq!(b_equiv_canonical(&y).0, y);
        let (y, _) = u_equiv_canonical(&x);
        assert_eq!(u_equiv_canonical(&y).0, y);
    }

    #[test]
    fn errors_on_mismatched_inputs() {
        let a = Matrix::identity(gf2(), 2);
        let b = Matrix::identity(gf2(), 3);
        assert!(b_equivalent(&a, &b).is_err());
        let c = Matrix::identity(gf3(), 2);
        assert!(u_equivalent(&a, &c).is_err());
    }
}
