//! Dense exact matrices, rank, structural predicates, and couple extraction.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::perm::Perm;

/// An n-by-n matrix over a single field context, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    ctx: FieldCtx,
    entries: Vec<FieldElem>,
}

/// Structural flags; each is computed independently of the others.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MatrixFlags {
    pub symmetric: bool,
    pub alternating: bool,
    pub sub_permutation: bool,
    pub zero_one: bool,
    pub one_minus_one: bool,
    pub pseudo_permutation: bool,
    pub specialized_pseudo_permutation: bool,
}

/// The pair (f, sigma) with X e_i = f(i) e_sigma(i). Only sigma restricted to
/// the support of f is determined by the matrix; the completion off the
/// support is a fixed convention (see [`Matrix::couple`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubPermCouple {
    pub f: Vec<FieldElem>,
    pub sigma: Perm,
}

impl SubPermCouple {
    /// Indices where f does not vanish.
    pub fn support(&self, ctx: &FieldCtx) -> Vec<usize> {
        (0..self.f.len())
            .filter(|&i| !ctx.is_zero(&self.f[i]))
            .collect()
    }

    pub fn rebuild(&self, ctx: &FieldCtx) -> Matrix {
        let n = self.f.len();
        let mut m = Matrix::zero(ctx.clone(), n);
        for i in 0..n {
            if !ctx.is_zero(&self.f[i]) {
                m.set(self.sigma.apply(i), i, self.f[i].clone());
            }
        }
        m
    }
}

/// Pseudo-permutation structure: X-pairs (i, j) with X_ij and X_jj nonzero,
/// X-indices s whose column holds only the diagonal entry, and the subset of
/// pairs that are problematic (a pair inside, or an interior index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PseudoStructure {
    pub pairs: Vec<(usize, usize)>,
    pub indices: Vec<usize>,
    pub problematic: Vec<(usize, usize)>,
}

impl Matrix {
    pub fn new(ctx: FieldCtx, n: usize, entries: Vec<FieldElem>) -> Result<Matrix> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(entries.len(), n * n));
        }
        if let Some(e) = entries.iter().find(|e| !ctx.owns(e)) {
            return Err(Error::Parse(format!(
                "entry {e:?} does not belong to {ctx}"
            )));
        }
        Ok(Matrix { n, ctx, entries })
    }

    pub fn zero(ctx: FieldCtx, n: usize) -> Matrix {
        let z = ctx.zero();
        Matrix {
            n,
            ctx,
            entries: vec![z; n * n],
        }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Matrix {
        Matrix::from_fn(ctx.clone(), n, |r, c| {
            if r == c {
                ctx.one()
            } else {
                ctx.zero()
            }
        })
    }

    pub fn from_fn(ctx: FieldCtx, n: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Matrix {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Matrix { n, ctx, entries }
    }

    /// Build from small-integer rows; handy in tests and for fixtures.
    pub fn from_int(ctx: &FieldCtx, rows: &[&[i64]]) -> Matrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        Matrix::from_fn(ctx.clone(), n, |r, c| ctx.embed_int(rows[r][c]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.entries[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.entries[r * self.n + c] = v;
    }

    #[inline]
    pub fn is_zero_at(&self, r: usize, c: usize) -> bool {
        self.ctx.is_zero(self.get(r, c))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ctx.clone(), self.n, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compat(other)?;
        let n = self.n;
        Ok(Matrix::from_fn(self.ctx.clone(), n, |r, c| {
            let mut acc = self.ctx.zero();
            for k in 0..n {
                if !self.is_zero_at(r, k) && !other.is_zero_at(k, c) {
                    acc = self
                        .ctx
                        .add(&acc, &self.ctx.mul(self.get(r, k), other.get(k, c)));
                }
            }
            acc
        }))
    }

    pub fn check_compat(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// row[dst] += c * row[src]
    pub fn row_add(&mut self, src: usize, dst: usize, c: &FieldElem) {
        debug_assert_ne!(src, dst);
        for col in 0..self.n {
            let t = self.ctx.mul(self.get(src, col), c);
            let v = self.ctx.add(self.get(dst, col), &t);
            self.set(dst, col, v);
        }
    }

    /// col[dst] += c * col[src]
    pub fn col_add(&mut self, src: usize, dst: usize, c: &FieldElem) {
        debug_assert_ne!(src, dst);
        for row in 0..self.n {
            let t = self.ctx.mul(self.get(row, src), c);
            let v = self.ctx.add(self.get(row, dst), &t);
            self.set(row, dst, v);
        }
    }

    pub fn scale_row(&mut self, r: usize, c: &FieldElem) {
        for col in 0..self.n {
            let v = self.ctx.mul(self.get(r, col), c);
            self.set(r, col, v);
        }
    }

    pub fn scale_col(&mut self, col: usize, c: &FieldElem) {
        for row in 0..self.n {
            let v = self.ctx.mul(self.get(row, col), c);
            self.set(row, col, v);
        }
    }

    /// Rank of the top-left rows-by-cols block via exact Gaussian elimination
    /// with leftmost-nonzero pivoting. Zero-sized blocks have rank 0.
    pub fn top_left_rank(&self, rows: usize, cols: usize) -> usize {
        assert!(rows <= self.n && cols <= self.n);
        if rows == 0 || cols == 0 {
            return 0;
        }
        let ctx = &self.ctx;
        let mut m: Vec<Vec<FieldElem>> = (0..rows)
            .map(|r| (0..cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !ctx.is_zero(&m[r][col])) else {
                continue;
            };
            m.swap(rank, pr);
            let (upper, lower) = m.split_at_mut(rank + 1);
            let pivot_row = &upper[rank];
            for row in lower.iter_mut() {
                if !ctx.is_zero(&row[col]) {
                    let factor = ctx.div(&row[col], &pivot_row[col]).expect("pivot is nonzero");
                    for (dst, src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *dst = ctx.sub(dst, &ctx.mul(src, &factor));
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub fn rank(&self) -> usize {
        self.top_left_rank(self.n, self.n)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|r| (r + 1..self.n).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// X' = -X with zero diagonal; the diagonal condition keeps the notion
    /// correct in characteristic 2.
    pub fn is_alternating(&self) -> bool {
        (0..self.n).all(|i| self.is_zero_at(i, i))
            && (0..self.n).all(|r| {
                (r + 1..self.n)
                    .all(|c| *self.get(r, c) == self.ctx.neg(self.get(c, r)))
            })
    }

    pub fn is_sub_permutation(&self) -> bool {
        for r in 0..self.n {
            if (0..self.n).filter(|&c| !self.is_zero_at(r, c)).count() > 1 {
                return false;
            }
        }
        for c in 0..self.n {
            if (0..self.n).filter(|&r| !self.is_zero_at(r, c)).count() > 1 {
                return false;
            }
        }
        true
    }

    pub fn is_zero_one(&self) -> bool {
        let one = self.ctx.one();
        self.entries
            .iter()
            .all(|e| self.ctx.is_zero(e) || *e == one)
    }

    pub(crate) fn pseudo_structure(&self) -> Option<PseudoStructure> {
        if !self.is_symmetric() {
            return None;
        }
        let mut pairs = Vec::new();
        let mut indices = Vec::new();
        for c in 0..self.n {
            let nz: Vec<usize> = (0..self.n).filter(|&r| !self.is_zero_at(r, c)).collect();
            match nz.len() {
                0 | 1 => {
                    if nz.len() == 1 && nz[0] == c {
                        indices.push(c);
                    }
                }
                2 => {
                    // A doubly-occupied column j must hold X_jj and X_ij, i < j.
                    if nz[1] != c || nz[0] >= c {
                        return None;
                    }
                    pairs.push((nz[0], c));
                }
                _ => return None,
            }
        }
        let problematic = pairs
            .iter()
            .copied()
            .filter(|&(i, j)| {
                let pair_inside = pairs.iter().any(|&(k, l)| i < k && k < l && l < j);
                let interior_index = indices.iter().any(|&s| i < s && s < j);
                pair_inside || interior_index
            })
            .collect();
        Some(PseudoStructure {
            pairs,
            indices,
            problematic,
        })
    }

    pub fn classify(&self) -> MatrixFlags {
        let symmetric = self.is_symmetric();
        let alternating = self.is_alternating();
        let sub_permutation = self.is_sub_permutation();
        let zero_one = self.is_zero_one();
        let one = self.ctx.one();
        let one_minus_one = alternating
            && sub_permutation
            && (0..self.n).all(|r| {
                (r + 1..self.n).all(|c| self.is_zero_at(r, c) || *self.get(r, c) == one)
            });
        let structure = self.pseudo_structure();
        let pseudo_permutation = structure.is_some();
        let specialized_pseudo_permutation = structure
            .as_ref()
            .map(|s| s.problematic.is_empty())
            .unwrap_or(false);
        MatrixFlags {
            symmetric,
            alternating,
            sub_permutation,
            zero_one,
            one_minus_one,
            pseudo_permutation,
            specialized_pseudo_permutation,
        }
    }

    /// The couple (f, sigma) of a sub-permutation matrix. Off the support,
    /// unused indices pair with unused codomain indices in increasing order,
    /// except that symmetric and alternating matrices take fixed points so
    /// that sigma stays an involution.
    pub fn couple(&self) -> Result<SubPermCouple> {
        let n = self.n;
        let mut f = vec![self.ctx.zero(); n];
        let mut images: Vec<Option<usize>> = vec![None; n];
        let mut row_used = vec![false; n];
        for c in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&r| !self.is_zero_at(r, c)).collect();
            match nz.len() {
                0 => {}
                1 => {
                    let r = nz[0];
                    if row_used[r] {
                        return Err(Error::NotSubPermutation);
                    }
                    row_used[r] = true;
                    f[c] = self.get(r, c).clone();
                    images[c] = Some(r);
                }
                _ => return Err(Error::NotSubPermutation),
            }
        }
        let symmetric_like = self.is_symmetric() || self.is_alternating();
        let mut final_images = vec![0usize; n];
        if symmetric_like {
            for c in 0..n {
                final_images[c] = images[c].unwrap_or(c);
            }
        } else {
            let free_cod: Vec<usize> = (0..n).filter(|&r| !row_used[r]).collect();
            let mut next = free_cod.into_iter();
            for c in 0..n {
                final_images[c] = match images[c] {
                    Some(r) => r,
                    None => next.next().expect("domain and codomain gaps match"),
                };
            }
        }
        let sigma = Perm::from_images(final_images).expect("images form a permutation");
        Ok(SubPermCouple { f, sigma })
    }
}
