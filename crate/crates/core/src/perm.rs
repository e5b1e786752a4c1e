use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::matrix::Matrix;

/// A permutation of {0, ..., n-1} in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse("not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img] = i;
        }
        Perm { images: inv }
    }

    /// self after other: (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| self.images[img] == i)
    }

    /// The 2-cycles (i, j) with i < j; meaningful for involutions.
    pub fn transpositions(&self) -> Vec<(usize, usize)> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &img)| i < img)
            .map(|(i, &img)| (i, img))
            .collect()
    }

    /// The permutation matrix with entry 1 at (sigma(i), i), so that
    /// M e_i = e_sigma(i).
    pub fn matrix(&self, ctx: &FieldCtx) -> Matrix {
        let n = self.images.len();
        Matrix::from_fn(ctx.clone(), n, |r, c| {
            if r == self.images[c] {
                ctx.one()
            } else {
                ctx.zero()
            }
        })
    }
}

/// All permutations of `n` points, generated in a deterministic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(Perm {
            images: cur.clone(),
        });
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}
