//! Standard parabolic subgroups P (block upper triangular, given by a
//! composition of n), their Weyl groups W, the block-rank and cross-count
//! invariants, and the four-way P-equivalence criterion together with
//! P-congruence via reduced permutations.

use crate::congr;
use crate::equiv::b_equiv_canonical;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::perm::{all_perms, Perm};

/// A standard parabolic subgroup, described by its composition of n. The
/// Weyl-group orbits O_1..O_r on {1..n} are the consecutive blocks; M_i is
/// the largest index of O_i (as a 1-based count, so M_r = n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicDescriptor {
    n: usize,
    composition: Vec<usize>,
    block_of: Vec<usize>,
    maxima: Vec<usize>,
}

impl ParabolicDescriptor {
    /// Composition sizes -> parabolic; J holds (i, i+1) exactly when i and
    /// i+1 fall in one block.
    pub fn from_composition(sizes: &[usize]) -> Result<ParabolicDescriptor> {
        if sizes.is_empty() {
            return Err(Error::BadComposition("composition must be nonempty".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::BadComposition("block sizes must be positive".into()));
        }
        let n = sizes.iter().sum();
        let mut block_of = Vec::with_capacity(n);
        let mut maxima = Vec::with_capacity(sizes.len());
        let mut total = 0;
        for (b, &s) in sizes.iter().enumerate() {
            total += s;
            maxima.push(total);
            block_of.extend(std::iter::repeat_n(b, s));
        }
        Ok(ParabolicDescriptor {
            n,
            composition: sizes.to_vec(),
            block_of,
            maxima,
        })
    }

    /// The Borel case: composition (1, 1, ..., 1).
    pub fn borel(n: usize) -> ParabolicDescriptor {
        ParabolicDescriptor::from_composition(&vec![1; n]).expect("n >= 1")
    }

    /// The full group: composition (n).
    pub fn full(n: usize) -> ParabolicDescriptor {
        ParabolicDescriptor::from_composition(&[n]).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of W-orbits r.
    pub fn r(&self) -> usize {
        self.composition.len()
    }

    pub fn composition(&self) -> &[usize] {
        &self.composition
    }

    pub fn maxima(&self) -> &[usize] {
        &self.maxima
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    /// 0-based i such that the adjacent transposition (i, i+1) generates W.
    pub fn adjacent_transpositions(&self) -> Vec<usize> {
        (0..self.n.saturating_sub(1))
            .filter(|&i| self.block_of[i] == self.block_of[i + 1])
            .collect()
    }

    /// Every standard parabolic for dimension n (one per composition).
    pub fn all_for_n(n: usize) -> Vec<ParabolicDescriptor> {
        assert!(n >= 1);
        let mut out = Vec::new();
        for mask in 0u64..(1 << (n - 1)) {
            let mut sizes = Vec::new();
            let mut cur = 1;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    cur += 1;
                } else {
                    sizes.push(cur);
                    cur = 1;
                }
            }
            sizes.push(cur);
            out.push(ParabolicDescriptor::from_composition(&sizes).unwrap());
        }
        out
    }

    pub fn weyl_order(&self) -> u128 {
        self.composition
            .iter()
            .map(|&s| (1..=s as u128).product::<u128>())
            .product()
    }

    /// Materialize W as permutations of {0..n-1}; guarded because |W| grows
    /// factorially.
    pub fn weyl_elements(&self) -> Result<Vec<Perm>> {
        const LIMIT: u128 = 1 << 20;
        if self.weyl_order() > LIMIT {
            return Err(Error::TooLarge(format!(
                "|W| = {} exceeds the enumeration guard",
                self.weyl_order()
            )));
        }
        let mut result = vec![Perm::identity(self.n)];
        let mut start = 0;
        for &s in &self.composition {
            let block_perms = all_perms(s);
            let mut next = Vec::with_capacity(result.len() * block_perms.len());
            for base in &result {
                for bp in &block_perms {
                    let mut images: Vec<usize> = (0..self.n).map(|i| base.apply(i)).collect();
                    for i in 0..s {
                        images[start + i] = start + bp.apply(i);
                    }
                    next.push(Perm::from_images(images).unwrap());
                }
            }
            result = next;
            start += s;
        }
        Ok(result)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    BlockRank,
    CrossCount,
}

/// An r-by-r integer invariant table; block-rank tables carry a virtual zero
/// row and column at index 0 used by the inclusion-exclusion identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    pub kind: TableKind,
    r: usize,
    data: Vec<u64>,
}

impl InvariantTable {
    pub fn r(&self) -> usize {
        self.r
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.r + j]
    }

    /// 1-based access with the virtual zero row/column at index 0.
    pub fn bordered(&self, i: usize, j: usize) -> u64 {
        if i == 0 || j == 0 {
            0
        } else {
            self.get(i - 1, j - 1)
        }
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.r)
            .map(|i| (0..self.r).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// C[i,j] = rank of the M_j-rows-by-M_i-columns top-left block of C.
pub fn block_rank_table(c: &Matrix, p: &ParabolicDescriptor) -> Result<InvariantTable> {
    if c.n() != p.n() {
        return Err(Error::DimensionMismatch(c.n(), p.n()));
    }
    let r = p.r();
    let mut data = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            data.push(c.top_left_rank(p.maxima[j], p.maxima[i]) as u64);
        }
    }
    Ok(InvariantTable {
        kind: TableKind::BlockRank,
        r,
        data,
    })
}

/// Y{i,j} = #{k in S(f) : k in O_i, sigma(k) in O_j} for a sub-permutation Y.
pub fn cross_counts(y: &Matrix, p: &ParabolicDescriptor) -> Result<InvariantTable> {
    if y.n() != p.n() {
        return Err(Error::DimensionMismatch(y.n(), p.n()));
    }
    let couple = y.couple()?;
    let r = p.r();
    let mut data = vec![0u64; r * r];
    for k in couple.support(y.ctx()) {
        let i = p.block_of(k);
        let j = p.block_of(couple.sigma.apply(k));
        data[i * r + j] += 1;
    }
    Ok(InvariantTable {
        kind: TableKind::CrossCount,
        r,
        data,
    })
}

/// The inclusion-exclusion identity tying block ranks to cross counts:
/// Y[i,j] - Y[i-1,j] - Y[i,j-1] + Y[i-1,j-1] = Y{i,j} for 1 <= i,j <= r.
pub fn eq3_holds(y: &Matrix, p: &ParabolicDescriptor) -> Result<bool> {
    let br = block_rank_table(y, p)?;
    let cc = cross_counts(y, p)?;
    let r = p.r();
    for i in 1..=r {
        for j in 1..=r {
            let lhs = br.bordered(i, j) as i64 - br.bordered(i - 1, j) as i64
                - br.bordered(i, j - 1) as i64
                + br.bordered(i - 1, j - 1) as i64;
            if lhs != cc.get(i - 1, j - 1) as i64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Everything p_equivalent computes along the way; the decision itself is
/// the block-rank comparison.
#[derive(Clone, Debug)]
pub struct PEquivReport {
    pub related: bool,
    pub block_rank_left: InvariantTable,
    pub block_rank_right: InvariantTable,
    pub cross_left: InvariantTable,
    pub cross_right: InvariantTable,
    pub canonical_left: Matrix,
    pub canonical_right: Matrix,
}

/// Decide P-equivalence through the block-rank tables, cross-checking the
/// cross-count criterion on the B-equivalence canonical forms and the
/// inclusion-exclusion identity on every call.
pub fn p_equivalent(
    c: &Matrix,
    d: &Matrix,
    p: &ParabolicDescriptor,
) -> Result<(bool, PEquivReport)> {
    c.check_compat(d)?;
    if c.n() != p.n() {
        return Err(Error::DimensionMismatch(c.n(), p.n()));
    }
    let block_rank_left = block_rank_table(c, p)?;
    let block_rank_right = block_rank_table(d, p)?;
    let related = block_rank_left == block_rank_right;

    let (y, _) = b_equiv_canonical(c);
    let (z, _) = b_equiv_canonical(d);
    if block_rank_table(&y, p)? != block_rank_left || block_rank_table(&z, p)? != block_rank_right
    {
        return Err(Error::CriteriaDisagree(
            "block ranks changed under B-equivalence".into(),
        ));
    }
    if !eq3_holds(&y, p)? || !eq3_holds(&z, p)? {
        return Err(Error::CriteriaDisagree(
            "inclusion-exclusion identity failed on a canonical form".into(),
        ));
    }
    let cross_left = cross_counts(&y, p)?;
    let cross_right = cross_counts(&z, p)?;
    let by_cross = cross_left == cross_right;
    if by_cross != related {
        return Err(Error::CriteriaDisagree(format!(
            "block-rank criterion says {related}, cross-count criterion says {by_cross}"
        )));
    }
    Ok((
        related,
        PEquivReport {
            related,
            block_rank_left,
            block_rank_right,
            cross_left,
            cross_right,
            canonical_left: y,
            canonical_right: z,
        },
    ))
}

/// Y with rows permuted by w1 and columns by w2: (w1' Y w2)(r,c) = Y(w1 r, w2 c).
fn permuted(y: &Matrix, w1: &Perm, w2: &Perm) -> Matrix {
    Matrix::from_fn(y.ctx().clone(), y.n(), |r, c| {
        y.get(w1.apply(r), w2.apply(c)).clone()
    })
}

/// W-equivalence of sub-permutation matrices, decided by cross-count tables.
pub fn w_equivalent(y: &Matrix, z: &Matrix, p: &ParabolicDescriptor) -> Result<bool> {
    y.check_compat(z)?;
    Ok(cross_counts(y, p)? == cross_counts(z, p)?)
}

/// Exhaustive search over W x W; the oracle counterpart of [`w_equivalent`].
pub fn w_equivalent_exhaustive(
    y: &Matrix,
    z: &Matrix,
    p: &ParabolicDescriptor,
) -> Result<bool> {
    y.check_compat(z)?;
    if !y.is_sub_permutation() || !z.is_sub_permutation() {
        return Err(Error::NotSubPermutation);
    }
    let w = p.weyl_elements()?;
    for w1 in &w {
        let rowed = permuted(y, w1, &Perm::identity(p.n()));
        for w2 in &w {
            if permuted(&rowed, &Perm::identity(p.n()), w2) == *z {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The involution left after dropping the couple transpositions that stay
/// inside one W-orbit or sit outside the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPermutation {
    n: usize,
    transpositions: Vec<(usize, usize)>,
}

impl ReducedPermutation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn transpositions(&self) -> &[(usize, usize)] {
        &self.transpositions
    }

    pub fn is_empty(&self) -> bool {
        self.transpositions.is_empty()
    }

    fn perm(&self) -> Perm {
        let mut images: Vec<usize> = (0..self.n).collect();
        for &(i, j) in &self.transpositions {
            images[i] = j;
            images[j] = i;
        }
        Perm::from_images(images).expect("disjoint transpositions")
    }

    fn validate(&self, p: &ParabolicDescriptor) -> Result<()> {
        if self.n != p.n() {
            return Err(Error::DimensionMismatch(self.n, p.n()));
        }
        for &(i, j) in &self.transpositions {
            if i >= j || j >= self.n || p.block_of(i) == p.block_of(j) {
                return Err(Error::NotReduced);
            }
        }
        Ok(())
    }
}

/// sigma' of a symmetric or alternating sub-permutation matrix.
pub fn reduced_permutation(y: &Matrix, p: &ParabolicDescriptor) -> Result<ReducedPermutation> {
    if y.n() != p.n() {
        return Err(Error::DimensionMismatch(y.n(), p.n()));
    }
    let couple = y.couple()?;
    if !couple.sigma.is_involution() {
        return Err(Error::NotInvolutive);
    }
    let transpositions = couple
        .sigma
        .transpositions()
        .into_iter()
        .filter(|&(i, j)| {
            !y.ctx().is_zero(&couple.f[i]) && p.block_of(i) != p.block_of(j)
        })
        .collect();
    Ok(ReducedPermutation {
        n: p.n(),
        transpositions,
    })
}

/// W-conjugacy of reduced permutations: the crossing counts per unordered
/// orbit pair must match.
pub fn w_conjugate(
    s: &ReducedPermutation,
    t: &ReducedPermutation,
    p: &ParabolicDescriptor,
) -> Result<bool> {
    s.validate(p)?;
    t.validate(p)?;
    let count = |rp: &ReducedPermutation| {
        let mut counts = std::collections::BTreeMap::new();
        for &(i, j) in &rp.transpositions {
            let bi = p.block_of(i);
            let bj = p.block_of(j);
            *counts.entry((bi.min(bj), bi.max(bj))).or_insert(0u64) += 1;
        }
        counts
    };
    Ok(count(s) == count(t))
}

/// Exhaustive conjugation search over W; oracle counterpart of
/// [`w_conjugate`].
pub fn w_conjugate_exhaustive(
    s: &ReducedPermutation,
    t: &ReducedPermutation,
    p: &ParabolicDescriptor,
) -> Result<bool> {
    s.validate(p)?;
    t.validate(p)?;
    let sp = s.perm();
    let tp = t.perm();
    Ok(p.weyl_elements()?
        .iter()
        .any(|w| w.compose(&sp).compose(&w.inverse()) == tp))
}

/// Which congruence theorem applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CongrKind {
    Symmetric,
    Alternating,
}

#[derive(Clone, Debug)]
pub struct PCongrReport {
    pub related: bool,
    pub condition_a: bool,
    pub reduced_left: ReducedPermutation,
    pub reduced_right: ReducedPermutation,
    pub equivalence: PEquivReport,
}

/// P-congruence of symmetric (odd characteristic, square-closed field) or
/// alternating matrices: coincides with P-equivalence, and with the
/// W-conjugacy condition on the reduced permutations of the B-congruence
/// canonical forms together with equal diagonal cross counts. All three
/// routes are evaluated and must agree.
pub fn p_congruent(
    c: &Matrix,
    d: &Matrix,
    p: &ParabolicDescriptor,
    kind: CongrKind,
) -> Result<(bool, PCongrReport)> {
    c.check_compat(d)?;
    match kind {
        CongrKind::Symmetric => {
            if !c.is_symmetric() || !d.is_symmetric() {
                return Err(Error::KindMismatch("inputs must be symmetric".into()));
            }
            if c.ctx().characteristic() == 2 || !c.ctx().square_closed() {
                return Err(Error::KindMismatch(
                    "symmetric P-congruence needs an odd-characteristic square-closed field"
                        .into(),
                ));
            }
        }
        CongrKind::Alternating => {
            if !c.is_alternating() || !d.is_alternating() {
                return Err(Error::KindMismatch("inputs must be alternating".into()));
            }
        }
    }
    let (related, equivalence) = p_equivalent(c, d, p)?;
    let canon = |m: &Matrix| -> Result<Matrix> {
        Ok(match kind {
            CongrKind::Symmetric => congr::b_congr_canonical_sym(m)?.0,
            CongrKind::Alternating => congr::b_congr_canonical_alt(m)?.0,
        })
    };
    let yc = canon(c)?;
    let zc = canon(d)?;
    let reduced_left = reduced_permutation(&yc, p)?;
    let reduced_right = reduced_permutation(&zc, p)?;
    let conj = w_conjugate(&reduced_left, &reduced_right, p)?;
    let diag_left = cross_counts(&yc, p)?;
    let diag_right = cross_counts(&zc, p)?;
    let diags_equal = (0..p.r()).all(|i| diag_left.get(i, i) == diag_right.get(i, i));
    let condition_a = conj && diags_equal;
    if condition_a != related {
        return Err(Error::CriteriaDisagree(format!(
            "P-equivalence says {related}, W-conjugacy condition says {condition_a}"
        )));
    }
    Ok((
        related,
        PCongrReport {
            related,
            condition_a,
            reduced_left,
            reduced_right,
            equivalence,
        },
    ))
}
