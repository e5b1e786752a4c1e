//! Orbit counting: the B-congruence recurrences, exhaustive enumeration of
//! canonical shapes, and a brute-force orbit oracle that partitions a whole
//! matrix class by breadth-first search over group generators.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::Matrix;
use crate::parabolic::ParabolicDescriptor;

pub const DEFAULT_BUDGET: u64 = 1 << 30;

/// C(n): number of B-congruence orbits of alternating n-by-n matrices.
/// C(0) = C(1) = 1, C(n) = C(n-1) + (n-1) C(n-2).
pub fn count_alt_orbits(n: usize) -> BigUint {
    let mut prev: BigUint = BigUint::from(1u32);
    let mut cur: BigUint = BigUint::from(1u32);
    if n == 0 {
        return prev;
    }
    for m in 2..=n {
        let next = &cur + BigUint::from(m as u64 - 1) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// D(n): number of B-congruence orbits of symmetric n-by-n matrices over a
/// square-closed field of odd characteristic.
/// D(0) = 1, D(1) = 2, D(n) = 2 D(n-1) + (n-1) D(n-2).
pub fn count_sym_orbits(n: usize) -> BigUint {
    let mut prev: BigUint = BigUint::from(1u32);
    let mut cur: BigUint = BigUint::from(2u32);
    if n == 0 {
        return prev;
    }
    for m in 2..=n {
        let next = BigUint::from(2u32) * &cur + BigUint::from(m as u64 - 1) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Canonical shapes that can be listed exhaustively.
#[derive(Clone, Debug)]
pub enum CanformKind {
    /// Alternating sub-permutations with 1 above the diagonal.
    AltOneMinusOne,
    /// Symmetric sub-permutation (0,1)-matrices.
    SymZeroOneSubperm,
    /// Specialized pseudo-permutations with entries in the given field.
    SpecializedPseudoPerm(FieldCtx),
}

const ENUM_DIM_LIMIT: usize = 8;

/// List every canonical-shape matrix of the requested kind. The two
/// field-free shapes are materialized over GF(3), the smallest field where
/// 1 and -1 differ.
pub fn enumerate_canforms(n: usize, kind: &CanformKind) -> Result<(BigUint, Vec<Matrix>)> {
    let list = match kind {
        CanformKind::AltOneMinusOne => {
            if n > ENUM_DIM_LIMIT {
                return Err(Error::TooLarge(format!(
                    "enumeration limited to n <= {ENUM_DIM_LIMIT}"
                )));
            }
            let ctx = FieldCtx::prime(3)?;
            let mut out = Vec::new();
            matchings(n, false, &mut Vec::new(), &mut |pairs, _| {
                let mut m = Matrix::zero(ctx.clone(), n);
                for &(i, j) in pairs {
                    m.set(i, j, ctx.one());
                    m.set(j, i, ctx.embed_int(-1));
                }
                out.push(m);
            });
            out
        }
        CanformKind::SymZeroOneSubperm => {
            if n > ENUM_DIM_LIMIT {
                return Err(Error::TooLarge(format!(
                    "enumeration limited to n <= {ENUM_DIM_LIMIT}"
                )));
            }
            let ctx = FieldCtx::prime(3)?;
            let mut out = Vec::new();
            matchings(n, true, &mut Vec::new(), &mut |pairs, fixed| {
                let mut m = Matrix::zero(ctx.clone(), n);
                for &(i, j) in pairs {
                    m.set(i, j, ctx.one());
                    m.set(j, i, ctx.one());
                }
                for &s in fixed {
                    m.set(s, s, ctx.one());
                }
                out.push(m);
            });
            out
        }
        CanformKind::SpecializedPseudoPerm(ctx) => {
            let space = ClassSpace::new(ctx.clone(), n, MatrixClass::Symmetric)?;
            if space.size > 1 << 22 {
                return Err(Error::TooLarge(format!(
                    "symmetric space of size {} too large to filter",
                    space.size
                )));
            }
            (0..space.size)
                .map(|code| space.matrix_of(code))
                .filter(|m| m.classify().specialized_pseudo_permutation)
                .collect()
        }
    };
    Ok((BigUint::from(list.len()), list))
}

/// Enumerate partial matchings of {0..n-1}; with `allow_fixed`, each
/// unmatched point may also be marked fixed. Calls `emit(pairs, fixed)`.
fn matchings(
    n: usize,
    allow_fixed: bool,
    state: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)], &[usize]),
) {
    fn rec(
        n: usize,
        allow_fixed: bool,
        taken: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        fixed: &mut Vec<usize>,
        emit: &mut impl FnMut(&[(usize, usize)], &[usize]),
    ) {
        let Some(i) = (0..n).find(|&i| !taken[i]) else {
            emit(pairs, fixed);
            return;
        };
        taken[i] = true;
        // i unmatched and unmarked
        rec(n, allow_fixed, taken, pairs, fixed, emit);
        if allow_fixed {
            fixed.push(i);
            rec(n, allow_fixed, taken, pairs, fixed, emit);
            fixed.pop();
        }
        for j in i + 1..n {
            if !taken[j] {
                taken[j] = true;
                pairs.push((i, j));
                rec(n, allow_fixed, taken, pairs, fixed, emit);
                pairs.pop();
                taken[j] = false;
            }
        }
        taken[i] = false;
    }
    let mut taken = vec![false; n];
    let mut fixed = Vec::new();
    rec(n, allow_fixed, &mut taken, state, &mut fixed, emit);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equivalence,
    Congruence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixClass {
    All,
    Symmetric,
    Alternating,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    U,
    B,
    Parabolic(ParabolicDescriptor),
}

/// An enumerable set of matrices: a small finite field and the free entries
/// of the class. Codes run in lexicographic (row-major) matrix order.
struct ClassSpace {
    ctx: FieldCtx,
    n: usize,
    class: MatrixClass,
    free: Vec<(usize, usize)>,
    q: u64,
    size: u64,
}

impl ClassSpace {
    fn new(ctx: FieldCtx, n: usize, class: MatrixClass) -> Result<ClassSpace> {
        let q = ctx.order().ok_or_else(|| {
            Error::BudgetExceeded("tower fields cannot be enumerated".into())
        })?;
        let mut free = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let keep = match class {
                    MatrixClass::All => true,
                    MatrixClass::Symmetric => r <= c,
                    MatrixClass::Alternating => r < c,
                };
                if keep {
                    free.push((r, c));
                }
            }
        }
        let mut size = 1u64;
        for _ in 0..free.len() {
            size = size.checked_mul(q).ok_or_else(|| {
                Error::BudgetExceeded(format!("{q}^{} matrices overflow", free.len()))
            })?;
        }
        Ok(ClassSpace {
            ctx,
            n,
            class,
            free,
            q,
            size,
        })
    }

    fn matrix_of(&self, code: u64) -> Matrix {
        let mut m = Matrix::zero(self.ctx.clone(), self.n);
        let mut rest = code;
        // First free entry is the most significant digit, so the low digits
        // extracted here fill the free positions from the back.
        for t in 0..self.free.len() {
            let digit = rest % self.q;
            rest /= self.q;
            let (r, c) = self.free[self.free.len() - 1 - t];
            let e = self.ctx.elem_from_index(digit);
            match self.class {
                MatrixClass::All => m.set(r, c, e),
                MatrixClass::Symmetric => {
                    m.set(c, r, e.clone());
                    m.set(r, c, e);
                }
                MatrixClass::Alternating => {
                    m.set(c, r, self.ctx.neg(&e));
                    m.set(r, c, e);
                }
            }
        }
        m
    }

    fn code_of(&self, m: &Matrix) -> u64 {
        let mut code = 0u64;
        for &(r, c) in &self.free {
            code = code * self.q + self.ctx.elem_to_index(m.get(r, c));
        }
        code
    }

    fn contains(&self, m: &Matrix) -> bool {
        match self.class {
            MatrixClass::All => true,
            MatrixClass::Symmetric => m.is_symmetric(),
            MatrixClass::Alternating => m.is_alternating(),
        }
    }
}

/// One generator application, expressed as row/column operations.
#[derive(Clone, Debug)]
enum Move {
    /// X <- g' X for g = I + c E_{src,dst}: row dst += c row src.
    LeftTransvection { src: usize, dst: usize, c: FieldElem },
    /// X <- X g for g = I + c E_{src,dst}: col dst += c col src.
    RightTransvection { src: usize, dst: usize, c: FieldElem },
    /// X <- g' X for a diagonal scaling at idx.
    LeftScale { idx: usize, c: FieldElem },
    /// X <- X g for a diagonal scaling at idx.
    RightScale { idx: usize, c: FieldElem },
    /// X <- g' X g for g = I + c E_{src,dst}.
    CongrTransvection { src: usize, dst: usize, c: FieldElem },
    /// X <- g' X g for a diagonal scaling at idx.
    CongrScale { idx: usize, c: FieldElem },
}

impl Move {
    fn apply(&self, m: &mut Matrix) {
        match self {
            Move::LeftTransvection { src, dst, c } => m.row_add(*src, *dst, c),
            Move::RightTransvection { src, dst, c } => m.col_add(*src, *dst, c),
            Move::LeftScale { idx, c } => m.scale_row(*idx, c),
            Move::RightScale { idx, c } => m.scale_col(*idx, c),
            Move::CongrTransvection { src, dst, c } => {
                m.row_add(*src, *dst, c);
                m.col_add(*src, *dst, c);
            }
            Move::CongrScale { idx, c } => {
                m.scale_row(*idx, c);
                m.scale_col(*idx, c);
            }
        }
    }
}

/// Transvection positions (u, v), u != v, allowed in the group's shape, plus
/// whether diagonal scalings belong to the group.
fn group_shape(group: &GroupKind, n: usize) -> (Vec<(usize, usize)>, bool) {
    match group {
        GroupKind::U => {
            let pos = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            (pos, false)
        }
        GroupKind::B => {
            let pos = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            (pos, true)
        }
        GroupKind::Parabolic(p) => {
            let mut pos = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && p.block_of(u) <= p.block_of(v) {
                        pos.push((u, v));
                    }
                }
            }
            (pos, true)
        }
    }
}

fn build_moves(ctx: &FieldCtx, n: usize, group: &GroupKind, relation: Relation) -> Vec<Move> {
    let (positions, scalings) = group_shape(group, n);
    let q = ctx.order().expect("enumerable field");
    let nonzero: Vec<FieldElem> = (1..q).map(|i| ctx.elem_from_index(i)).collect();
    let nonunit: Vec<FieldElem> = (2..q).map(|i| ctx.elem_from_index(i)).collect();
    let mut moves = Vec::new();
    for &(u, v) in &positions {
        for c in &nonzero {
            match relation {
                Relation::Equivalence => {
                    moves.push(Move::LeftTransvection {
                        src: u,
                        dst: v,
                        c: c.clone(),
                    });
                    moves.push(Move::RightTransvection {
                        src: u,
                        dst: v,
                        c: c.clone(),
                    });
                }
                Relation::Congruence => moves.push(Move::CongrTransvection {
                    src: u,
                    dst: v,
                    c: c.clone(),
                }),
            }
        }
    }
    if scalings {
        for t in 0..n {
            for c in &nonunit {
                match relation {
                    Relation::Equivalence => {
                        moves.push(Move::LeftScale {
                            idx: t,
                            c: c.clone(),
                        });
                        moves.push(Move::RightScale {
                            idx: t,
                            c: c.clone(),
                        });
                    }
                    Relation::Congruence => moves.push(Move::CongrScale {
                        idx: t,
                        c: c.clone(),
                    }),
                }
            }
        }
    }
    moves
}

/// An exact partition of a matrix class into group orbits.
pub struct OrbitPartition {
    space: ClassSpace,
    orbit_of_member: Vec<u32>,
    reps: Vec<Matrix>,
}

impl OrbitPartition {
    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    pub fn member_count(&self) -> u64 {
        self.orbit_of_member.len() as u64
    }

    /// Lexicographically least member of each orbit, by orbit id.
    pub fn representatives(&self) -> &[Matrix] {
        &self.reps
    }

    pub fn member_matrix(&self, idx: u64) -> Matrix {
        self.space.matrix_of(idx)
    }

    pub fn orbit_of_index(&self, idx: u64) -> u32 {
        self.orbit_of_member[idx as usize]
    }

    pub fn orbit_id_of(&self, m: &Matrix) -> Option<u32> {
        if m.n() != self.space.n || *m.ctx() != self.space.ctx || !self.space.contains(m) {
            return None;
        }
        Some(self.orbit_of_member[self.space.code_of(m) as usize])
    }

    /// Orbit labels in first-appearance order; equal labelings mean equal
    /// set partitions.
    pub fn signature(&self) -> &[u32] {
        &self.orbit_of_member
    }
}

/// Partition the matrix class into orbits of the group action by exhaustive
/// BFS. Equivalence orbits sweep the full matrix space even when a smaller
/// class is requested (two-sided moves leave the class), and the partition is
/// then restricted to class members. Congruence preserves symmetry and
/// alternation, so those classes are swept directly.
pub fn brute_orbits(
    ctx: &FieldCtx,
    n: usize,
    group: &GroupKind,
    relation: Relation,
    class: MatrixClass,
    budget: u64,
) -> Result<OrbitPartition> {
    brute_orbits_with_order(ctx, n, group, relation, class, budget, None)
}

/// Same as [`brute_orbits`] with an optional shuffle of the generator list;
/// the resulting partition must not depend on it.
pub fn brute_orbits_with_order(
    ctx: &FieldCtx,
    n: usize,
    group: &GroupKind,
    relation: Relation,
    class: MatrixClass,
    budget: u64,
    shuffle_seed: Option<u64>,
) -> Result<OrbitPartition> {
    if let GroupKind::Parabolic(p) = group {
        if p.n() != n {
            return Err(Error::DimensionMismatch(p.n(), n));
        }
    }
    let sweep_class = match relation {
        Relation::Equivalence => MatrixClass::All,
        Relation::Congruence => class,
    };
    let sweep = ClassSpace::new(ctx.clone(), n, sweep_class)?;
    let mut moves = build_moves(ctx, n, group, relation);
    if let Some(seed) = shuffle_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        moves.shuffle(&mut rng);
    }
    let cost = sweep
        .size
        .checked_mul(moves.len().max(1) as u64)
        .ok_or_else(|| Error::BudgetExceeded("cost overflow".into()))?;
    if cost > budget {
        return Err(Error::BudgetExceeded(format!(
            "{} matrices x {} generators exceeds budget {budget}",
            sweep.size,
            moves.len()
        )));
    }

    const UNSEEN: u32 = u32::MAX;
    let mut orbit_of: Vec<u32> = vec![UNSEEN; sweep.size as usize];
    let mut next_orbit = 0u32;
    let mut queue: Vec<u64> = Vec::new();
    for seed_code in 0..sweep.size {
        if orbit_of[seed_code as usize] != UNSEEN {
            continue;
        }
        let id = next_orbit;
        next_orbit = next_orbit
            .checked_add(1)
            .ok_or_else(|| Error::BudgetExceeded("too many orbits".into()))?;
        orbit_of[seed_code as usize] = id;
        queue.clear();
        queue.push(seed_code);
        while let Some(code) = queue.pop() {
            let base = sweep.matrix_of(code);
            for mv in &moves {
                let mut img = base.clone();
                mv.apply(&mut img);
                let img_code = sweep.code_of(&img);
                let slot = &mut orbit_of[img_code as usize];
                if *slot == UNSEEN {
                    *slot = id;
                    queue.push(img_code);
                }
            }
        }
    }

    // Restrict to the requested class and relabel orbits in first-appearance
    // order so the labeling is canonical for the partition.
    if sweep_class == class {
        let mut reps: Vec<Matrix> = Vec::new();
        let mut relabel: Vec<u32> = vec![UNSEEN; next_orbit as usize];
        let mut orbit_of_member = vec![0u32; sweep.size as usize];
        for code in 0..sweep.size {
            let old = orbit_of[code as usize];
            if relabel[old as usize] == UNSEEN {
                relabel[old as usize] = reps.len() as u32;
                reps.push(sweep.matrix_of(code));
            }
            orbit_of_member[code as usize] = relabel[old as usize];
        }
        Ok(OrbitPartition {
            space: sweep,
            orbit_of_member,
            reps,
        })
    } else {
        let members = ClassSpace::new(ctx.clone(), n, class)?;
        let mut reps: Vec<Matrix> = Vec::new();
        let mut relabel: Vec<u32> = vec![UNSEEN; next_orbit as usize];
        let mut orbit_of_member = vec![0u32; members.size as usize];
        for code in 0..members.size {
            let m = members.matrix_of(code);
            let old = orbit_of[sweep.code_of(&m) as usize];
            if relabel[old as usize] == UNSEEN {
                relabel[old as usize] = reps.len() as u32;
                reps.push(m);
            }
            orbit_of_member[code as usize] = relabel[old as usize];
        }
        Ok(OrbitPartition {
            space: members,
            orbit_of_member,
            reps,
        })
    }
}

/// A counted action: what was counted and how many orbits there are.
#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub n: usize,
    pub group: Option<GroupKind>,
    pub relation: Relation,
    pub class: MatrixClass,
    pub field: Option<FieldCtx>,
    pub count: BigUint,
    pub representatives: Option<Vec<Matrix>>,
}

impl OrbitCensus {
    pub fn from_recurrence(n: usize, class: MatrixClass) -> Result<OrbitCensus> {
        let count = match class {
            MatrixClass::Alternating => count_alt_orbits(n),
            MatrixClass::Symmetric => count_sym_orbits(n),
            MatrixClass::All => {
                return Err(Error::KindMismatch(
                    "recurrences exist for the symmetric and alternating classes".into(),
                ))
            }
        };
        Ok(OrbitCensus {
            n,
            group: Some(GroupKind::B),
            relation: Relation::Congruence,
            class,
            field: None,
            count,
            representatives: None,
        })
    }

    pub fn from_partition(
        n: usize,
        group: GroupKind,
        relation: Relation,
        class: MatrixClass,
        field: FieldCtx,
        partition: &OrbitPartition,
        with_reps: bool,
    ) -> OrbitCensus {
        OrbitCensus {
            n,
            group: Some(group),
            relation,
            class,
            field: Some(field),
            count: BigUint::from(partition.orbit_count()),
            representatives: with_reps.then(|| partition.representatives().to_vec()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_values() {
        let c: Vec<u64> = (0..9).map(|n| count_alt_orbits(n).try_into().unwrap()).collect();
        assert_eq!(c, vec![1, 1, 2, 4, 10, 26, 76, 232, 764]);
        let d: Vec<u64> = (0..9).map(|n| count_sym_orbits(n).try_into().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 5, 14, 43, 142, 499, 1850, 7193]);
    }

    #[test]
    fn enumerations_match_recurrences() {
        for n in 0..=6 {
            let (alt, list) = enumerate_canforms(n, &CanformKind::AltOneMinusOne).unwrap();
            assert_eq!(alt, count_alt_orbits(n));
            assert!(list.iter().all(|m| m.classify().one_minus_one));
            let (sym, list) = enumerate_canforms(n, &CanformKind::SymZeroOneSubperm).unwrap();
            assert_eq!(sym, count_sym_orbits(n));
            assert!(list
                .iter()
                .all(|m| m.is_symmetric() && m.is_sub_permutation() && m.is_zero_one()));
        }
        assert!(enumerate_canforms(9, &CanformKind::AltOneMinusOne).is_err());
    }

    #[test]
    fn specialized_enumeration_over_gf2() {
        let ctx = FieldCtx::prime(2).unwrap();
        let (_, list) =
            enumerate_canforms(3, &CanformKind::SpecializedPseudoPerm(ctx.clone())).unwrap();
        assert!(list
            .iter()
            .all(|m| m.classify().specialized_pseudo_permutation));
        // Sub-permutation (0,1)-matrices are specialized pseudo-permutations.
        let (sym_count, _) = enumerate_canforms(3, &CanformKind::SymZeroOneSubperm).unwrap();
        assert!(BigUint::from(list.len()) >= sym_count);
    }

    #[test]
    fn small_equivalence_partition() {
        let ctx = FieldCtx::prime(2).unwrap();
        let part = brute_orbits(
            &ctx,
            2,
            &GroupKind::B,
            Relation::Equivalence,
            MatrixClass::All,
            DEFAULT_BUDGET,
        )
        .unwrap();
        // One orbit per 2x2 sub-permutation (0,1)-matrix.
        assert_eq!(part.orbit_count(), 7);
    }

    #[test]
    fn alternating_congruence_matches_recurrence() {
        let ctx = FieldCtx::prime(2).unwrap();
        let part = brute_orbits(
            &ctx,
            3,
            &GroupKind::B,
            Relation::Congruence,
            MatrixClass::Alternating,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(BigUint::from(part.orbit_count()), count_alt_orbits(3));
    }

    #[test]
    fn trivial_group_gives_singletons() {
        let ctx = FieldCtx::prime(3).unwrap();
        let part = brute_orbits(
            &ctx,
            1,
            &GroupKind::U,
            Relation::Equivalence,
            MatrixClass::All,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(part.orbit_count(), 3);
    }

    #[test]
    fn partition_is_independent_of_generator_order() {
        let ctx = FieldCtx::prime(3).unwrap();
        let base = brute_orbits(
            &ctx,
            2,
            &GroupKind::B,
            Relation::Congruence,
            MatrixClass::Symmetric,
            DEFAULT_BUDGET,
        )
        .unwrap();
        for seed in [1u64, 42, 1234] {
            let shuffled = brute_orbits_with_order(
                &ctx,
                2,
                &GroupKind::B,
                Relation::Congruence,
                MatrixClass::Symmetric,
                DEFAULT_BUDGET,
                Some(seed),
            )
            .unwrap();
            assert_eq!(base.signature(), shuffled.signature());
            assert_eq!(base.representatives(), shuffled.representatives());
        }
    }

    #[test]
    fn budget_and_field_guards() {
        let gf5 = FieldCtx::prime(5).unwrap();
        assert!(matches!(
            brute_orbits(
                &gf5,
                4,
                &GroupKind::B,
                Relation::Equivalence,
                MatrixClass::All,
                DEFAULT_BUDGET
            ),
            Err(Error::BudgetExceeded(_))
        ));
        let tower = FieldCtx::tower(3, 8).unwrap();
        assert!(matches!(
            brute_orbits(
                &tower,
                2,
                &GroupKind::U,
                Relation::Congruence,
                MatrixClass::Symmetric,
                DEFAULT_BUDGET
            ),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn equivalence_restricted_to_a_class() {
        // B-equivalence orbits of symmetric 2x2 matrices over GF(2): the
        // sweep runs over all 16 matrices, the report over the 8 symmetric.
        let ctx = FieldCtx::prime(2).unwrap();
        let part = brute_orbits(
            &ctx,
            2,
            &GroupKind::B,
            Relation::Equivalence,
            MatrixClass::Symmetric,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(part.member_count(), 8);
        assert!(part.orbit_count() <= 7);
        for i in 0..part.member_count() {
            assert!(part.member_matrix(i).is_symmetric());
        }
    }
}
