//! Oracle suites. Every uniqueness and equivalence claim the crate relies on
//! is verified here at desk scale: brute-force orbit partitions from the
//! census module are compared against the canonicalizers and deciders, and
//! randomized property suites exercise the square-closed tower where no
//! finite field applies. The CLI `verify` verb and the acceptance test
//! target both run these checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::{
    brute_orbits, count_alt_orbits, count_sym_orbits, enumerate_canforms, CanformKind, GroupKind,
    MatrixClass, Relation,
};
use crate::congr;
use crate::equiv::{self, witness_in_group, GroupTag};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem, TowerField};
use crate::matrix::Matrix;
use crate::parabolic::{
    block_rank_table, cross_counts, eq3_holds, p_congruent, p_equivalent, reduced_permutation,
    w_conjugate, w_conjugate_exhaustive, CongrKind, ParabolicDescriptor,
};

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;
pub const DEFAULT_PROPERTY_ITERS: usize = 10_000;

/// One verified claim with a human-readable outcome line.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "{}: {} - {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn run(name: &str, f: impl FnOnce() -> Result<String>) -> Check {
    match f() {
        Ok(detail) => Check {
            name: name.into(),
            passed: true,
            detail,
        },
        Err(e) => Check {
            name: name.into(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(Error::CriteriaDisagree(format!($($arg)*)));
        }
    };
}

fn gf(p: u64) -> FieldCtx {
    FieldCtx::prime(p).expect("small prime")
}

/// Radix code of a matrix over an enumerable field; used to key sets of
/// matrices cheaply.
fn matrix_code(m: &Matrix) -> u64 {
    let q = m.ctx().order().expect("enumerable field");
    let mut code = 0u64;
    for r in 0..m.n() {
        for c in 0..m.n() {
            code = code * q + m.ctx().elem_to_index(m.get(r, c));
        }
    }
    code
}

/// Every n-by-n matrix over an enumerable field, in code order.
fn for_each_matrix(ctx: &FieldCtx, n: usize, mut f: impl FnMut(&Matrix)) {
    let q = ctx.order().expect("enumerable field");
    let cells = n * n;
    let total = q.pow(cells as u32);
    let mut digits = vec![0u64; cells];
    let mut m = Matrix::zero(ctx.clone(), n);
    for _ in 0..total {
        f(&m);
        // Advance the odometer (last cell fastest) and patch the matrix.
        for t in (0..cells).rev() {
            digits[t] += 1;
            if digits[t] < q {
                m.set(t / n, t % n, ctx.elem_from_index(digits[t]));
                break;
            }
            digits[t] = 0;
            m.set(t / n, t % n, ctx.elem_from_index(0));
        }
    }
}

/// Uniqueness of equivalence representatives: in every B-equivalence orbit
/// there is exactly one sub-permutation (0,1)-matrix and the canonicalizer
/// maps every member to it; same under U with values retained.
pub fn equivalence_oracle(budget: u64) -> Result<String> {
    let mut detail = Vec::new();
    let mut cases: Vec<(FieldCtx, usize)> = (1..=4).map(|n| (gf(2), n)).collect();
    cases.extend((1..=3).map(|n| (gf(3), n)));
    for (ctx, n) in cases {
        for group in [GroupKind::B, GroupKind::U] {
            let part = brute_orbits(
                &ctx,
                n,
                &group,
                Relation::Equivalence,
                MatrixClass::All,
                budget,
            )?;
            let mut canonical: Vec<Option<Matrix>> = vec![None; part.orbit_count()];
            let mut targets = vec![0u32; part.orbit_count()];
            for idx in 0..part.member_count() {
                let m = part.member_matrix(idx);
                let y = match group {
                    GroupKind::B => equiv::b_equiv_canonical(&m).0,
                    GroupKind::U => equiv::u_equiv_canonical(&m).0,
                    GroupKind::Parabolic(_) => unreachable!(),
                };
                let oid = part.orbit_of_index(idx) as usize;
                match &canonical[oid] {
                    None => canonical[oid] = Some(y.clone()),
                    Some(prev) => ensure!(
                        *prev == y,
                        "two members of one {group:?}-equivalence orbit over {ctx} (n={n}) \
                         canonicalize differently"
                    ),
                }
                let is_target =
                    m.is_sub_permutation() && (matches!(group, GroupKind::U) || m.is_zero_one());
                if is_target {
                    targets[oid] += 1;
                    ensure!(
                        y == m,
                        "a canonical-shape member is not the canonicalizer output over {ctx} (n={n})"
                    );
                }
            }
            ensure!(
                targets.iter().all(|&t| t == 1),
                "an orbit over {ctx} (n={n}, {group:?}) does not hold exactly one canonical shape"
            );
            detail.push(format!(
                "{ctx} n={n} {group:?}: {} orbits",
                part.orbit_count()
            ));
        }
    }
    Ok(detail.join("; "))
}

/// U-congruence uniqueness over GF(3), n=3: each class of symmetric and of
/// alternating matrices holds exactly one sub-permutation matrix, which is
/// the canonicalizer output of every member.
pub fn u_congruence_oracle(budget: u64) -> Result<String> {
    let ctx = gf(3);
    let mut detail = Vec::new();
    for (n, class) in (1..=3usize)
        .flat_map(|n| [(n, MatrixClass::Symmetric), (n, MatrixClass::Alternating)])
    {
        let part = brute_orbits(&ctx, n, &GroupKind::U, Relation::Congruence, class, budget)?;
        let mut targets = vec![0u32; part.orbit_count()];
        let mut canonical: Vec<Option<Matrix>> = vec![None; part.orbit_count()];
        for idx in 0..part.member_count() {
            let m = part.member_matrix(idx);
            let (y, w) = match class {
                MatrixClass::Symmetric => congr::u_congr_canonical_sym(&m)?,
                MatrixClass::Alternating => congr::u_congr_canonical_alt(&m)?,
                MatrixClass::All => unreachable!(),
            };
            ensure!(
                w.apply(&m)? == y && witness_in_group(&w.u, GroupTag::U),
                "witness identity failed over {ctx} ({class:?})"
            );
            let oid = part.orbit_of_index(idx) as usize;
            match &canonical[oid] {
                None => canonical[oid] = Some(y.clone()),
                Some(prev) => ensure!(*prev == y, "canonicalizer split a U-congruence class"),
            }
            if m.is_sub_permutation() {
                targets[oid] += 1;
                ensure!(y == m, "sub-permutation member differs from the canonical form");
            }
        }
        ensure!(
            targets.iter().all(|&t| t == 1),
            "a U-congruence class of {class:?} matrices over GF(3) lacks a unique sub-permutation"
        );
        detail.push(format!(
            "n={n} {class:?}: {} members in {} classes",
            part.member_count(),
            part.orbit_count()
        ));
    }
    Ok(detail.join("; "))
}

/// B-congruence of alternating matrices over GF(2), GF(3), GF(5), n <= 4:
/// every class holds exactly one (1,-1)-matrix, the canonicalizer lands on
/// it, and the class count matches the recurrence.
pub fn alternating_b_congruence_oracle(budget: u64) -> Result<String> {
    let mut detail = Vec::new();
    for p in [2u64, 3, 5] {
        let ctx = gf(p);
        for n in 1..=4usize {
            let part = brute_orbits(
                &ctx,
                n,
                &GroupKind::B,
                Relation::Congruence,
                MatrixClass::Alternating,
                budget,
            )?;
            let expected = count_alt_orbits(n);
            ensure!(
                num_bigint::BigUint::from(part.orbit_count()) == expected,
                "{ctx} n={n}: {} classes but the recurrence gives {expected}",
                part.orbit_count()
            );
            let mut targets = vec![0u32; part.orbit_count()];
            for idx in 0..part.member_count() {
                let m = part.member_matrix(idx);
                let (y, w) = congr::b_congr_canonical_alt(&m)?;
                ensure!(
                    w.apply(&m)? == y && witness_in_group(&w.u, GroupTag::B),
                    "witness identity failed over {ctx} n={n}"
                );
                let oid = part.orbit_of_index(idx) as usize;
                if m.classify().one_minus_one {
                    targets[oid] += 1;
                    ensure!(y == m, "(1,-1)-member is not the canonical form");
                }
            }
            ensure!(
                targets.iter().all(|&t| t == 1),
                "a B-congruence class over {ctx} n={n} lacks a unique (1,-1)-matrix"
            );
            detail.push(format!("{ctx} n={n}: {} classes", part.orbit_count()));
        }
    }
    Ok(detail.join("; "))
}

/// Characteristic-2 congruence of symmetric matrices over GF(2) (n <= 4) and
/// GF(2^2) (n = 3): each U-class holds exactly one specialized
/// pseudo-permutation, each B-class exactly one specialized (0,1) one, and
/// the fixture matrices canonicalize to their stated targets.
pub fn char2_congruence_oracle(budget: u64) -> Result<String> {
    let mut detail = Vec::new();
    let gf4 = FieldCtx::binary(2)?;
    let mut cases: Vec<(FieldCtx, usize)> = (1..=4).map(|n| (gf(2), n)).collect();
    cases.extend((1..=3).map(|n| (gf4.clone(), n)));
    for (ctx, n) in cases {
        for (group, want_zero_one) in [(GroupKind::U, false), (GroupKind::B, true)] {
            let part = brute_orbits(
                &ctx,
                n,
                &group,
                Relation::Congruence,
                MatrixClass::Symmetric,
                budget,
            )?;
            let mut targets = vec![0u32; part.orbit_count()];
            for idx in 0..part.member_count() {
                let m = part.member_matrix(idx);
                let (y, w) = match group {
                    GroupKind::U => congr::u_congr_canonical_sym_char2(&m)?,
                    GroupKind::B => congr::b_congr_canonical_sym_char2(&m)?,
                    GroupKind::Parabolic(_) => unreachable!(),
                };
                let tag = if want_zero_one { GroupTag::B } else { GroupTag::U };
                ensure!(
                    w.apply(&m)? == y && witness_in_group(&w.u, tag),
                    "witness identity failed over {ctx} n={n} ({group:?})"
                );
                let oid = part.orbit_of_index(idx) as usize;
                let flags = m.classify();
                if flags.specialized_pseudo_permutation && (!want_zero_one || flags.zero_one) {
                    targets[oid] += 1;
                    ensure!(
                        y == m,
                        "specialized member is not the canonical form over {ctx} n={n}"
                    );
                }
            }
            ensure!(
                targets.iter().all(|&t| t == 1),
                "a {group:?}-congruence class over {ctx} n={n} lacks a unique specialized form"
            );
            if matches!(group, GroupKind::U) {
                // Class count equals the number of specialized shapes.
                let (count, _) =
                    enumerate_canforms(n, &CanformKind::SpecializedPseudoPerm(ctx.clone()))?;
                ensure!(
                    num_bigint::BigUint::from(part.orbit_count()) == count,
                    "{ctx} n={n}: classes {} vs enumerated shapes {count}",
                    part.orbit_count()
                );
            }
            detail.push(format!(
                "{ctx} n={n} {group:?}: {} classes",
                part.orbit_count()
            ));
        }
    }

    // Fixture targets.
    let ctx = gf(2);
    let x3 = Matrix::from_int(&ctx, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 1]]);
    let x3_target = Matrix::from_int(&ctx, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
    ensure!(
        congr::u_congr_canonical_sym_char2(&x3)?.0 == x3_target,
        "3x3 fixture missed its canonical target"
    );
    let y4 = Matrix::from_int(
        &ctx,
        &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 1, 0], &[1, 0, 0, 1]],
    );
    let y4_target = Matrix::from_int(
        &ctx,
        &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 1, 0], &[1, 0, 0, 0]],
    );
    ensure!(
        congr::u_congr_canonical_sym_char2(&y4)?.0 == y4_target,
        "4x4 fixture missed its canonical target"
    );
    let first_display = Matrix::from_int(
        &ctx,
        &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 1]],
    );
    ensure!(
        congr::u_congr_canonical_sym_char2(&first_display)?.0 == first_display,
        "specialized fixture moved under canonicalization"
    );
    Ok(detail.join("; "))
}

fn random_symmetric_tower(
    ctx: &FieldCtx,
    tf: &TowerField,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Matrix {
    let mut m = Matrix::zero(ctx.clone(), n);
    for r in 0..n {
        for c in r..n {
            let e = FieldElem::Tower(tf.random_at(rng, 0));
            m.set(r, c, e.clone());
            m.set(c, r, e);
        }
    }
    m
}

fn random_borel_tower(
    ctx: &FieldCtx,
    tf: &TowerField,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Matrix {
    let mut m = Matrix::zero(ctx.clone(), n);
    for r in 0..n {
        loop {
            let d = FieldElem::Tower(tf.random_at(rng, 1));
            if !ctx.is_zero(&d) {
                m.set(r, r, d);
                break;
            }
        }
        for c in r + 1..n {
            m.set(r, c, FieldElem::Tower(tf.random_at(rng, 1)));
        }
    }
    m
}

/// No finite field is both square-closed and of odd characteristic, so the
/// symmetric B-congruence statement is exercised by randomized properties
/// over the tower on GF(3): class invariance under random Borel congruences,
/// canonical shape, and the exact witness identity.
pub fn tower_symmetric_properties(seed: u64, iters: usize) -> Result<String> {
    let ctx = FieldCtx::tower(3, 8)?;
    let FieldCtx::Tower(tf) = ctx.clone() else {
        unreachable!()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for it in 0..iters {
        let n = it % 4 + 1;
        let x = random_symmetric_tower(&ctx, &tf, n, &mut rng);
        let (y, w) = congr::b_congr_canonical_sym(&x)?;
        ensure!(
            y.is_symmetric() && y.is_sub_permutation() && y.is_zero_one(),
            "canonical form is not a symmetric sub-permutation (0,1)-matrix"
        );
        ensure!(
            witness_in_group(&w.u, GroupTag::B) && w.apply(&x)? == y,
            "witness identity u'Xu = Y failed over the tower"
        );
        let b = random_borel_tower(&ctx, &tf, n, &mut rng);
        let conj = b.transpose().mul(&x)?.mul(&b)?;
        let (y2, w2) = congr::b_congr_canonical_sym(&conj)?;
        ensure!(
            y2 == y,
            "B-congruent symmetric matrices canonicalized differently over the tower"
        );
        ensure!(
            w2.apply(&conj)? == y2,
            "witness identity failed after congruence"
        );
    }
    Ok(format!(
        "{iters} random symmetric matrices, n up to 4, all invariant"
    ))
}

/// The four parabolic-equivalence criteria agree exactly over GF(2), n=4,
/// for all eight standard parabolics: orbit membership from brute force,
/// block-rank tables, exhaustive W-equivalence of the B-canonical forms, and
/// cross-count tables. The inclusion-exclusion identity is checked for every
/// sub-permutation (0,1)-matrix and every parabolic.
pub fn parabolic_equivalence_oracle(budget: u64) -> Result<String> {
    let ctx = gf(2);
    let n = 4;
    // B-equivalence canonical form per matrix code, shared across parabolics.
    let mut canon_by_code: Vec<u32> = Vec::new();
    let mut decode: std::collections::HashMap<u32, Matrix> = std::collections::HashMap::new();
    for_each_matrix(&ctx, n, |m| {
        let y = equiv::b_equiv_canonical(m).0;
        let yc = matrix_code(&y) as u32;
        decode.entry(yc).or_insert_with(|| y.clone());
        canon_by_code.push(yc);
    });

    let subperms: Vec<Matrix> = {
        let mut v = Vec::new();
        for_each_matrix(&ctx, n, |m| {
            if m.is_sub_permutation() && m.is_zero_one() {
                v.push(m.clone());
            }
        });
        v
    };

    let mut detail = Vec::new();
    for p in ParabolicDescriptor::all_for_n(n) {
        for y in &subperms {
            ensure!(
                eq3_holds(y, &p)?,
                "inclusion-exclusion identity failed for composition {:?}",
                p.composition()
            );
        }

        let part = brute_orbits(
            &ctx,
            n,
            &GroupKind::Parabolic(p.clone()),
            Relation::Equivalence,
            MatrixClass::All,
            budget,
        )?;
        let reps = part.representatives();
        // Member-level consistency: each member shares its representative's
        // block-rank table and canonical cross-count table; this covers all
        // same-orbit pairs, so the representative-level pair scan below
        // covers the full space.
        let rep_tables: Vec<_> = reps
            .iter()
            .map(|r| block_rank_table(r, &p))
            .collect::<Result<_>>()?;
        let rep_cross: Vec<_> = reps
            .iter()
            .map(|r| cross_counts(&equiv::b_equiv_canonical(r).0, &p))
            .collect::<Result<_>>()?;
        for idx in 0..part.member_count() {
            let m = part.member_matrix(idx);
            let oid = part.orbit_of_index(idx) as usize;
            ensure!(
                block_rank_table(&m, &p)? == rep_tables[oid],
                "a member's block ranks differ from its orbit representative"
            );
            let yc = canon_by_code[matrix_code(&m) as usize];
            ensure!(
                cross_counts(&decode[&yc], &p)? == rep_cross[oid],
                "a member's cross counts differ from its orbit representative"
            );
        }
        // Representative-level: all four criteria agree on every ordered pair.
        let rep_canon: Vec<&Matrix> = reps
            .iter()
            .map(|r| &decode[&canon_by_code[matrix_code(r) as usize]])
            .collect();
        let w_sets: Vec<std::collections::HashSet<u64>> = {
            let w = p.weyl_elements()?;
            rep_canon
                .iter()
                .map(|y| {
                    let mut set = std::collections::HashSet::new();
                    for w1 in &w {
                        for w2 in &w {
                            let img = Matrix::from_fn(ctx.clone(), n, |r, c| {
                                y.get(w1.apply(r), w2.apply(c)).clone()
                            });
                            set.insert(matrix_code(&img));
                        }
                    }
                    set
                })
                .collect()
        };
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                let by_orbit = i == j;
                let by_rank = rep_tables[i] == rep_tables[j];
                let by_weyl = w_sets[i].contains(&matrix_code(rep_canon[j]));
                let by_cross = rep_cross[i] == rep_cross[j];
                ensure!(
                    by_orbit == by_rank && by_rank == by_weyl && by_weyl == by_cross,
                    "criteria disagree for composition {:?}: orbit={by_orbit} rank={by_rank} \
                     weyl={by_weyl} cross={by_cross}",
                    p.composition()
                );
                let (decided, _) = p_equivalent(&reps[i], &reps[j], &p)?;
                ensure!(decided == by_orbit, "decider disagrees with the orbit oracle");
            }
        }
        detail.push(format!(
            "{:?}: {} orbits",
            p.composition(),
            part.orbit_count()
        ));
    }
    Ok(format!(
        "65536 matrices, 8 parabolics, 4 criteria; orbits per composition: {}",
        detail.join(", ")
    ))
}

/// P-congruence of alternating matrices coincides with P-equivalence and
/// with the W-conjugacy condition, over GF(2) and GF(3), n=4, for all eight
/// parabolics; on invertible inputs the diagonal-count half of the condition
/// is redundant.
pub fn parabolic_congruence_oracle(budget: u64) -> Result<String> {
    let mut detail = Vec::new();
    for p_char in [2u64, 3] {
        let ctx = gf(p_char);
        let n = 4;
        for p in ParabolicDescriptor::all_for_n(n) {
            let part = brute_orbits(
                &ctx,
                n,
                &GroupKind::Parabolic(p.clone()),
                Relation::Congruence,
                MatrixClass::Alternating,
                budget,
            )?;
            let reps = part.representatives();
            for idx in 0..part.member_count() {
                let m = part.member_matrix(idx);
                let rep = &reps[part.orbit_of_index(idx) as usize];
                let (eq, _) = p_equivalent(&m, rep, &p)?;
                ensure!(eq, "P-congruent matrices not P-equivalent over {ctx}");
                let (cg, _) = p_congruent(&m, rep, &p, CongrKind::Alternating)?;
                ensure!(cg, "decider denies a brute-force congruence over {ctx}");
            }
            for i in 0..reps.len() {
                for j in 0..reps.len() {
                    if i == j {
                        continue;
                    }
                    let (eq, _) = p_equivalent(&reps[i], &reps[j], &p)?;
                    ensure!(!eq, "distinct congruence classes declared P-equivalent");
                    let (cg, report) =
                        p_congruent(&reps[i], &reps[j], &p, CongrKind::Alternating)?;
                    ensure!(!cg, "distinct congruence classes declared P-congruent");
                    ensure!(
                        w_conjugate(&report.reduced_left, &report.reduced_right, &p)?
                            == w_conjugate_exhaustive(
                                &report.reduced_left,
                                &report.reduced_right,
                                &p
                            )?,
                        "conjugacy count criterion disagrees with exhaustive search"
                    );
                }
            }
            // Redundancy of the diagonal-count condition on invertibles.
            let canon: Vec<(Matrix, bool)> = reps
                .iter()
                .map(|r| congr::b_congr_canonical_alt(r).map(|(y, _)| (y, r.is_invertible())))
                .collect::<Result<_>>()?;
            for (ya, inv_a) in &canon {
                for (yb, inv_b) in &canon {
                    if !(*inv_a && *inv_b) {
                        continue;
                    }
                    let ra = reduced_permutation(ya, &p)?;
                    let rb = reduced_permutation(yb, &p)?;
                    if w_conjugate(&ra, &rb, &p)? {
                        let ca = cross_counts(ya, &p)?;
                        let cb = cross_counts(yb, &p)?;
                        ensure!(
                            (0..p.r()).all(|i| ca.get(i, i) == cb.get(i, i)),
                            "diagonal counts differed on conjugate invertible forms"
                        );
                    }
                }
            }
            detail.push(format!(
                "{ctx} {:?}: {} classes",
                p.composition(),
                part.orbit_count()
            ));
        }
    }
    Ok(detail.join("; "))
}

/// Orbit-count recurrences against exhaustive enumeration of the canonical
/// shapes for n <= 8.
pub fn census_recurrences() -> Result<String> {
    let alt_expected: [u64; 9] = [1, 1, 2, 4, 10, 26, 76, 232, 764];
    let sym_expected: [u64; 9] = [1, 2, 5, 14, 43, 142, 499, 1850, 7193];
    for n in 0..=8usize {
        let c = count_alt_orbits(n);
        ensure!(
            c == alt_expected[n].into(),
            "alternating recurrence at n={n} gave {c}"
        );
        let d = count_sym_orbits(n);
        ensure!(
            d == sym_expected[n].into(),
            "symmetric recurrence at n={n} gave {d}"
        );
        let (ce, _) = enumerate_canforms(n, &CanformKind::AltOneMinusOne)?;
        ensure!(ce == c, "enumerated (1,-1)-matrices at n={n}: {ce} vs {c}");
        let (de, _) = enumerate_canforms(n, &CanformKind::SymZeroOneSubperm)?;
        ensure!(
            de == d,
            "enumerated symmetric sub-permutations at n={n}: {de} vs {d}"
        );
    }
    Ok("counts for n <= 8 match enumeration".into())
}

/// Field-axiom and square-root properties across every supported family.
pub fn field_axioms(seed: u64, iters: usize) -> Result<String> {
    let mut fields: Vec<FieldCtx> = vec![gf(2), gf(3), gf(5), gf(7)];
    fields.push(FieldCtx::binary(2)?);
    fields.push(FieldCtx::binary(3)?);
    fields.push(FieldCtx::tower(3, 8)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for ctx in &fields {
        let draw = |rng: &mut ChaCha8Rng| -> FieldElem {
            match ctx {
                FieldCtx::Tower(tf) => {
                    let level = rng.gen_range(0..=3u8);
                    FieldElem::Tower(tf.random_at(rng, level))
                }
                _ => ctx.random_elem(rng),
            }
        };
        for _ in 0..iters {
            let a = draw(&mut rng);
            let b = draw(&mut rng);
            let c = draw(&mut rng);
            ensure!(
                ctx.add(&ctx.add(&a, &b), &c) == ctx.add(&a, &ctx.add(&b, &c)),
                "additive associativity failed in {ctx}"
            );
            ensure!(
                ctx.mul(&ctx.mul(&a, &b), &c) == ctx.mul(&a, &ctx.mul(&b, &c)),
                "multiplicative associativity failed in {ctx}"
            );
            ensure!(
                ctx.mul(&a, &ctx.add(&b, &c)) == ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c)),
                "distributivity failed in {ctx}"
            );
            ensure!(
                ctx.is_zero(&ctx.add(&a, &ctx.neg(&a))),
                "additive inverse failed in {ctx}"
            );
            if !ctx.is_zero(&a) {
                ensure!(
                    ctx.mul(&a, &ctx.inv(&a)?) == ctx.one(),
                    "multiplicative inverse failed in {ctx}"
                );
            }
            match ctx {
                FieldCtx::Prime(_) => {
                    if ctx.is_square(&a) {
                        let s = ctx.sqrt(&a)?;
                        ensure!(ctx.mul(&s, &s) == a, "sqrt failed in {ctx}");
                    } else {
                        ensure!(ctx.sqrt(&a).is_err(), "non-square had a root in {ctx}");
                    }
                }
                _ => {
                    let s = ctx.sqrt(&a)?;
                    ensure!(ctx.mul(&s, &s) == a, "sqrt failed in {ctx}");
                }
            }
            if ctx.characteristic() == 2 {
                let lhs = ctx.mul(&ctx.add(&a, &b), &ctx.add(&a, &b));
                let rhs = ctx.add(&ctx.mul(&a, &a), &ctx.mul(&b, &b));
                ensure!(lhs == rhs, "Frobenius additivity failed in {ctx}");
            }
            let renorm = ctx.tower_normalize(&a);
            ensure!(
                renorm == a && ctx.tower_normalize(&renorm) == renorm,
                "normalization is not idempotent in {ctx}"
            );
        }
    }
    Ok(format!("{iters} random cases over {} fields", fields.len()))
}

/// Supplementary theorem-level properties on random inputs: congruence
/// classes coincide with equivalence classes for symmetric (odd
/// characteristic) and the characteristic-2 coherence between the congruence
/// canonical form, hat, and the equivalence canonical forms.
pub fn congruence_equivalence_coherence(seed: u64, iters: usize) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rounds = iters / 10;
    for ctx in [gf(3), gf(5)] {
        for _ in 0..rounds {
            let n = rng.gen_range(1..=4usize);
            let mut x = Matrix::zero(ctx.clone(), n);
            let mut y = Matrix::zero(ctx.clone(), n);
            for r in 0..n {
                for c in r..n {
                    let e = ctx.random_elem(&mut rng);
                    x.set(r, c, e.clone());
                    x.set(c, r, e);
                    let e = ctx.random_elem(&mut rng);
                    y.set(r, c, e.clone());
                    y.set(c, r, e);
                }
            }
            let same_congr =
                congr::u_congr_canonical_sym(&x)?.0 == congr::u_congr_canonical_sym(&y)?.0;
            let same_equiv = equiv::u_equivalent(&x, &y)?;
            ensure!(
                same_congr == same_equiv,
                "U-congruence and U-equivalence disagreed on symmetric matrices over {ctx}"
            );
        }
    }
    for ctx in [gf(2), FieldCtx::binary(2)?] {
        for _ in 0..rounds {
            let n = rng.gen_range(1..=4usize);
            let mut x = Matrix::zero(ctx.clone(), n);
            for r in 0..n {
                for c in r..n {
                    let e = ctx.random_elem(&mut rng);
                    x.set(r, c, e.clone());
                    x.set(c, r, e);
                }
            }
            let y = congr::u_congr_canonical_sym_char2(&x)?.0;
            ensure!(
                equiv::u_equiv_canonical(&y).0 == congr::hat(&y)?,
                "hat did not match the U-equivalence canonical form over {ctx}"
            );
            let yb = congr::b_congr_canonical_sym_char2(&x)?.0;
            ensure!(
                equiv::b_equiv_canonical(&yb).0 == congr::hat(&yb)?,
                "hat did not match the B-equivalence canonical form over {ctx}"
            );
        }
    }
    Ok(format!("{} random coincidence cases", rounds * 4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Equiv,
    Congr,
    Parabolic,
    Census,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "all" => Ok(Suite::All),
            "equiv" => Ok(Suite::Equiv),
            "congr" => Ok(Suite::Congr),
            "parabolic" => Ok(Suite::Parabolic),
            "census" => Ok(Suite::Census),
            _ => Err(Error::Parse(format!(
                "unknown suite '{s}' (expected all|equiv|congr|parabolic|census)"
            ))),
        }
    }
}

/// Run a verification suite; each check yields one pass/fail line.
pub fn run_suite(suite: Suite, seed: u64, budget: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let everything = suite == Suite::All;
    if everything {
        checks.push(run("field axioms and square roots", || {
            field_axioms(seed, DEFAULT_PROPERTY_ITERS)
        }));
    }
    if everything || suite == Suite::Equiv {
        checks.push(run("equivalence canonical-form uniqueness oracle", || {
            equivalence_oracle(budget)
        }));
    }
    if everything || suite == Suite::Congr {
        checks.push(run(
            "U-congruence uniqueness oracle (odd characteristic)",
            || u_congruence_oracle(budget),
        ));
        checks.push(run("alternating B-congruence oracle and recurrence", || {
            alternating_b_congruence_oracle(budget)
        }));
        checks.push(run("characteristic-2 congruence oracle", || {
            char2_congruence_oracle(budget)
        }));
        checks.push(run(
            "square-closed tower symmetric congruence properties",
            || tower_symmetric_properties(seed, DEFAULT_PROPERTY_ITERS),
        ));
        checks.push(run("congruence/equivalence coherence properties", || {
            congruence_equivalence_coherence(seed, DEFAULT_PROPERTY_ITERS)
        }));
    }
    if everything || suite == Suite::Parabolic {
        checks.push(run("parabolic equivalence four-criteria agreement", || {
            parabolic_equivalence_oracle(budget)
        }));
        checks.push(run("parabolic congruence coincides with equivalence", || {
            parabolic_congruence_oracle(budget)
        }));
    }
    if everything || suite == Suite::Census {
        checks.push(run("orbit-count recurrences against enumeration", || {
            census_recurrences()
        }));
    }
    checks
}
