//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use subperm::census::DEFAULT_BUDGET;
use subperm::verify::{self, DEFAULT_PROPERTY_ITERS, DEFAULT_SEED};

fn gate(id: &str, name: &str, outcome: subperm::Result<String>) {
    match outcome {
        Ok(detail) => println!("PASS {id}: {name} - {detail}"),
        Err(e) => {
            println!("FAIL {id}: {name} - {e}");
            panic!("{id} failed: {e}");
        }
    }
}

#[test]
fn acceptance_1_equivalence_uniqueness() {
    gate(
        "1",
        "B/U-equivalence orbits each hold exactly one canonical sub-permutation \
         (GF(2) n=3,4; GF(3) n=3)",
        verify::equivalence_oracle(DEFAULT_BUDGET),
    );
}

#[test]
fn acceptance_2_u_congruence_uniqueness() {
    gate(
        "2",
        "U-congruence classes of symmetric/alternating matrices over GF(3), n=3, \
         hold exactly one sub-permutation matching the canonicalizer",
        verify::u_congruence_oracle(DEFAULT_BUDGET),
    );
}

#[test]
fn acceptance_3_alternating_b_congruence() {
    gate(
        "3",
        "B-congruence classes of alternating matrices over GF(2),GF(3),GF(5), n<=4, \
         hold exactly one (1,-1)-matrix and count to the recurrence",
        verify::alternating_b_congruence_oracle(DEFAULT_BUDGET),
    );
}

#[test]
fn acceptance_4_char2_congruence() {
    gate(
        "4",
        "characteristic-2 congruence classes hold exactly one specialized \
         pseudo-permutation (GF(2) n<=4, GF(2^2) n=3) and fixtures hit their targets",
        verify::char2_congruence_oracle(DEFAULT_BUDGET),
    );
}

#[test]
fn acceptance_5_tower_symmetric_properties() {
    gate(
        "5",
        "symmetric B-congruence over the square-closed tower on GF(3): class \
         invariance, canonical (0,1) sub-permutation shape, exact witnesses",
        verify::tower_symmetric_properties(DEFAULT_SEED, DEFAULT_PROPERTY_ITERS),
    );
}

#[test]
fn acceptance_6_parabolic_equivalence_criteria() {
    gate(
        "6",
        "the four P-equivalence criteria agree over GF(2), n=4, all 8 parabolics; \
         inclusion-exclusion identity holds for all sub-permutation (0,1)-matrices",
        verify::parabolic_equivalence_oracle(DEFAULT_BUDGET),
    );
}

#[test]
fn acceptance_7_parabolic_congruence() {
    gate(
        "7",
        "P-congruence = P-equivalence = W-conjugacy condition for alternating \
         matrices over GF(2),GF(3), n=4, all parabolics; diagonal counts redundant \
         on invertibles",
        verify::parabolic_congruence_oracle(DEFAULT_BUDGET),
    );
}

#[test]
fn acceptance_8_census_recurrences() {
    gate(
        "8",
        "orbit-count recurrences equal exhaustive canonical-shape enumeration for n<=8",
        verify::census_recurrences(),
    );
}

#[test]
fn acceptance_9_field_layer() {
    gate(
        "9",
        "field axioms, square roots and Frobenius over GF(2,3,5,7), GF(4), GF(8), \
         tower(3) levels<=3, 10^4 random cases each",
        verify::field_axioms(DEFAULT_SEED, DEFAULT_PROPERTY_ITERS),
    );
}
