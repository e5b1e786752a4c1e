//! Exercise the C entry points the way a foreign caller would.

use std::ffi::{CStr, CString};
use std::ptr;

use subperm_ffi::*;

unsafe fn take_string(p: *mut std::os::raw::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    sp_string_free(p);
    s
}

unsafe fn parse(text: &str) -> *mut SpMatrix {
    let c = CString::new(text).unwrap();
    let mut m: *mut SpMatrix = ptr::null_mut();
    assert_eq!(sp_matrix_parse(c.as_ptr(), &mut m), SpStatus::Ok);
    m
}

#[test]
fn field_handles_round_trip() {
    unsafe {
        let mut f: *mut SpField = ptr::null_mut();
        assert_eq!(sp_field_prime(7, &mut f), SpStatus::Ok);
        assert_eq!(take_string(sp_field_spec(f)), "GF(7)");
        sp_field_free(f);

        let spec = CString::new("GF(2^3)").unwrap();
        assert_eq!(sp_field_parse(spec.as_ptr(), &mut f), SpStatus::Ok);
        assert_eq!(take_string(sp_field_spec(f)), "GF(2^3)");
        sp_field_free(f);

        assert_eq!(sp_field_prime(6, &mut f), SpStatus::UnsupportedField);
        let msg = take_string(sp_last_error_message());
        assert!(msg.contains("not prime"));

        let mut t: *mut SpField = ptr::null_mut();
        assert_eq!(sp_field_tower(3, 8, &mut t), SpStatus::Ok);
        assert_eq!(take_string(sp_field_spec(t)), "TOWER(3)");
        sp_field_free(t);
    }
}

#[test]
fn matrix_parse_print_and_rank() {
    unsafe {
        let text = "field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 1\n";
        let m = parse(text);
        assert_eq!(sp_matrix_dim(m), 3);
        let mut rank = 0usize;
        assert_eq!(sp_matrix_rank(m, &mut rank), SpStatus::Ok);
        assert_eq!(rank, 3);
        assert_eq!(take_string(sp_matrix_print(m)), text);
        sp_matrix_free(m);

        let bad = CString::new("field GF(9)\nn 1\n0\n").unwrap();
        let mut out: *mut SpMatrix = ptr::null_mut();
        assert_eq!(
            sp_matrix_parse(bad.as_ptr(), &mut out),
            SpStatus::UnsupportedField
        );
        let bad = CString::new("field GF(6)\nn 1\n0\n").unwrap();
        assert_eq!(sp_matrix_parse(bad.as_ptr(), &mut out), SpStatus::Parse);
    }
}

#[test]
fn canon_returns_form_and_witnesses() {
    unsafe {
        let x = parse("field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 1\n");
        let mut y: *mut SpMatrix = ptr::null_mut();
        let mut h: *mut SpMatrix = ptr::null_mut();
        let mut k: *mut SpMatrix = ptr::null_mut();
        assert_eq!(
            sp_canon(x, SpCanonAction::BEquiv, &mut y, &mut h, &mut k),
            SpStatus::Ok
        );
        assert_eq!(
            take_string(sp_matrix_print(y)),
            "field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 0\n"
        );
        assert!(!h.is_null() && !k.is_null());
        sp_matrix_free(y);
        sp_matrix_free(h);
        sp_matrix_free(k);

        // Congruence canonicalization of the same fixture.
        let mut u: *mut SpMatrix = ptr::null_mut();
        assert_eq!(
            sp_canon(x, SpCanonAction::UCongr, &mut y, &mut u, ptr::null_mut()),
            SpStatus::Ok
        );
        assert_eq!(
            take_string(sp_matrix_print(y)),
            "field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 0\n"
        );
        sp_matrix_free(y);
        sp_matrix_free(u);
        sp_matrix_free(x);

        // Kind errors surface as typed statuses.
        let asym = parse("field GF(3)\nn 2\n0 1\n0 0\n");
        let status = sp_canon(
            asym,
            SpCanonAction::UCongr,
            &mut y,
            ptr::null_mut(),
            ptr::null_mut(),
        );
        assert_eq!(status, SpStatus::KindMismatch);
        sp_matrix_free(asym);
    }
}

#[test]
fn deciders_follow_the_composition() {
    unsafe {
        let id = parse("field GF(2)\nn 3\n1 0 0\n0 1 0\n0 0 1\n");
        let anti = parse("field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 0\n");
        let mut related = false;
        let full: [u32; 1] = [3];
        assert_eq!(
            sp_p_equivalent(id, anti, full.as_ptr(), 1, &mut related),
            SpStatus::Ok
        );
        assert!(related);
        let borel: [u32; 3] = [1, 1, 1];
        assert_eq!(
            sp_p_equivalent(id, anti, borel.as_ptr(), 3, &mut related),
            SpStatus::Ok
        );
        assert!(!related);
        assert_eq!(
            sp_p_equivalent(id, anti, ptr::null(), 0, &mut related),
            SpStatus::BadComposition
        );
        // U/B-equivalence single-call deciders.
        assert_eq!(sp_b_equivalent(id, anti, &mut related), SpStatus::Ok);
        assert!(!related);
        assert_eq!(sp_u_equivalent(id, id, &mut related), SpStatus::Ok);
        assert!(related);
        sp_matrix_free(id);
        sp_matrix_free(anti);
    }
}

#[test]
fn congruence_and_invariants() {
    unsafe {
        let a = parse("field GF(3)\nn 4\n0 1 0 0\n2 0 0 0\n0 0 0 1\n0 0 2 0\n");
        let b = parse("field GF(3)\nn 4\n0 0 1 0\n0 0 0 1\n2 0 0 0\n0 2 0 0\n");
        let comp: [u32; 2] = [2, 2];
        let mut related = true;
        assert_eq!(
            sp_p_congruent(
                a,
                b,
                comp.as_ptr(),
                2,
                SpCongrKind::Alternating,
                &mut related
            ),
            SpStatus::Ok
        );
        assert!(!related);
        let json = take_string(sp_invariants_json(a, comp.as_ptr(), 2));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["block_rank"][0][0], 2);
        assert!(v["cross_count"].is_array());
        sp_matrix_free(a);
        sp_matrix_free(b);
    }
}

#[test]
fn census_strings() {
    unsafe {
        assert_eq!(take_string(sp_count_alt_orbits(4)), "10");
        assert_eq!(take_string(sp_count_sym_orbits(8)), "7193");
        // Arbitrary precision holds up far beyond machine integers.
        let big = take_string(sp_count_sym_orbits(64));
        assert!(big.len() > 20);
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut out: *mut SpMatrix = ptr::null_mut();
        assert_eq!(
            sp_matrix_parse(ptr::null(), &mut out),
            SpStatus::NullArgument
        );
        let mut f: *mut SpField = ptr::null_mut();
        assert_eq!(sp_field_parse(ptr::null(), &mut f), SpStatus::NullArgument);
        assert!(sp_matrix_print(ptr::null()).is_null());
        sp_matrix_free(ptr::null_mut());
        sp_field_free(ptr::null_mut());
        sp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/subperm.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header exists");
    for needle in [
        "SUBPERM_H",
        "typedef struct SpField SpField;",
        "typedef struct SpMatrix SpMatrix;",
        "sp_canon",
        "sp_p_equivalent",
        "sp_last_error_message",
    ] {
        assert!(text.contains(needle), "header lacks {needle}");
    }
}
