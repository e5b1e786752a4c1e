//! C ABI over the canonical-form library.
//!
//! Conventions: handles are opaque pointers created and released by the
//! `sp_*_new`/`sp_*_free` pairs; fallible calls return an [`SpStatus`] and
//! write results through out-pointers; strings returned by the library are
//! NUL-terminated UTF-8 owned by Rust and must be released with
//! [`sp_string_free`]. `sp_last_error_message` describes the most recent
//! failure on the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use subperm::census::{count_alt_orbits, count_sym_orbits};
use subperm::error::Error;
use subperm::field::FieldCtx;
use subperm::io::{format_matrix, parse_matrix};
use subperm::matrix::Matrix;
use subperm::parabolic::{
    block_rank_table, cross_counts, p_congruent, p_equivalent, CongrKind, ParabolicDescriptor,
};
use subperm::{congr, equiv};

/// Status codes for every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpStatus {
    Ok = 0,
    NullArgument,
    InvalidUtf8,
    Parse,
    DimensionMismatch,
    FieldMismatch,
    NotSubPermutation,
    NotSymmetric,
    NotAlternating,
    NotPseudoPermutation,
    WrongCharacteristic,
    NonSquare,
    KindMismatch,
    BadComposition,
    NotInvolutive,
    NotReduced,
    TooLarge,
    BudgetExceeded,
    TowerLevel,
    DivisionByZero,
    CriteriaDisagree,
    UnsupportedField,
    Panic,
}

/// Canonicalization actions for [`sp_canon`].
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpCanonAction {
    BEquiv = 0,
    UEquiv,
    UCongr,
    BCongr,
}

/// Matrix kinds for [`sp_p_congruent`].
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpCongrKind {
    Symmetric = 0,
    Alternating,
}

/// Opaque field handle.
pub struct SpField(FieldCtx);

/// Opaque matrix handle.
pub struct SpMatrix(Matrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn status_of(e: &Error) -> SpStatus {
    match e {
        Error::DimensionMismatch(..) => SpStatus::DimensionMismatch,
        Error::FieldMismatch => SpStatus::FieldMismatch,
        Error::NotSubPermutation => SpStatus::NotSubPermutation,
        Error::NotSymmetric => SpStatus::NotSymmetric,
        Error::NotAlternating => SpStatus::NotAlternating,
        Error::NotPseudoPermutation => SpStatus::NotPseudoPermutation,
        Error::Char2 | Error::NotChar2 => SpStatus::WrongCharacteristic,
        Error::NonSquare(_) => SpStatus::NonSquare,
        Error::KindMismatch(_) => SpStatus::KindMismatch,
        Error::CriteriaDisagree(_) => SpStatus::CriteriaDisagree,
        Error::BadComposition(_) => SpStatus::BadComposition,
        Error::NotInvolutive => SpStatus::NotInvolutive,
        Error::NotReduced => SpStatus::NotReduced,
        Error::TooLarge(_) => SpStatus::TooLarge,
        Error::BudgetExceeded(_) => SpStatus::BudgetExceeded,
        Error::TowerLevel { .. } => SpStatus::TowerLevel,
        Error::DivisionByZero => SpStatus::DivisionByZero,
        Error::Parse(_) => SpStatus::Parse,
        Error::UnsupportedField(_) => SpStatus::UnsupportedField,
    }
}

fn fail(e: Error) -> SpStatus {
    let code = status_of(&e);
    set_error(e.to_string());
    code
}

/// Run a fallible body, translating errors and catching panics.
fn guarded(f: impl FnOnce() -> Result<SpStatus, Error>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_error("internal panic".into());
            SpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SpStatus> {
    if ptr.is_null() {
        return Err(SpStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8".into());
        SpStatus::InvalidUtf8
    })
}

fn to_cstring(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn composition_from_raw(
    comp: *const u32,
    len: usize,
) -> Result<ParabolicDescriptor, Error> {
    if comp.is_null() || len == 0 {
        return Err(Error::BadComposition("null or empty composition".into()));
    }
    let sizes: Vec<usize> = std::slice::from_raw_parts(comp, len)
        .iter()
        .map(|&s| s as usize)
        .collect();
    ParabolicDescriptor::from_composition(&sizes)
}

/// Most recent error on this thread, or NULL; release with sp_string_free.
#[no_mangle]
pub extern "C" fn sp_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.clone().into_raw())
            .unwrap_or(ptr::null_mut())
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by one of the
/// string-returning functions here, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create the prime field GF(p).
///
/// # Safety
/// `out` must be a valid pointer to an SpField pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_field_prime(p: u64, out: *mut *mut SpField) -> SpStatus {
    if out.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        let ctx = FieldCtx::prime(p)?;
        *out = Box::into_raw(Box::new(SpField(ctx)));
        Ok(SpStatus::Ok)
    })
}

/// Create the binary field GF(2^k).
///
/// # Safety
/// `out` must be a valid pointer to an SpField pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_field_binary(k: u32, out: *mut *mut SpField) -> SpStatus {
    if out.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        let ctx = FieldCtx::binary(k)?;
        *out = Box::into_raw(Box::new(SpField(ctx)));
        Ok(SpStatus::Ok)
    })
}

/// Create the square-closed quadratic tower over the odd prime p with the
/// given level cap.
///
/// # Safety
/// `out` must be a valid pointer to an SpField pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_field_tower(p: u64, cap: u8, out: *mut *mut SpField) -> SpStatus {
    if out.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        let ctx = FieldCtx::tower(p, cap)?;
        *out = Box::into_raw(Box::new(SpField(ctx)));
        Ok(SpStatus::Ok)
    })
}

/// Parse a field spec such as "GF(2)", "GF(2^3)" or "TOWER(3)".
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_field_parse(spec: *const c_char, out: *mut *mut SpField) -> SpStatus {
    if out.is_null() {
        return SpStatus::NullArgument;
    }
    let spec = match read_str(spec) {
        Ok(s) => s,
        Err(code) => return code,
    };
    guarded(|| {
        let ctx = FieldCtx::parse_spec(spec)?;
        *out = Box::into_raw(Box::new(SpField(ctx)));
        Ok(SpStatus::Ok)
    })
}

/// The field's canonical spec string; release with sp_string_free.
///
/// # Safety
/// `field` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sp_field_spec(field: *const SpField) -> *mut c_char {
    if field.is_null() {
        return ptr::null_mut();
    }
    to_cstring((*field).0.spec_string())
}

/// # Safety
/// `field` must be NULL or a live handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_field_free(field: *mut SpField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Parse a matrix in the text format (field header, dimension, rows).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_matrix_parse(
    text: *const c_char,
    out: *mut *mut SpMatrix,
) -> SpStatus {
    if out.is_null() {
        return SpStatus::NullArgument;
    }
    let text = match read_str(text) {
        Ok(s) => s,
        Err(code) => return code,
    };
    guarded(|| {
        let m = parse_matrix(text)?;
        *out = Box::into_raw(Box::new(SpMatrix(m)));
        Ok(SpStatus::Ok)
    })
}

/// Print a matrix in the round-trippable text format; release with
/// sp_string_free.
///
/// # Safety
/// `matrix` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sp_matrix_print(matrix: *const SpMatrix) -> *mut c_char {
    if matrix.is_null() {
        return ptr::null_mut();
    }
    to_cstring(format_matrix(&(*matrix).0))
}

/// # Safety
/// `matrix` must be NULL or a live handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_matrix_free(matrix: *mut SpMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Matrix dimension n.
///
/// # Safety
/// `matrix` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_matrix_dim(matrix: *const SpMatrix) -> usize {
    if matrix.is_null() {
        return 0;
    }
    (*matrix).0.n()
}

/// Exact rank.
///
/// # Safety
/// `matrix` must be a live handle; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_matrix_rank(matrix: *const SpMatrix, out: *mut usize) -> SpStatus {
    if matrix.is_null() || out.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        *out = (*matrix).0.rank();
        Ok(SpStatus::Ok)
    })
}

/// Canonicalize under the requested action. `out_canonical` receives the
/// canonical form. For the equivalence actions, `out_w1`/`out_w2` (when
/// non-NULL) receive the witnesses h and k with h' X k = Y; for the
/// congruence actions `out_w1` receives u with u' X u = Y and `out_w2` is
/// left untouched.
///
/// # Safety
/// `matrix` must be a live handle; `out_canonical` a valid out-pointer;
/// `out_w1`/`out_w2` NULL or valid out-pointers.
#[no_mangle]
pub unsafe extern "C" fn sp_canon(
    matrix: *const SpMatrix,
    action: SpCanonAction,
    out_canonical: *mut *mut SpMatrix,
    out_w1: *mut *mut SpMatrix,
    out_w2: *mut *mut SpMatrix,
) -> SpStatus {
    if matrix.is_null() || out_canonical.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        let x = &(*matrix).0;
        let (y, w1, w2): (Matrix, Matrix, Option<Matrix>) = match action {
            SpCanonAction::BEquiv => {
                let (y, w) = equiv::b_equiv_canonical(x);
                (y, w.h, Some(w.k))
            }
            SpCanonAction::UEquiv => {
                let (y, w) = equiv::u_equiv_canonical(x);
                (y, w.h, Some(w.k))
            }
            SpCanonAction::UCongr => {
                let (y, w) = congr::u_congr_canonical(x)?;
                (y, w.u, None)
            }
            SpCanonAction::BCongr => {
                let (y, w) = congr::b_congr_canonical(x)?;
                (y, w.u, None)
            }
        };
        *out_canonical = Box::into_raw(Box::new(SpMatrix(y)));
        if !out_w1.is_null() {
            *out_w1 = Box::into_raw(Box::new(SpMatrix(w1)));
        }
        if let (false, Some(k)) = (out_w2.is_null(), w2) {
            *out_w2 = Box::into_raw(Box::new(SpMatrix(k)));
        }
        Ok(SpStatus::Ok)
    })
}

/// U-equivalence of two matrices.
///
/// # Safety
/// `a`, `b` must be live handles; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_u_equivalent(
    a: *const SpMatrix,
    b: *const SpMatrix,
    out: *mut bool,
) -> SpStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        *out = equiv::u_equivalent(&(*a).0, &(*b).0)?;
        Ok(SpStatus::Ok)
    })
}

/// B-equivalence of two matrices.
///
/// # Safety
/// `a`, `b` must be live handles; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_b_equivalent(
    a: *const SpMatrix,
    b: *const SpMatrix,
    out: *mut bool,
) -> SpStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        *out = equiv::b_equivalent(&(*a).0, &(*b).0)?;
        Ok(SpStatus::Ok)
    })
}

/// P-equivalence for the standard parabolic named by a composition of n.
///
/// # Safety
/// `a`, `b` must be live handles; `composition` must point to `len` u32
/// values; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_p_equivalent(
    a: *const SpMatrix,
    b: *const SpMatrix,
    composition: *const u32,
    len: usize,
    out: *mut bool,
) -> SpStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        let p = composition_from_raw(composition, len)?;
        let (related, _) = p_equivalent(&(*a).0, &(*b).0, &p)?;
        *out = related;
        Ok(SpStatus::Ok)
    })
}

/// P-congruence of two symmetric or two alternating matrices.
///
/// # Safety
/// Same contract as [`sp_p_equivalent`].
#[no_mangle]
pub unsafe extern "C" fn sp_p_congruent(
    a: *const SpMatrix,
    b: *const SpMatrix,
    composition: *const u32,
    len: usize,
    kind: SpCongrKind,
    out: *mut bool,
) -> SpStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return SpStatus::NullArgument;
    }
    guarded(|| {
        let p = composition_from_raw(composition, len)?;
        let kind = match kind {
            SpCongrKind::Symmetric => CongrKind::Symmetric,
            SpCongrKind::Alternating => CongrKind::Alternating,
        };
        let (related, _) = p_congruent(&(*a).0, &(*b).0, &p, kind)?;
        *out = related;
        Ok(SpStatus::Ok)
    })
}

/// Block-rank and cross-count tables as a JSON object
/// {"block_rank": [[..]], "cross_count": [[..]]}; release with
/// sp_string_free. Returns NULL on error (see sp_last_error_message).
///
/// # Safety
/// `matrix` must be a live handle; `composition` must point to `len` u32
/// values.
#[no_mangle]
pub unsafe extern "C" fn sp_invariants_json(
    matrix: *const SpMatrix,
    composition: *const u32,
    len: usize,
) -> *mut c_char {
    if matrix.is_null() {
        return ptr::null_mut();
    }
    let result = catch_unwind(AssertUnwindSafe(|| -> Result<String, Error> {
        let p = composition_from_raw(composition, len)?;
        let m = &(*matrix).0;
        let block = block_rank_table(m, &p)?;
        let (y, _) = equiv::b_equiv_canonical(m);
        let cross = cross_counts(&y, &p)?;
        Ok(serde_json::json!({
            "block_rank": block.rows(),
            "cross_count": cross.rows(),
        })
        .to_string())
    }));
    match result {
        Ok(Ok(s)) => to_cstring(s),
        Ok(Err(e)) => {
            let _ = fail(e);
            ptr::null_mut()
        }
        Err(_) => {
            set_error("internal panic".into());
            ptr::null_mut()
        }
    }
}

/// Number of B-congruence orbits of alternating n-by-n matrices, as a
/// decimal string; release with sp_string_free.
#[no_mangle]
pub extern "C" fn sp_count_alt_orbits(n: u32) -> *mut c_char {
    to_cstring(count_alt_orbits(n as usize).to_string())
}

/// Number of B-congruence orbits of symmetric n-by-n matrices over a
/// square-closed odd-characteristic field, as a decimal string; release
/// with sp_string_free.
#[no_mangle]
pub extern "C" fn sp_count_sym_orbits(n: u32) -> *mut c_char {
    to_cstring(count_sym_orbits(n as usize).to_string())
}
