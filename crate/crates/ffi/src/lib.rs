//! C interface to the twisted-double library.
//!
//! Every object is an opaque heap handle created by a `td_*_new` or
//! `td_*_from_text` function and released with the matching `td_*_free`.
//! Functions return a [`TdStatus`]; on failure the message is available from
//! [`td_last_error_message`] until the next call on the same thread.
//! Results are written through out-pointers only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use twisted_double::cli::{canonical_json, double_results, tga_results, CliError};
use twisted_double::cocycles::{SetCocycle, TwoCocycle};
use twisted_double::double::GeneralizedDouble;
use twisted_double::group::{FiniteGroup, RightGSet};
use twisted_double::io::{self, ParseError};
use twisted_double::rep_decomp::classify_simples;
use twisted_double::twisted_algebra::TwistedGroupAlgebra;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Computation = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

pub struct TdGroup(Arc<FiniteGroup>);
pub struct TdGSet {
    group: Arc<FiniteGroup>,
    gset: Arc<RightGSet>,
}
pub struct TdCocycle(TwoCocycle);
pub struct TdSetCocycle(SetCocycle);
pub struct TdAlgebra(TwistedGroupAlgebra);
pub struct TdDouble(GeneralizedDouble);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TdStatus, String);

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure(TdStatus::Parse, e.to_string())
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e.exit_code() {
            1 => TdStatus::Validation,
            2 => TdStatus::Parse,
            _ => TdStatus::Computation,
        };
        Failure(status, e.to_string())
    }
}

fn computation(e: impl std::fmt::Display) -> Failure {
    Failure(TdStatus::Computation, e.to_string())
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, converting errors and panics into a status and recorded message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TdStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            TdStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TdStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TdStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(TdStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(TdStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn td_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn td_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a group file (`order N` table or `perm` cycles).
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_group_from_text(src: *const c_char, out: *mut *mut TdGroup) -> TdStatus {
    guard(|| {
        let g = io::parse_group(text(src)?)?;
        put(out, boxed(TdGroup(Arc::new(g))))
    })
}

/// The symmetric group on `n` points.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_group_symmetric(n: usize, out: *mut *mut TdGroup) -> TdStatus {
    guard(|| {
        if n == 0 || n > 5 {
            return Err(Failure(TdStatus::Computation, "symmetric group degree must be 1..=5".into()));
        }
        put(out, boxed(TdGroup(Arc::new(FiniteGroup::symmetric(n)))))
    })
}

/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_group_order(g: *const TdGroup, out: *mut usize) -> TdStatus {
    guard(|| put(out, get(g)?.0.order()))
}

/// # Safety
/// `g` must be null or a group handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_group_free(g: *mut TdGroup) {
    free(g)
}

/// Parses a G-set file (`size M` plus one row per point) over `g`.
///
/// # Safety
/// `g` must be a live group handle, `src` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_gset_from_text(g: *const TdGroup, src: *const c_char, out: *mut *mut TdGSet) -> TdStatus {
    guard(|| {
        let group = Arc::clone(&get(g)?.0);
        let gset = Arc::new(io::parse_gset(text(src)?, &group)?);
        put(out, boxed(TdGSet { group, gset }))
    })
}

/// `size` points, every element acting trivially.
///
/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_gset_trivial(g: *const TdGroup, size: usize, out: *mut *mut TdGSet) -> TdStatus {
    guard(|| {
        if size == 0 {
            return Err(Failure(TdStatus::Computation, "a G-set needs at least one point".into()));
        }
        let group = Arc::clone(&get(g)?.0);
        let gset = Arc::new(RightGSet::trivial(&group, size));
        put(out, boxed(TdGSet { group, gset }))
    })
}

/// # Safety
/// `s` must be a live G-set handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_gset_size(s: *const TdGSet, out: *mut usize) -> TdStatus {
    guard(|| put(out, get(s)?.gset.size()))
}

/// # Safety
/// `s` must be null or a G-set handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_gset_free(s: *mut TdGSet) {
    free(s)
}

/// Parses a scalar cocycle file (`cocycle N=<n>` plus `x y k` lines). The
/// cocycle law is not checked here; see [`td_cocycle_is_valid`].
///
/// # Safety
/// `g` must be a live group handle, `src` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_cocycle_from_text(g: *const TdGroup, src: *const c_char, out: *mut *mut TdCocycle) -> TdStatus {
    guard(|| {
        let c = io::parse_cocycle(text(src)?, &get(g)?.0, None)?.into_scalar()?;
        put(out, boxed(TdCocycle(c)))
    })
}

/// # Safety
/// `c` must be a live cocycle handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_cocycle_is_valid(c: *const TdCocycle, out: *mut bool) -> TdStatus {
    guard(|| put(out, get(c)?.0.is_valid()))
}

/// # Safety
/// `c` must be null or a cocycle handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_cocycle_free(c: *mut TdCocycle) {
    free(c)
}

/// Parses a cocycle file against a G-set. Three-column files give the same
/// cocycle at every point.
///
/// # Safety
/// `s` must be a live G-set handle, `src` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_set_cocycle_from_text(
    s: *const TdGSet,
    src: *const c_char,
    out: *mut *mut TdSetCocycle,
) -> TdStatus {
    guard(|| {
        let gs = get(s)?;
        let c = io::parse_cocycle(text(src)?, &gs.group, Some(&gs.gset))?.into_set(Arc::clone(&gs.gset))?;
        put(out, boxed(TdSetCocycle(c)))
    })
}

/// # Safety
/// `c` must be null or a set cocycle handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_set_cocycle_free(c: *mut TdSetCocycle) {
    free(c)
}

/// Builds the twisted group algebra; fails with `Validation` if the cocycle
/// law does not hold.
///
/// # Safety
/// `c` must be a live cocycle handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_algebra_new(c: *const TdCocycle, out: *mut *mut TdAlgebra) -> TdStatus {
    guard(|| {
        let alpha = get(c)?.0.clone();
        let alg = TwistedGroupAlgebra::new(alpha).map_err(|e| Failure(TdStatus::Validation, e.to_string()))?;
        put(out, boxed(TdAlgebra(alg)))
    })
}

/// # Safety
/// `a` must be a live algebra handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_algebra_center_dim(a: *const TdAlgebra, out: *mut usize) -> TdStatus {
    guard(|| put(out, get(a)?.0.center_basis().map_err(computation)?.len()))
}

/// # Safety
/// `a` must be a live algebra handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_algebra_regular_class_count(a: *const TdAlgebra, out: *mut usize) -> TdStatus {
    guard(|| put(out, get(a)?.0.regular_class_count().map_err(computation)?))
}

/// # Safety
/// `a` must be a live algebra handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_algebra_is_semisimple(a: *const TdAlgebra, out: *mut bool) -> TdStatus {
    guard(|| put(out, get(a)?.0.is_semisimple()))
}

/// Dimensions of the simple modules in ascending order. Writes the count to
/// `len`; if it exceeds `cap`, nothing is copied and `BufferTooSmall` is
/// returned so the caller can retry.
///
/// # Safety
/// `a` must be a live algebra handle, `dims` valid for `cap` writes (or null
/// when `cap` is 0), `len` writable.
#[no_mangle]
pub unsafe extern "C" fn td_algebra_simple_dims(
    a: *const TdAlgebra,
    tolerance: f64,
    seed: u64,
    dims: *mut usize,
    cap: usize,
    len: *mut usize,
) -> TdStatus {
    guard(|| {
        let s = classify_simples(&get(a)?.0, tolerance, seed).map_err(computation)?;
        put(len, s.dims.len())?;
        if s.dims.len() > cap {
            return Err(Failure(TdStatus::BufferTooSmall, format!("need room for {} dimensions", s.dims.len())));
        }
        if !s.dims.is_empty() {
            if dims.is_null() {
                return Err(Failure(TdStatus::NullPointer, "null dimension buffer".into()));
            }
            ptr::copy_nonoverlapping(s.dims.as_ptr(), dims, s.dims.len());
        }
        Ok(())
    })
}

/// Canonical JSON report `{dim, regular_class_count, center_dim, semisimple,
/// simple_dims}`; release with [`td_string_free`].
///
/// # Safety
/// `a` must be a live algebra handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_algebra_report_json(a: *const TdAlgebra, tolerance: f64, seed: u64, out: *mut *mut c_char) -> TdStatus {
    guard(|| {
        let v = tga_results(&get(a)?.0, tolerance, seed)?;
        put(out, CString::new(canonical_json(&v)).expect("JSON has no nul").into_raw())
    })
}

/// # Safety
/// `a` must be null or an algebra handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_algebra_free(a: *mut TdAlgebra) {
    free(a)
}

/// Builds the double; fails with `Validation` if the set cocycle law fails.
///
/// # Safety
/// `c` must be a live set cocycle handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_double_new(c: *const TdSetCocycle, out: *mut *mut TdDouble) -> TdStatus {
    guard(|| {
        let sc = get(c)?.0.clone();
        if let Err(v) = sc.validate() {
            return Err(Failure(TdStatus::Validation, format!("set cocycle law fails: {v:?}")));
        }
        put(out, boxed(TdDouble(GeneralizedDouble::new(sc).map_err(computation)?)))
    })
}

/// # Safety
/// `d` must be a live double handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_double_dim(d: *const TdDouble, out: *mut usize) -> TdStatus {
    guard(|| {
        let d = &get(d)?.0;
        put(out, d.group().order() * d.gset().size())
    })
}

/// # Safety
/// `d` must be a live double handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_double_center_dim(d: *const TdDouble, out: *mut usize) -> TdStatus {
    guard(|| put(out, get(d)?.0.center_basis().map_err(computation)?.elements.len()))
}

/// Canonical JSON report `{dim, orbits, total_center_dim, zlt_path}`;
/// release with [`td_string_free`].
///
/// # Safety
/// `d` must be a live double handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_double_report_json(d: *const TdDouble, tolerance: f64, seed: u64, out: *mut *mut c_char) -> TdStatus {
    guard(|| {
        let v = double_results(&get(d)?.0, tolerance, seed)?;
        put(out, CString::new(canonical_json(&v)).expect("JSON has no nul").into_raw())
    })
}

/// # Safety
/// `d` must be null or a double handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_double_free(d: *mut TdDouble) {
    free(d)
}
