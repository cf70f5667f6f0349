//! C ABI over the extrafun library.
//!
//! Objects cross the boundary as opaque handles created by the parse and
//! family constructors and released by the matching `exf_*_free`. Every fallible
//! call returns an [`ExfStatus`]; on failure a description is available from
//! [`exf_last_error`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use extrafun::expr::{differentiate, eval, parse, Expr};
use extrafun::hyperspace::{equivalent, FunSeq, Verdict, Window};
use extrafun::seminorm::{family_sup, SeminormFamily, DEFAULT_GRID};
use extrafun::Error;

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExfStatus {
    Ok = 0,
    Syntax = 1,
    Domain = 2,
    Shape = 3,
    FamilyMismatch = 4,
    OutOfDomain = 5,
    UndefinedDerivative = 6,
    NonDifferentiable = 7,
    NotSeparable = 8,
    ZeroScalar = 9,
    InvalidArgument = 10,
    NullPointer = 11,
    InvalidUtf8 = 12,
    Panic = 13,
}

/// Three-valued outcome of a decision.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExfVerdict {
    Holds = 0,
    Fails = 1,
    Inconclusive = 2,
}

/// A parsed expression in `x` and `n`.
pub struct ExfExpr(Expr);

/// A seminorm family.
pub struct ExfFamily(SeminormFamily);

/// A function sequence.
pub struct ExfSeq(FunSeq);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> ExfStatus {
    match e {
        Error::Syntax { .. } => ExfStatus::Syntax,
        Error::Domain(_) => ExfStatus::Domain,
        Error::Shape(_) => ExfStatus::Shape,
        Error::FamilyMismatch { .. } => ExfStatus::FamilyMismatch,
        Error::OutOfDomain(_) => ExfStatus::OutOfDomain,
        Error::UndefinedDerivative { .. } => ExfStatus::UndefinedDerivative,
        Error::NonDifferentiable(_) => ExfStatus::NonDifferentiable,
        Error::NotSeparable => ExfStatus::NotSeparable,
        Error::ZeroScalar => ExfStatus::ZeroScalar,
        Error::InvalidArgument(_) => ExfStatus::InvalidArgument,
    }
}

struct Fail(ExfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ExfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ExfStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ExfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(ExfStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(ExfStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(ExfStatus::NullPointer, format!("null {what}")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(ExfStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failing call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn exf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn exf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn exf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `src` into a new expression.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_expr_parse(src: *const c_char, out: *mut *mut ExfExpr) -> ExfStatus {
    guard(|| {
        let e = parse(str_arg(src)?)?;
        put(out, Box::into_raw(Box::new(ExfExpr(e))))
    })
}

/// Evaluates `e` at `(x, n)`.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_expr_eval(e: *const ExfExpr, x: f64, n: u64, out: *mut f64) -> ExfStatus {
    guard(|| put(out, eval(&obj(e, "expression")?.0, x, n)?))
}

/// Symbolic derivative with respect to `x`, as a new expression.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_expr_differentiate(e: *const ExfExpr, out: *mut *mut ExfExpr) -> ExfStatus {
    guard(|| {
        let d = differentiate(&obj(e, "expression")?.0).into_result()?;
        put(out, Box::into_raw(Box::new(ExfExpr(d))))
    })
}

/// Source text of `e`; release with [`exf_string_free`]. Null on a null
/// handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn exf_expr_to_string(e: *const ExfExpr) -> *mut c_char {
    match e.as_ref() {
        Some(e) => CString::new(e.0.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `e` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exf_expr_free(e: *mut ExfExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Point evaluations at `points[0..len]`.
///
/// # Safety
/// `points` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_family_pointwise(
    points: *const f64,
    len: usize,
    out: *mut *mut ExfFamily,
) -> ExfStatus {
    guard(|| {
        if points.is_null() && len > 0 {
            return Err(Fail(ExfStatus::NullPointer, "null points".into()));
        }
        let pts = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(points, len)
        };
        let q = SeminormFamily::pointwise(pts)?;
        put(out, Box::into_raw(Box::new(ExfFamily(q))))
    })
}

/// Grid sups over `count` intervals given as `[a0, b0, a1, b1, ...]`. A
/// `grid` of 0 selects the default.
///
/// # Safety
/// `bounds` must hold `2 * count` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_family_compact_sup(
    bounds: *const f64,
    count: usize,
    grid: usize,
    out: *mut *mut ExfFamily,
) -> ExfStatus {
    guard(|| {
        if bounds.is_null() && count > 0 {
            return Err(Fail(ExfStatus::NullPointer, "null bounds".into()));
        }
        let flat = if count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(bounds, 2 * count)
        };
        let intervals: Vec<(f64, f64)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let grid = if grid == 0 { DEFAULT_GRID } else { grid };
        let q = SeminormFamily::compact_sup(&intervals, grid)?;
        put(out, Box::into_raw(Box::new(ExfFamily(q))))
    })
}

/// The absolute value on numbers.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_family_abs(out: *mut *mut ExfFamily) -> ExfStatus {
    guard(|| put(out, Box::into_raw(Box::new(ExfFamily(SeminormFamily::abs())))))
}

/// Largest seminorm of `e` at index `n` over the family.
///
/// # Safety
/// `q` and `e` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_family_sup(
    q: *const ExfFamily,
    e: *const ExfExpr,
    n: u64,
    out: *mut f64,
) -> ExfStatus {
    guard(|| {
        put(
            out,
            family_sup(&obj(q, "family")?.0, &obj(e, "expression")?.0, n)?,
        )
    })
}

/// # Safety
/// `q` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exf_family_free(q: *mut ExfFamily) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// The sequence whose i-th term is `src` with `n = i`.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_seq_parse(src: *const c_char, out: *mut *mut ExfSeq) -> ExfStatus {
    guard(|| {
        let f = FunSeq::parse(str_arg(src)?)?;
        put(out, Box::into_raw(Box::new(ExfSeq(f))))
    })
}

/// The sequence `heads[0], ..., heads[len-1], tail, tail, ...`.
///
/// # Safety
/// `heads` must hold `len` strings; `tail` must be a nul-terminated string;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_seq_list(
    heads: *const *const c_char,
    len: usize,
    tail: *const c_char,
    out: *mut *mut ExfSeq,
) -> ExfStatus {
    guard(|| {
        if heads.is_null() && len > 0 {
            return Err(Fail(ExfStatus::NullPointer, "null heads".into()));
        }
        let heads = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(heads, len)
        };
        let head = heads
            .iter()
            .map(|&s| Ok(parse(str_arg(s)?)?))
            .collect::<Result<Vec<_>, Fail>>()?;
        let f = FunSeq::list(head, parse(str_arg(tail)?)?);
        put(out, Box::into_raw(Box::new(ExfSeq(f))))
    })
}

/// Value of term `i` at `x`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_seq_eval(f: *const ExfSeq, i: u64, x: f64, out: *mut f64) -> ExfStatus {
    guard(|| put(out, obj(f, "sequence")?.0.eval(i, x)?))
}

/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exf_seq_free(f: *mut ExfSeq) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Decides `f ~ g` under `q` on the window `start..=end` with tolerance
/// `epsilon`.
///
/// # Safety
/// `f`, `g` and `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exf_equivalent(
    f: *const ExfSeq,
    g: *const ExfSeq,
    q: *const ExfFamily,
    start: u64,
    end: u64,
    epsilon: f64,
    out: *mut ExfVerdict,
) -> ExfStatus {
    guard(|| {
        let w = Window::new(start, end, epsilon)?;
        let d = equivalent(
            &obj(f, "sequence")?.0,
            &obj(g, "sequence")?.0,
            &obj(q, "family")?.0,
            &w,
        )?;
        let v = match d.verdict {
            Verdict::Holds => ExfVerdict::Holds,
            Verdict::Fails => ExfVerdict::Fails,
            Verdict::Inconclusive => ExfVerdict::Inconclusive,
        };
        put(out, v)
    })
}
