//! C interface to the localizing-ring library. Every object crosses the
//! boundary as an opaque handle owned by this library and released with
//! the matching `_free` function; every fallible call returns an
//! [`AssoclocStatus`] and leaves a human-readable message retrievable
//! with [`assocloc_last_error`] on failure. Strings returned by the
//! library are NUL-terminated, UTF-8, and released with
//! [`assocloc_string_free`]. Handles are not thread-safe; the last-error
//! slot is thread-local.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use assocloc::algebra::AlgebraPresentation;
use assocloc::cli::verify_report;
use assocloc::format::{parse_algebra, parse_module};
use assocloc::localize::{localize, LocalFunctionRing};
use assocloc::module::ModuleRep;
use assocloc::session::Session;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssoclocStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input text did not parse; see `assocloc_last_error`.
    ParseError = 3,
    /// The input parsed but violates the algebra or module axioms.
    InvalidInput = 4,
    /// A construction failed (non-simple summand, zero divisor, …).
    MathError = 5,
    /// An index was out of range.
    OutOfRange = 6,
}

/// An algebra presentation (opaque).
pub struct AssoclocAlgebra {
    inner: Arc<AlgebraPresentation>,
}

/// A verified right module over some algebra (opaque).
pub struct AssoclocModule {
    inner: ModuleRep,
}

/// A localizing ring `A_M` (opaque).
pub struct AssoclocLocalRing {
    inner: LocalFunctionRing,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(msg).expect("NUL bytes stripped"));
    });
}

/// The message from the most recent failing call on this thread, or NULL
/// if none has failed yet. The pointer is valid until the next failing
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn assocloc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.as_ptr(),
        None => std::ptr::null(),
    })
}

/// # Safety
/// `text` must be a NUL-terminated string valid for reads.
unsafe fn utf8_in<'a>(text: *const c_char) -> Result<&'a str, AssoclocStatus> {
    if text.is_null() {
        set_error("text argument is NULL");
        return Err(AssoclocStatus::NullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("text argument is not valid UTF-8");
        AssoclocStatus::InvalidUtf8
    })
}

/// Parse and validate an algebra file. On success stores a new handle in
/// `*out`; release it with [`assocloc_algebra_free`].
///
/// # Safety
/// `text` must be a NUL-terminated string valid for reads and `out` a
/// valid pointer to writable memory.
#[no_mangle]
pub unsafe extern "C" fn assocloc_algebra_parse(
    text: *const c_char,
    out: *mut *mut AssoclocAlgebra,
) -> AssoclocStatus {
    if out.is_null() {
        set_error("out argument is NULL");
        return AssoclocStatus::NullArgument;
    }
    let src = match utf8_in(text) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let parsed = match parse_algebra(src) {
        Ok(p) => p,
        Err(e) => {
            set_error(e.to_string());
            return AssoclocStatus::ParseError;
        }
    };
    if let Err(violations) = parsed.presentation.validate() {
        let lines: Vec<String> = violations.iter().take(4).map(|v| v.to_string()).collect();
        set_error(lines.join("; "));
        return AssoclocStatus::InvalidInput;
    }
    let handle = Box::new(AssoclocAlgebra { inner: Arc::new(parsed.presentation) });
    *out = Box::into_raw(handle);
    AssoclocStatus::Ok
}

/// Release an algebra handle; NULL is a no-op.
///
/// # Safety
/// `a` must be NULL or a pointer returned by [`assocloc_algebra_parse`]
/// that has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn assocloc_algebra_free(a: *mut AssoclocAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension over the prime field; 0 if the handle is NULL.
///
/// # Safety
/// `a` must be NULL or a live algebra handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_algebra_dim(a: *const AssoclocAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.inner.dim())
}

/// The field characteristic p; 0 if the handle is NULL.
///
/// # Safety
/// `a` must be NULL or a live algebra handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_algebra_modulus(a: *const AssoclocAlgebra) -> u64 {
    a.as_ref().map_or(0, |a| a.inner.field().modulus())
}

/// Whether the multiplication table is commutative; false on NULL.
///
/// # Safety
/// `a` must be NULL or a live algebra handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_algebra_is_commutative(a: *const AssoclocAlgebra) -> bool {
    a.as_ref().is_some_and(|a| a.inner.is_commutative())
}

/// The algebra's name as a fresh string; NULL if the handle is NULL.
/// Release with [`assocloc_string_free`].
///
/// # Safety
/// `a` must be NULL or a live algebra handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_algebra_name(a: *const AssoclocAlgebra) -> *mut c_char {
    match a.as_ref() {
        Some(a) => CString::new(a.inner.name().replace('\0', " "))
            .expect("NUL bytes stripped")
            .into_raw(),
        None => std::ptr::null_mut(),
    }
}

/// Parse a module file over `algebra` and verify the module axioms. On
/// success stores a new handle in `*out`; release it with
/// [`assocloc_module_free`].
///
/// # Safety
/// `text` must be a NUL-terminated string valid for reads, `algebra` a
/// live algebra handle, and `out` a valid pointer to writable memory.
#[no_mangle]
pub unsafe extern "C" fn assocloc_module_parse(
    text: *const c_char,
    algebra: *const AssoclocAlgebra,
    out: *mut *mut AssoclocModule,
) -> AssoclocStatus {
    if out.is_null() || algebra.is_null() {
        set_error("algebra or out argument is NULL");
        return AssoclocStatus::NullArgument;
    }
    let src = match utf8_in(text) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let alg = &(*algebra).inner;
    let parsed = match parse_module(src, alg) {
        Ok(p) => p,
        Err(e) => {
            set_error(e.to_string());
            return AssoclocStatus::ParseError;
        }
    };
    match parsed.build(alg) {
        Ok(module) => {
            *out = Box::into_raw(Box::new(AssoclocModule { inner: module }));
            AssoclocStatus::Ok
        }
        Err(violations) => {
            let lines: Vec<String> = violations.iter().take(4).map(|v| v.to_string()).collect();
            set_error(lines.join("; "));
            AssoclocStatus::InvalidInput
        }
    }
}

/// Release a module handle; NULL is a no-op.
///
/// # Safety
/// `m` must be NULL or a pointer returned by [`assocloc_module_parse`]
/// that has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn assocloc_module_free(m: *mut AssoclocModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the module; 0 if the handle is NULL.
///
/// # Safety
/// `m` must be NULL or a live module handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_module_dim(m: *const AssoclocModule) -> usize {
    m.as_ref().map_or(0, |m| m.inner.dim())
}

/// Construct the localizing ring `A_M` for `M = M_0 ⊕ … ⊕ M_{len-1}`.
/// All summands must be simple modules over `algebra`. On success stores
/// a new handle in `*out`; release it with [`assocloc_local_ring_free`].
///
/// # Safety
/// `algebra` must be a live algebra handle, `summands` a valid array of
/// `len ≥ 1` live module handles over that same algebra, and `out` a
/// valid pointer to writable memory.
#[no_mangle]
pub unsafe extern "C" fn assocloc_localize(
    algebra: *const AssoclocAlgebra,
    summands: *const *const AssoclocModule,
    len: usize,
    seed: u64,
    cap: u64,
    out: *mut *mut AssoclocLocalRing,
) -> AssoclocStatus {
    if algebra.is_null() || summands.is_null() || out.is_null() {
        set_error("algebra, summands, or out argument is NULL");
        return AssoclocStatus::NullArgument;
    }
    if len == 0 {
        set_error("at least one summand is required");
        return AssoclocStatus::OutOfRange;
    }
    let alg = &(*algebra).inner;
    let handles = std::slice::from_raw_parts(summands, len);
    let mut mods = Vec::with_capacity(len);
    for (i, &h) in handles.iter().enumerate() {
        match h.as_ref() {
            Some(m) => mods.push(m.inner.clone()),
            None => {
                set_error(format!("summand {i} is NULL"));
                return AssoclocStatus::NullArgument;
            }
        }
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        let mut session = Session::with_seed_and_cap(seed, cap);
        localize(alg, &mods, &mut session)
    }));
    match result {
        Ok(Ok(ring)) => {
            *out = Box::into_raw(Box::new(AssoclocLocalRing { inner: ring }));
            AssoclocStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            AssoclocStatus::MathError
        }
        Err(_) => {
            set_error("summands do not belong to the given algebra");
            AssoclocStatus::InvalidInput
        }
    }
}

/// Release a local-ring handle; NULL is a no-op.
///
/// # Safety
/// `l` must be NULL or a pointer returned by [`assocloc_localize`] that
/// has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn assocloc_local_ring_free(l: *mut AssoclocLocalRing) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Dimension of `A_M` over the prime field; 0 if the handle is NULL.
///
/// # Safety
/// `l` must be NULL or a live local-ring handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_local_ring_dim(l: *const AssoclocLocalRing) -> usize {
    l.as_ref().map_or(0, |l| l.inner.dim())
}

/// Dimension of `ker η ⊆ A`; 0 if the handle is NULL.
///
/// # Safety
/// `l` must be NULL or a live local-ring handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_local_ring_kernel_dim(l: *const AssoclocLocalRing) -> usize {
    l.as_ref().map_or(0, |l| l.inner.kernel().dim())
}

/// Number of recorded unit denominators; 0 if the handle is NULL.
///
/// # Safety
/// `l` must be NULL or a live local-ring handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_local_ring_num_denominators(
    l: *const AssoclocLocalRing,
) -> usize {
    l.as_ref().map_or(0, |l| l.inner.denominators().len())
}

/// Whether the denominator list was truncated at the enumeration cap;
/// false on NULL.
///
/// # Safety
/// `l` must be NULL or a live local-ring handle.
#[no_mangle]
pub unsafe extern "C" fn assocloc_local_ring_truncated(l: *const AssoclocLocalRing) -> bool {
    l.as_ref().is_some_and(|l| l.inner.truncated())
}

/// Run the full invariant suite on an algebra and return the rendered
/// report in `*out_report` (release with [`assocloc_string_free`]).
/// `*out_failures` receives the number of unexpected check failures, so
/// 0 means every check passed.
///
/// # Safety
/// `algebra` must be a live algebra handle; `out_report` and
/// `out_failures` must be valid pointers to writable memory.
#[no_mangle]
pub unsafe extern "C" fn assocloc_verify(
    algebra: *const AssoclocAlgebra,
    seed: u64,
    cap: u64,
    out_report: *mut *mut c_char,
    out_failures: *mut usize,
) -> AssoclocStatus {
    if algebra.is_null() || out_report.is_null() || out_failures.is_null() {
        set_error("algebra, out_report, or out_failures argument is NULL");
        return AssoclocStatus::NullArgument;
    }
    let alg = &(*algebra).inner;
    let result = catch_unwind(AssertUnwindSafe(|| {
        let mut session = Session::with_seed_and_cap(seed, cap);
        verify_report(alg, &mut session)
    }));
    match result {
        Ok(Ok(report)) => {
            *out_failures = report.unexpected().len();
            let text = report.render().replace('\0', " ");
            *out_report = CString::new(text).expect("NUL bytes stripped").into_raw();
            AssoclocStatus::Ok
        }
        Ok(Err(msg)) => {
            set_error(msg);
            AssoclocStatus::MathError
        }
        Err(_) => {
            set_error("internal invariant violated during verification");
            AssoclocStatus::MathError
        }
    }
}

/// Release a string returned by this library; NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string returned by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn assocloc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
