//! C ABI over `fptool`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free`. Every call returns an [`FptStatus`]; on failure the
//! message is available from [`fpt_last_error`] on the same thread.
//! Strings returned through out-parameters are freed with [`fpt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fptool::frobenius::{pe_root, trace, FrobeniusLevel};
use fptool::fsing::{nu, test_ideal};
use fptool::groebner::Ideal;
use fptool::linkage::split_exponents;
use fptool::ring::{parse_poly, MonomialOrder, RationalParam, RingContext};
use fptool::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FptStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotPrime = 4,
    InvalidArgument = 5,
    RingMismatch = 6,
    ResourceLimit = 7,
    Panic = 8,
}

/// A polynomial ring over a prime field.
pub struct FptRing(RingContext);

/// An ideal of an [`FptRing`].
pub struct FptIdeal(Ideal);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(FptStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match &err {
            e if e.is_resource_limit() => FptStatus::ResourceLimit,
            Error::Parse { .. } | Error::UnknownVariable { .. } | Error::InvalidVariables(_) => FptStatus::Parse,
            Error::NotPrime(_) => FptStatus::NotPrime,
            Error::RingMismatch => FptStatus::RingMismatch,
            _ => FptStatus::InvalidArgument,
        };
        Failure(status, err.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> FptStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FptStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FptStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(FptStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(FptStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Outcome {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn fpt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fpt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates `F_p[vars]`. `vars` is comma-separated; `order` is "grevlex",
/// "lex" or null for grevlex.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_ring_new(
    p: u64,
    vars: *const c_char,
    order: *const c_char,
    out: *mut *mut FptRing,
) -> FptStatus {
    guard(|| {
        let names: Vec<&str> = text(vars, "vars")?.split(',').map(str::trim).collect();
        let order = if order.is_null() { MonomialOrder::Grevlex } else { MonomialOrder::parse(text(order, "order")?)? };
        let ring = RingContext::new(p, &names, order)?;
        put(out, Box::into_raw(Box::new(FptRing(ring))), "out")
    })
}

/// # Safety
/// `ring` must be null or come from [`fpt_ring_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fpt_ring_free(ring: *mut FptRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Parses comma-separated generators.
///
/// # Safety
/// `ring` must be a live handle, `gens` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_ideal_parse(
    ring: *const FptRing,
    gens: *const c_char,
    out: *mut *mut FptIdeal,
) -> FptStatus {
    guard(|| {
        let ring = handle(ring, "ring")?;
        let ideal = Ideal::parse(text(gens, "gens")?, &ring.0)?;
        put(out, Box::into_raw(Box::new(FptIdeal(ideal))), "out")
    })
}

/// # Safety
/// `ideal` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpt_ideal_free(ideal: *mut FptIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// The reduced Groebner basis as "(g1, g2, ...)".
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_ideal_to_string(ideal: *const FptIdeal, out: *mut *mut c_char) -> FptStatus {
    guard(|| {
        let ideal = handle(ideal, "ideal")?;
        put(out, c_string(ideal.0.reduced_string()), "out")
    })
}

/// Writes whether `inner ⊆ outer`.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_ideal_contains(
    outer: *const FptIdeal,
    inner: *const FptIdeal,
    out: *mut bool,
) -> FptStatus {
    guard(|| {
        let yes = handle(outer, "outer")?.0.contains_ideal(&handle(inner, "inner")?.0)?;
        put(out, yes, "out")
    })
}

/// Writes whether the two ideals are equal.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_ideal_equal(a: *const FptIdeal, b: *const FptIdeal, out: *mut bool) -> FptStatus {
    guard(|| {
        let yes = handle(a, "a")?.0.equals(&handle(b, "b")?.0)?;
        put(out, yes, "out")
    })
}

/// `I^{[1/p^e]}`.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_pe_root(ideal: *const FptIdeal, e: u32, out: *mut *mut FptIdeal) -> FptStatus {
    guard(|| {
        let i = &handle(ideal, "ideal")?.0;
        let root = pe_root(i, FrobeniusLevel::for_ring(i.ring(), e)?)?;
        put(out, Box::into_raw(Box::new(FptIdeal(root))), "out")
    })
}

/// `ν_I(p^e)` at the maximal ideal of the origin.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_nu(ideal: *const FptIdeal, e: u32, out: *mut u64) -> FptStatus {
    guard(|| {
        let i = &handle(ideal, "ideal")?.0;
        let v = nu(i, &Ideal::maximal_at_origin(i.ring()), FrobeniusLevel::for_ring(i.ring(), e)?)?;
        put(out, v, "out")
    })
}

/// Truncated test ideal of `I^{num/den}` summed over levels `0..=e_max`.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_test_ideal(
    ideal: *const FptIdeal,
    num: u64,
    den: u64,
    e_max: u32,
    out: *mut *mut FptIdeal,
) -> FptStatus {
    guard(|| {
        let i = &handle(ideal, "ideal")?.0;
        let tau = test_ideal(i, &RationalParam::new(num, den)?, e_max)?;
        put(out, Box::into_raw(Box::new(FptIdeal(tau.ideal))), "out")
    })
}

/// `Tr^e(f)` printed in the ring order.
///
/// # Safety
/// `ring` must be a live handle, `poly` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_trace(
    ring: *const FptRing,
    poly: *const c_char,
    e: u32,
    out: *mut *mut c_char,
) -> FptStatus {
    guard(|| {
        let ring = &handle(ring, "ring")?.0;
        let f = parse_poly(text(poly, "poly")?, ring)?;
        let t = trace(&f, FrobeniusLevel::for_ring(ring, e)?)?;
        put(out, c_string(t.to_string()), "out")
    })
}

/// Splits `beta[0..r]` into `c` rows written row-major into `rows`, which
/// must hold `c * r` entries.
///
/// # Safety
/// `beta` must point to `r` values and `rows` to `c * r` writable values.
#[no_mangle]
pub unsafe extern "C" fn fpt_split(beta: *const u64, r: usize, c: usize, q: u64, rows: *mut u64) -> FptStatus {
    guard(|| {
        if beta.is_null() {
            return Err(null("beta"));
        }
        if rows.is_null() {
            return Err(null("rows"));
        }
        let beta = std::slice::from_raw_parts(beta, r);
        let split = split_exponents(beta, c, q)?;
        for (k, v) in split.iter().flatten().enumerate() {
            rows.add(k).write(*v);
        }
        Ok(())
    })
}

/// Runs the command-line front end on `argv[0..argc]` (without the program
/// name). Writes the exit code and the captured stdout and stderr.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; out-pointers must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fpt_run_cli(
    argc: usize,
    argv: *const *const c_char,
    exit_code: *mut i32,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> FptStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let mut args = vec!["fptool".to_string()];
        for k in 0..argc {
            args.push(text(*argv.add(k), "argv entry")?.to_string());
        }
        let res = fptool::cli::run(args);
        put(exit_code, res.code, "exit_code")?;
        put(out_stdout, c_string(res.stdout), "out_stdout")?;
        put(out_stderr, c_string(res.stderr), "out_stderr")
    })
}
