//! C ABI over darbouxkit.
//!
//! Every function returns a [`DkStatus`]. Strings handed out by the library
//! must be released with [`dk_string_free`]; fields with [`dk_field_free`].
//! The message for the last failing call on the current thread is available
//! through [`dk_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use darbouxkit::algebra::Vars;
use darbouxkit::cli::{self, cert, parse};
use darbouxkit::invariants::find_invariant_curves;
use darbouxkit::polysolve::Budget;
use darbouxkit::vectorfield::VectorField;
use darbouxkit::Error;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    NoSolution = 5,
    ResourceLimit = 6,
    VerificationFailed = 7,
    Internal = 8,
}

/// Opaque handle to a planar polynomial vector field.
pub struct DkField {
    field: VectorField,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> DkStatus {
    match e {
        Error::Syntax { .. } | Error::NonPolynomial(_) => DkStatus::ParseError,
        Error::ResourceLimit(_) => DkStatus::ResourceLimit,
        Error::NoSolution(_) => DkStatus::NoSolution,
        Error::MalformedCertificate(_) | Error::Invalid(_) => DkStatus::InvalidInput,
        _ => DkStatus::InvalidInput,
    }
}

fn fail(e: &Error) -> DkStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> DkStatus) -> DkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            DkStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, DkStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(DkStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        DkStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> DkStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            DkStatus::Ok
        }
        Err(_) => {
            set_error("output contains a nul byte");
            DkStatus::Internal
        }
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Parses `P` and `Q` (in `x`, `y`) into a new field handle written to `out`.
///
/// # Safety
/// `p` and `q` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_field_new(p: *const c_char, q: *const c_char, out: *mut *mut DkField) -> DkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return DkStatus::NullPointer;
        }
        let (p, q) = (try_status!(read_str(p)), try_status!(read_str(q)));
        let vars = Vars::xy();
        let built = parse::parse_polynomial(p, &vars)
            .and_then(|p| Ok((p, parse::parse_polynomial(q, &vars)?)))
            .and_then(|(p, q)| VectorField::new(p, q));
        match built {
            Ok(field) => {
                *out = Box::into_raw(Box::new(DkField { field }));
                DkStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a field handle; null is ignored.
///
/// # Safety
/// `field` must come from [`dk_field_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dk_field_free(field: *mut DkField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Canonical `(P, Q)` text of the field.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_field_describe(field: *const DkField, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            set_error("null pointer argument");
            return DkStatus::NullPointer;
        }
        write_string(out, (*field).field.to_string())
    })
}

/// Hex SHA-256 fingerprint of the field, as used in reports.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_field_fingerprint(field: *const DkField, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            set_error("null pointer argument");
            return DkStatus::NullPointer;
        }
        write_string(out, cli::fingerprint(&(*field).field))
    })
}

/// Invariant curves up to `max_degree` as a JSON array of cert-v1 objects.
/// `complete` (if non-null) receives 1 when the search was exhaustive.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_find_curves(field: *const DkField, max_degree: u32, out: *mut *mut c_char, complete: *mut c_int) -> DkStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            set_error("null pointer argument");
            return DkStatus::NullPointer;
        }
        let f = &(*field).field;
        match find_invariant_curves(f, max_degree, &Budget::default()) {
            Ok(s) => {
                if !complete.is_null() {
                    *complete = s.complete as c_int;
                }
                write_string(out, cert::curves_json(f, &s.all_curves()))
            }
            Err(e) => fail(&e),
        }
    })
}

/// Re-checks every cert-v1 object in `json`. `all_ok` receives 1 when all pass;
/// `checks` (if non-null) receives the per-certificate results as JSON.
/// Returns `VerificationFailed` when some certificate does not verify.
///
/// # Safety
/// `json` must be a nul-terminated string; `all_ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_verify_certificate(json: *const c_char, all_ok: *mut c_int, checks: *mut *mut c_char) -> DkStatus {
    guard(|| {
        if all_ok.is_null() {
            set_error("null output pointer");
            return DkStatus::NullPointer;
        }
        *all_ok = 0;
        let text = try_status!(read_str(json));
        match cert::verify_text(text) {
            Ok((ok, report)) => {
                *all_ok = ok as c_int;
                if !checks.is_null() {
                    let s = write_string(checks, report);
                    if s != DkStatus::Ok {
                        return s;
                    }
                }
                if ok {
                    DkStatus::Ok
                } else {
                    set_error("a certificate failed verification");
                    DkStatus::VerificationFailed
                }
            }
            Err(e) => fail(&e),
        }
    })
}

/// Runs a command line (arguments without the program name). The JSON report
/// goes to `report` (possibly empty), the process-style exit code to `exit_code`.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_run(argc: usize, argv: *const *const c_char, report: *mut *mut c_char, exit_code: *mut c_int) -> DkStatus {
    guard(|| {
        if report.is_null() || exit_code.is_null() || (argc > 0 && argv.is_null()) {
            set_error("null pointer argument");
            return DkStatus::NullPointer;
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(try_status!(read_str(*argv.add(i))).to_string());
        }
        let out = cli::run(args);
        *exit_code = out.code;
        if !out.stderr.is_empty() {
            set_error(out.stderr.trim_end());
        }
        write_string(report, out.stdout)
    })
}

/// Frees a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread (empty if none). Valid until the
/// next call into the library from the same thread; do not free.
#[no_mangle]
pub extern "C" fn dk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static; do not free.
#[no_mangle]
pub extern "C" fn dk_version() -> *const c_char {
    static V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr() as *const c_char
}
