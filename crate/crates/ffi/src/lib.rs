//! C ABI for `pade-core`.
//!
//! Every function returns a [`PadeStatus`]. Results come back through out
//! pointers; strings handed out by the library are NUL-terminated UTF-8 and
//! must be released with [`pade_string_free`]. After a failure the message is
//! available from [`pade_last_error`] on the same thread.
//!
//! Reports use the same JSON envelope as the `pade` binary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pade_core::cli::{self, exit, CliError, Command, RunConfig};
use pade_core::criterion::{threshold, v_alpha};
use pade_core::exact::parse_rational;
use pade_core::holonomic::{FamilyConfig, FamilySpec};

/// Status codes. The first four agree with the exit codes of `pade`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadeStatus {
    Ok = 0,
    /// A check failed or a computation could not complete.
    Failure = 1,
    /// The Rodrigues image is the zero polynomial.
    ZeroPolynomial = 2,
    /// The input violates a hypothesis of the construction.
    Hypothesis = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Parse = 6,
    Panic = 7,
}

/// An opaque, validated operator family.
pub struct PadeFamily {
    spec: FamilySpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(PadeStatus, String);

impl From<CliError> for Fail {
    fn from(e: CliError) -> Self {
        let status = match e.code {
            exit::ZERO_POLYNOMIAL => PadeStatus::ZeroPolynomial,
            exit::HYPOTHESIS => PadeStatus::Hypothesis,
            _ => PadeStatus::Failure,
        };
        Fail(status, e.message)
    }
}

impl From<pade_core::Error> for Fail {
    fn from(e: pade_core::Error) -> Self {
        CliError::from(e).into()
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PadeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PadeStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PadeStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(PadeStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(PadeStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

fn check_out<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(PadeStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(PadeStatus::Failure, "report contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Runs a command and stores the JSON report. A report whose checks fail is
/// still written, and the call returns `Failure`.
unsafe fn run(command: Command, cfg: RunConfig, out_json: *mut *mut c_char) -> Result<(), Fail> {
    check_out(out_json)?;
    *out_json = ptr::null_mut();
    let outcome = cli::run_command(command, &cfg)?;
    give_string(out_json, cli::render(command, &cfg, &outcome))?;
    if outcome.ok {
        Ok(())
    } else {
        Err(Fail(PadeStatus::Failure, format!("{} checks failed", command.name())))
    }
}

fn family_run_config(fam: &PadeFamily) -> RunConfig {
    let c = fam.spec.to_config();
    RunConfig {
        family: Some(c.family),
        u: c.u.map(|u| u.to_string()),
        gamma: c.gamma,
        delta: c.delta,
        alpha: c.alpha,
        a: c.a,
        b: c.b,
        ..RunConfig::default()
    }
}

/// The version of the JSON report envelope.
#[no_mangle]
pub extern "C" fn pade_schema_version() -> u32 {
    cli::SCHEMA_VERSION
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn pade_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pade_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a family from a JSON object such as
/// `{"family": "chebyshev", "u": 2}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pade_family_new(json: *const c_char, out: *mut *mut PadeFamily) -> PadeStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let cfg: FamilyConfig =
            serde_json::from_str(text).map_err(|e| Fail(PadeStatus::Parse, format!("family config: {e}")))?;
        let spec = FamilySpec::from_config(&cfg)?;
        *out = Box::into_raw(Box::new(PadeFamily { spec }));
        Ok(())
    })
}

/// Releases a family. Null is ignored.
///
/// # Safety
/// `fam` must come from [`pade_family_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pade_family_free(fam: *mut PadeFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// Constructs and verifies the Pade system of index `n` for `f = z^h`.
///
/// # Safety
/// `fam` must be a live family and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pade_construct(
    fam: *const PadeFamily,
    n: usize,
    h: usize,
    out_json: *mut *mut c_char,
) -> PadeStatus {
    guard(|| {
        let fam = fam
            .as_ref()
            .ok_or_else(|| Fail(PadeStatus::NullPointer, "family is null".into()))?;
        let cfg = RunConfig {
            n: Some(n),
            h: Some(h),
            ..family_run_config(fam)
        };
        run(Command::Construct, cfg, out_json)
    })
}

/// Computes the determinant of index `n` and compares it with its closed form.
///
/// # Safety
/// `fam` must be a live family and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pade_det(
    fam: *const PadeFamily,
    n: usize,
    dump_matrix: bool,
    out_json: *mut *mut c_char,
) -> PadeStatus {
    guard(|| {
        let fam = fam
            .as_ref()
            .ok_or_else(|| Fail(PadeStatus::NullPointer, "family is null".into()))?;
        let cfg = RunConfig {
            n: Some(n),
            dump_matrix,
            ..family_run_config(fam)
        };
        run(Command::Det, cfg, out_json)
    })
}

/// Criterion constants for `alpha` (a rational such as `"64"` or `"1/25"`)
/// at `place` (`"inf"` or a prime).
///
/// # Safety
/// The strings must be NUL-terminated and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pade_criterion(
    u: u32,
    alpha: *const c_char,
    place: *const c_char,
    eps: f64,
    out_json: *mut *mut c_char,
) -> PadeStatus {
    guard(|| {
        let cfg = RunConfig {
            u: Some(u.to_string()),
            alpha: vec![read_str(alpha, "alpha")?.to_owned()],
            place: Some(read_str(place, "place")?.to_owned()),
            eps: Some(eps),
            ..RunConfig::default()
        };
        run(Command::Criterion, cfg, out_json)
    })
}

/// The threshold on `log |alpha|` above which `V(alpha) > 0`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pade_threshold(u: u32, out: *mut f64) -> PadeStatus {
    guard(|| {
        check_out(out)?;
        *out = threshold(u as u64)?;
        Ok(())
    })
}

/// `V(alpha)` at the archimedean place.
///
/// # Safety
/// `alpha` must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pade_v_alpha(u: u32, alpha: *const c_char, out: *mut f64) -> PadeStatus {
    guard(|| {
        check_out(out)?;
        let a = parse_rational(read_str(alpha, "alpha")?).map_err(|e| Fail(PadeStatus::Parse, e.to_string()))?;
        *out = v_alpha(u as u64, &a)?;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn last_error() -> String {
        let p = pade_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
    }

    #[test]
    fn threshold_for_two() {
        let mut t = 0.0;
        assert_eq!(unsafe { pade_threshold(2, &mut t) }, PadeStatus::Ok);
        assert!((t - 3.78).abs() < 0.01);
        assert!(pade_last_error().is_null());
    }

    #[test]
    fn null_output() {
        assert_eq!(unsafe { pade_threshold(2, ptr::null_mut()) }, PadeStatus::NullPointer);
        assert!(last_error().contains("null"));
    }

    #[test]
    fn bad_family_json() {
        let mut fam = ptr::null_mut();
        let s = unsafe { pade_family_new(c("{not json").as_ptr(), &mut fam) };
        assert_eq!(s, PadeStatus::Parse);
        assert!(fam.is_null());
    }

    #[test]
    fn v_alpha_parse_error() {
        let mut v = 0.0;
        let s = unsafe { pade_v_alpha(2, c("1/0/2").as_ptr(), &mut v) };
        assert_eq!(s, PadeStatus::Parse);
    }
}
