//! C interface to `lie_chord`.
//!
//! Every fallible call returns an [`LcStatus`] and writes its result through
//! an out-pointer. Algebras are opaque [`LcAlgebra`] handles released with
//! [`lc_algebra_free`]; strings returned by the library are released with
//! [`lc_string_free`]. After a failure, [`lc_last_error_message`] describes
//! it until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lie_chord::chord::parse_diagram;
use lie_chord::invariants::{compare_algebras, theorem_bound, Verdict};
use lie_chord::killing::{casimir_theta, KillingData};
use lie_chord::lie_algebra::{build_classical, direct_sum, ClassicalFamily, StructureConstants};
use lie_chord::linalg::format_rational;
use lie_chord::picture::{reduce_picture, ClosedPicture};
use lie_chord::tensor::{DiagramEvaluator, FloatEvaluator};
use lie_chord::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedInput = 3,
    DimensionMismatch = 4,
    SingularMatrix = 5,
    NotSemisimple = 6,
    BudgetExceeded = 7,
    InvariantViolated = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcVerdict {
    Distinct = 0,
    EqualUpTo = 1,
    IsomorphyCertified = 2,
}

/// Structure constants plus the inverse Killing form once computed.
pub struct LcAlgebra {
    sc: StructureConstants,
    kd: Option<KillingData>,
}

impl LcAlgebra {
    fn new(sc: StructureConstants) -> Self {
        Self { sc, kd: None }
    }

    fn killing(&mut self) -> Result<&KillingData, Error> {
        if self.kd.is_none() {
            self.kd = Some(casimir_theta(&self.sc)?);
        }
        Ok(self.kd.as_ref().expect("just set"))
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let clean = message.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("no interior nul"));
}

fn status_of(e: &Error) -> LcStatus {
    match e {
        Error::MalformedInput(_) => LcStatus::MalformedInput,
        Error::DimensionMismatch(_) => LcStatus::DimensionMismatch,
        Error::SingularMatrix => LcStatus::SingularMatrix,
        Error::NotSemisimple(_) | Error::NotSemisimpleFamily(_) => LcStatus::NotSemisimple,
        Error::BudgetExceeded(_) => LcStatus::BudgetExceeded,
        Error::InvariantViolated(_) => LcStatus::InvariantViolated,
    }
}

enum Failure {
    Status(LcStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, mapping errors and panics to a status and recording the message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LcStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let (status, message) = match outcome {
        Ok(Ok(())) => {
            set_last_error("");
            return LcStatus::Ok;
        }
        Ok(Err(Failure::Status(s, m))) => (s, m),
        Ok(Err(Failure::Lib(e))) => (status_of(&e), e.to_string()),
        Err(_) => (LcStatus::Panic, "internal panic".to_string()),
    };
    set_last_error(&message);
    status
}

fn null(what: &str) -> Failure {
    Failure::Status(LcStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Status(LcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` must be null or valid for a write.
unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings have no nul").into_raw()
}

/// Parses algebra JSON (`{"n": .., "mu": [[i, j, k, "p/q"], ...]}`, 1-based, `i < j`).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn lc_algebra_from_json(json: *const c_char, out: *mut *mut LcAlgebra) -> LcStatus {
    guard(|| {
        let sc = StructureConstants::from_json(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(LcAlgebra::new(sc))), "out")
    })
}

/// Builds `sl(m)`, `so(m)` or `sp(m)`; `family` is `"sl"`, `"so"` or `"sp"`.
///
/// # Safety
/// `family` must be a nul-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn lc_algebra_classical(family: *const c_char, m: u32, out: *mut *mut LcAlgebra) -> LcStatus {
    guard(|| {
        let family: ClassicalFamily = read_str(family, "family")?.parse()?;
        let sc = build_classical(family, m as usize)?;
        write_out(out, Box::into_raw(Box::new(LcAlgebra::new(sc))), "out")
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn lc_algebra_direct_sum(
    a: *const LcAlgebra,
    b: *const LcAlgebra,
    out: *mut *mut LcAlgebra,
) -> LcStatus {
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(|| null("a"))?, b.as_ref().ok_or_else(|| null("b"))?);
        let sc = direct_sum(&a.sc, &b.sc)?;
        write_out(out, Box::into_raw(Box::new(LcAlgebra::new(sc))), "out")
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lc_algebra_free(a: *mut LcAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_algebra_dim(a: *const LcAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.sc.dim())
}

/// # Safety
/// `a` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn lc_algebra_to_json(a: *const LcAlgebra, out: *mut *mut c_char) -> LcStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("algebra"))?;
        write_out(out, into_c_string(a.sc.to_json()), "out")
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn lc_algebra_is_semisimple(a: *mut LcAlgebra, out: *mut bool) -> LcStatus {
    guard(|| {
        let a = a.as_mut().ok_or_else(|| null("algebra"))?;
        let yes = match a.killing() {
            Ok(_) => true,
            Err(Error::NotSemisimple(_)) => false,
            Err(e) => return Err(e.into()),
        };
        write_out(out, yes, "out")
    })
}

/// Exact value of a chord diagram (`"1-3,2-4"`), written as `"p/q"` or `"p"`.
///
/// # Safety
/// `a` must be a live handle, `diagram` a nul-terminated string and `out`
/// valid for a write. Free the result with [`lc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lc_eval_diagram(
    a: *mut LcAlgebra,
    diagram: *const c_char,
    out: *mut *mut c_char,
) -> LcStatus {
    guard(|| {
        let a = a.as_mut().ok_or_else(|| null("algebra"))?;
        let d = parse_diagram(read_str(diagram, "diagram")?)?;
        let sc = a.sc.clone();
        let value = DiagramEvaluator::new(&sc, a.killing()?)?.evaluate(&d)?;
        write_out(out, into_c_string(format_rational(&value)), "out")
    })
}

/// Double-precision value of a chord diagram.
///
/// # Safety
/// `a` must be a live handle, `diagram` a nul-terminated string and `out`
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn lc_eval_diagram_f64(a: *mut LcAlgebra, diagram: *const c_char, out: *mut f64) -> LcStatus {
    guard(|| {
        let a = a.as_mut().ok_or_else(|| null("algebra"))?;
        let d = parse_diagram(read_str(diagram, "diagram")?)?;
        let sc = a.sc.clone();
        let value = FloatEvaluator::new(&sc, a.killing()?)?.evaluate(&d)?;
        write_out(out, value, "out")
    })
}

/// Compares all diagrams with up to `max_chords` chords.
///
/// On `LC_VERDICT_DISTINCT`, `witness` (if not null) receives the
/// distinguishing diagram; otherwise it receives null.
///
/// # Safety
/// `a`, `b` must be live handles; `verdict` must be valid for a write;
/// `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn lc_compare(
    a: *const LcAlgebra,
    b: *const LcAlgebra,
    max_chords: u32,
    verdict: *mut LcVerdict,
    witness: *mut *mut c_char,
) -> LcStatus {
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(|| null("a"))?, b.as_ref().ok_or_else(|| null("b"))?);
        let v = compare_algebras(&a.sc, &b.sc, max_chords as usize)?;
        let (kind, text) = match v {
            Verdict::Distinct { witness, .. } => (LcVerdict::Distinct, Some(witness.to_string())),
            Verdict::EqualUpTo(_) => (LcVerdict::EqualUpTo, None),
            Verdict::IsomorphyCertified => (LcVerdict::IsomorphyCertified, None),
        };
        write_out(verdict, kind, "verdict")?;
        if !witness.is_null() {
            witness.write(text.map_or(ptr::null_mut(), into_c_string));
        }
        Ok(())
    })
}

/// The chord-count bound `k(n)` as an exact rational string.
///
/// # Safety
/// `out` must be valid for a write. Free the result with [`lc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lc_theorem_bound(n: u64, out: *mut *mut c_char) -> LcStatus {
    guard(|| {
        if n == 0 {
            return Err(Failure::Status(LcStatus::MalformedInput, "n must be positive".into()));
        }
        write_out(out, into_c_string(format_rational(&theorem_bound(n).0)), "out")
    })
}

/// Reduces picture JSON to a combination of chord diagrams, one term per
/// line (`coeff [D1] [D2] ...`).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn lc_reduce_picture(json: *const c_char, out: *mut *mut c_char) -> LcStatus {
    guard(|| {
        let p = ClosedPicture::from_json(read_str(json, "json")?)?;
        write_out(out, into_c_string(reduce_picture(&p)?.to_string()), "out")
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread (empty after a success).
/// Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn lc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code, such as `"not_semisimple"`.
#[no_mangle]
pub extern "C" fn lc_status_name(status: LcStatus) -> *const c_char {
    let name: &'static CStr = match status {
        LcStatus::Ok => c"ok",
        LcStatus::NullPointer => c"null_pointer",
        LcStatus::InvalidUtf8 => c"invalid_utf8",
        LcStatus::MalformedInput => c"malformed_input",
        LcStatus::DimensionMismatch => c"dimension_mismatch",
        LcStatus::SingularMatrix => c"singular_matrix",
        LcStatus::NotSemisimple => c"not_semisimple",
        LcStatus::BudgetExceeded => c"budget_exceeded",
        LcStatus::InvariantViolated => c"invariant_violated",
        LcStatus::Panic => c"panic",
    };
    name.as_ptr()
}
