// SPDX-License-Identifier: Apache-2.0

//! C ABI over the `mori` library.
//!
//! Classes and matrices are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`MoriStatus`]; on failure a message is available from
//! [`mori_last_error`] on the same thread. Strings handed out by the library
//! (always UTF-8 JSON) must be released with [`mori_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mori::cremona::{bertini, cg_family, geiser, js_family, quadratic, sturm, CharMatrix};
use mori::error::Error;
use mori::families::Family;
use mori::lattice::DivisorClass;
use mori::verify::{verify_good, wonderful_report, GoodFamily};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoriStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Mismatch = 5,
    Unsupported = 6,
    Refused = 7,
    Panic = 8,
}

/// A divisor class `dH - sum m_i E_i` with exact quadratic coefficients.
pub struct MoriClass(DivisorClass);

/// A characteristic matrix of a Cremona map.
pub struct MoriMatrix(CharMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MoriStatus {
    match e {
        Error::Parse(_) => MoriStatus::Parse,
        Error::Domain(_) | Error::IndexOutOfRange { .. } | Error::DivisionByZero => {
            MoriStatus::Domain
        }
        Error::IncompatibleFields { .. }
        | Error::LengthMismatch { .. }
        | Error::ShapeMismatch(_) => MoriStatus::Mismatch,
        Error::Refused { .. } | Error::NotALinePencil(_) => MoriStatus::Refused,
        Error::Unsupported(_) | Error::NoStrictDominance(_) | Error::ZeroDominantComponent => {
            MoriStatus::Unsupported
        }
    }
}

struct Fail(MoriStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Fail>;

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> MoriStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MoriStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MoriStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(MoriStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Fail(
            MoriStatus::InvalidUtf8,
            "argument is not valid UTF-8".into(),
        )
    })
}

unsafe fn handle<'a, T>(p: *const T) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| Fail(MoriStatus::NullPointer, "null handle".into()))
}

fn out_ptr<T>(out: *mut T) -> FfiResult<()> {
    if out.is_null() {
        Err(Fail(MoriStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn json_out<T: serde::Serialize>(v: &T, out: *mut *mut c_char) -> FfiResult<()> {
    let s = serde_json::to_string(v).map_err(|e| Fail(MoriStatus::Parse, e.to_string()))?;
    let c = CString::new(s).map_err(|e| Fail(MoriStatus::Parse, e.to_string()))?;
    // SAFETY: checked non-null by the caller of json_out.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> FfiResult<T> {
    Ok(s.parse::<T>()?)
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mori_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mori_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mori_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a class from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_class_from_json(
    json: *const c_char,
    out: *mut *mut MoriClass,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let text = str_arg(json)?;
        let class: DivisorClass =
            serde_json::from_str(text).map_err(|e| Fail(MoriStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(MoriClass(class)));
        Ok(())
    })
}

/// Builds a class from integer degree and multiplicities.
///
/// # Safety
/// `mults` must point to `len` readable values (or be NULL with `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn mori_class_from_ints(
    degree: i64,
    mults: *const i64,
    len: usize,
    out: *mut *mut MoriClass,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let m: &[i64] = if len == 0 {
            &[]
        } else if mults.is_null() {
            return Err(Fail(
                MoriStatus::NullPointer,
                "null multiplicity array".into(),
            ));
        } else {
            std::slice::from_raw_parts(mults, len)
        };
        *out = Box::into_raw(Box::new(MoriClass(DivisorClass::from_ints(degree, m))));
        Ok(())
    })
}

/// Closed-form limit class of a family (`odd`, `even`, `even_plus`,
/// `odd_plus`, `sq4`, `sq2`) at parameter `n`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_class_closed_form(
    family: *const c_char,
    n: u32,
    out: *mut *mut MoriClass,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let f: Family = parse(str_arg(family)?)?;
        *out = Box::into_raw(Box::new(MoriClass(f.closed_form(n)?)));
        Ok(())
    })
}

/// # Safety
/// `class` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn mori_class_free(class: *mut MoriClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// Number of points of the class (0 for NULL).
///
/// # Safety
/// `class` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mori_class_points(class: *const MoriClass) -> usize {
    class.as_ref().map_or(0, |c| c.0.s())
}

/// JSON form of the class.
///
/// # Safety
/// `class` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_class_to_json(
    class: *const MoriClass,
    out: *mut *mut c_char,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        json_out(&handle(class)?.0, out)
    })
}

/// `L_d(m_1, ...)` rendering of the class.
///
/// # Safety
/// `class` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_class_to_string(
    class: *const MoriClass,
    out: *mut *mut c_char,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let s = handle(class)?.0.to_string();
        *out = CString::new(s)
            .map_err(|e| Fail(MoriStatus::Parse, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Exact intersection number as a JSON quadratic number; `sign` receives its
/// sign (-1, 0, 1) when non-NULL.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable; `sign` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn mori_class_intersect(
    a: *const MoriClass,
    b: *const MoriClass,
    out: *mut *mut c_char,
    sign: *mut i8,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let v = handle(a)?.0.intersect(&handle(b)?.0)?;
        if !sign.is_null() {
            *sign = v.signum();
        }
        json_out(&v, out)
    })
}

/// Exact pairing with the De Fernex class `F_s`; `sign` receives its sign.
///
/// # Safety
/// `class` must be a live handle; `out` must be writable; `sign` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn mori_class_defernex(
    class: *const MoriClass,
    out: *mut *mut c_char,
    sign: *mut i8,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let v = handle(class)?.0.defernex_pairing()?;
        if !sign.is_null() {
            *sign = v.signum();
        }
        json_out(&v, out)
    })
}

/// Replaces point `index` (0-based) by `r^2` points of multiplicity `m / r`.
///
/// # Safety
/// `class` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_class_uncollide(
    class: *const MoriClass,
    index: usize,
    r: u32,
    out: *mut *mut MoriClass,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let c = handle(class)?.0.uncollide(index, r)?;
        *out = Box::into_raw(Box::new(MoriClass(c)));
        Ok(())
    })
}

/// Matrix by name: `Q`, `S`, `G`, `B` on their own points, or `JS`, `CG`
/// at parameter `n`.
///
/// # Safety
/// `kind` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_matrix_new(
    kind: *const c_char,
    n: u32,
    out: *mut *mut MoriMatrix,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let m = match str_arg(kind)? {
            "Q" => quadratic([0, 1, 2], 3)?,
            "S" => sturm([0, 1, 2, 3, 4, 5], 6)?,
            "G" => geiser([0, 1, 2, 3, 4, 5, 6], 7)?,
            "B" => bertini([0, 1, 2, 3, 4, 5, 6, 7], 8)?,
            "JS" => js_family(n)?,
            "CG" => cg_family(n)?,
            other => {
                return Err(Fail(
                    MoriStatus::Parse,
                    format!("unknown matrix kind '{other}'"),
                ))
            }
        };
        *out = Box::into_raw(Box::new(MoriMatrix(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn mori_matrix_free(m: *mut MoriMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// JSON form of the matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_matrix_to_json(
    m: *const MoriMatrix,
    out: *mut *mut c_char,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        json_out(&handle(m)?.0, out)
    })
}

/// Applies the matrix to a class on the same number of points.
///
/// # Safety
/// `m`, `class` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_matrix_apply(
    m: *const MoriMatrix,
    class: *const MoriClass,
    out: *mut *mut MoriClass,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let c = handle(m)?.0.apply(&handle(class)?.0)?;
        *out = Box::into_raw(Box::new(MoriClass(c)));
        Ok(())
    })
}

/// Full limit-ray report of a family at `n`, as JSON.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_eigenray_json(
    family: *const c_char,
    n: u32,
    out: *mut *mut c_char,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let f: Family = parse(str_arg(family)?)?;
        json_out(&wonderful_report(f, n)?, out)
    })
}

/// Good-ray certificate for (`family`, n, k) as JSON (`even`, `odd`, `sq4`,
/// `sq2`). A refused certificate returns `Refused` with the failing check in
/// the error message.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mori_verify_good_json(
    family: *const c_char,
    n: u32,
    k: u32,
    out: *mut *mut c_char,
) -> MoriStatus {
    guard(|| {
        out_ptr(out)?;
        let f: GoodFamily = parse(str_arg(family)?)?;
        json_out(&verify_good(f, n, k)?, out)
    })
}
