//! C ABI for `zetaprod`.
//!
//! Every function returns a [`ZpStatus`] and writes its result through an
//! out-pointer. On failure [`zp_last_error`] describes what went wrong on the
//! calling thread. Zero tables are opaque handles created by
//! [`zp_table_load`] or [`zp_table_from_ordinates`] and released with
//! [`zp_table_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use zetaprod::cramer::{self, default_laurent_grid, extract_laurent_coeffs};
use zetaprod::regprod::{
    poly_f, poly_f_tilde, s_exp, s_sine, C1Mode, C1Table, ExpParams, SignC0, SineParams,
};
use zetaprod::{zeta_pochhammer, BoundedValue, Error, PochhammerArgs, ZeroTable};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZpStatus {
    Ok = 0,
    NullPointer = 1,
    Io = 2,
    Parse = 3,
    Domain = 4,
    Precondition = 5,
    Pole = 6,
    InvalidParams = 7,
    MissingC1 = 8,
    InsufficientRange = 9,
    Numerical = 10,
    Panic = 11,
    Other = 12,
}

/// Opaque zero table.
pub struct ZpTable {
    inner: ZeroTable,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ZpComplex {
    pub re: f64,
    pub im: f64,
}

/// A value with an absolute bound on the omitted tail.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ZpBounded {
    pub value: ZpComplex,
    pub tail_bound: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ZpLaurent {
    pub c_minus1: ZpComplex,
    pub c_0: ZpComplex,
    pub c_1: ZpComplex,
    pub c1_uncertainty: f64,
    pub condition: f64,
}

impl From<ZpComplex> for Complex64 {
    fn from(z: ZpComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for ZpComplex {
    fn from(z: Complex64) -> Self {
        ZpComplex { re: z.re, im: z.im }
    }
}

impl From<BoundedValue> for ZpBounded {
    fn from(b: BoundedValue) -> Self {
        ZpBounded {
            value: b.value.into(),
            tail_bound: b.tail_bound,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ZpStatus {
    match e {
        Error::Read { .. } | Error::Write { .. } | Error::Network(_) | Error::HttpStatus(_) => {
            ZpStatus::Io
        }
        Error::Parse { .. }
        | Error::Cache(_)
        | Error::EmptyTable
        | Error::DuplicateOrdinate { .. } => ZpStatus::Parse,
        Error::Domain(_) => ZpStatus::Domain,
        Error::Precondition(_) => ZpStatus::Precondition,
        Error::Pole(_) => ZpStatus::Pole,
        Error::InvalidParams(_) => ZpStatus::InvalidParams,
        Error::MissingC1 { .. } => ZpStatus::MissingC1,
        Error::InsufficientRange { .. } => ZpStatus::InsufficientRange,
        Error::Overflow(_) | Error::IllConditioned { .. } => ZpStatus::Numerical,
        Error::Usage(_) => ZpStatus::Other,
    }
}

struct Failure(ZpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ZpStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ZpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            ZpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&format!("internal panic: {msg}"));
            ZpStatus::Panic
        }
    }
}

unsafe fn table_ref<'a>(table: *const ZpTable) -> Result<&'a ZeroTable, Failure> {
    table
        .as_ref()
        .map(|t| &t.inner)
        .ok_or_else(|| null("table"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn slice<'a, T>(data: *const T, n: usize, what: &str) -> Result<&'a [T], Failure> {
    if n == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(data, n))
}

unsafe fn complexes(
    data: *const ZpComplex,
    n: usize,
    what: &str,
) -> Result<Vec<Complex64>, Failure> {
    Ok(slice(data, n, what)?.iter().map(|&z| z.into()).collect())
}

fn sign(sign_c0: i32) -> Result<SignC0, Failure> {
    match sign_c0 {
        1 => Ok(SignC0::Plus),
        -1 => Ok(SignC0::Minus),
        other => Err(Failure(
            ZpStatus::InvalidParams,
            format!("sign_c0 must be +1 or -1, got {other}"),
        )),
    }
}

/// Omit mode when `table` is null, otherwise `c₁` fitted from `table` for
/// each `αₖ` and their sum.
unsafe fn c1_mode(table: *const ZpTable, alphas: &[f64]) -> Result<C1Mode, Failure> {
    match table.as_ref() {
        None => Ok(C1Mode::Omit),
        Some(t) => {
            let mut needed = alphas.to_vec();
            needed.push(alphas.iter().sum());
            Ok(C1Mode::numeric(C1Table::extract(&t.inner, &needed)?))
        }
    }
}

/// Last error message on this thread, empty after a successful call. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn zp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Load a text table or ZRT1 cache. `limit == 0` keeps every ordinate.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_table_load(
    path: *const c_char,
    limit: usize,
    out: *mut *mut ZpTable,
) -> ZpStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Failure(ZpStatus::Parse, "path is not UTF-8".into()))?;
        let inner = zetaprod::load_zero_table(path, (limit > 0).then_some(limit))?;
        write(out, Box::into_raw(Box::new(ZpTable { inner })))
    })
}

/// Build a table from `n` ordinates (sorted copies are taken).
///
/// # Safety
/// `ordinates` must point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_table_from_ordinates(
    ordinates: *const f64,
    n: usize,
    out: *mut *mut ZpTable,
) -> ZpStatus {
    guard(|| {
        let mut values = slice(ordinates, n, "ordinates")?.to_vec();
        values.sort_by(f64::total_cmp);
        let inner = ZeroTable::new(values, "ffi", 17)?;
        write(out, Box::into_raw(Box::new(ZpTable { inner })))
    })
}

/// # Safety
/// `table` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn zp_table_free(table: *mut ZpTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of ordinates, or 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zp_table_len(table: *const ZpTable) -> usize {
    table.as_ref().map_or(0, |t| t.inner.count())
}

/// `φ(s)`, `Re s > 0`.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_phi(
    table: *const ZpTable,
    s: ZpComplex,
    out: *mut ZpBounded,
) -> ZpStatus {
    guard(|| write(out, cramer::phi(table_ref(table)?, s.into())?.into()))
}

/// `V(s)`, `Im s > 0`.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_v(
    table: *const ZpTable,
    s: ZpComplex,
    out: *mut ZpBounded,
) -> ZpStatus {
    guard(|| write(out, cramer::v_func(table_ref(table)?, s.into())?.into()))
}

/// `V(s)` minus its singular model.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_cramer_remainder(
    table: *const ZpTable,
    s: ZpComplex,
    out: *mut ZpBounded,
) -> ZpStatus {
    guard(|| {
        write(
            out,
            cramer::cramer_remainder(table_ref(table)?, s.into())?.into(),
        )
    })
}

/// `(x; e^{−iβ})_ζ`.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_zeta_pochhammer(
    table: *const ZpTable,
    x: ZpComplex,
    beta: f64,
    out: *mut ZpBounded,
) -> ZpStatus {
    guard(|| {
        write(
            out,
            zeta_pochhammer(table_ref(table)?, PochhammerArgs::new(x.into(), beta))?.into(),
        )
    })
}

/// `F(z̲; α̲)`. Pass a null `c1_table` to omit `c₁`.
///
/// # Safety
/// `alphas` and `zs` must point to `n` elements; `c1_table` must be null or
/// a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_poly_f(
    alphas: *const f64,
    zs: *const ZpComplex,
    n: usize,
    sign_c0: i32,
    c1_table: *const ZpTable,
    out: *mut ZpComplex,
) -> ZpStatus {
    guard(|| {
        let alphas = slice(alphas, n, "alphas")?.to_vec();
        let p = SineParams::new(alphas, complexes(zs, n, "zs")?)?;
        let c1 = c1_mode(c1_table, p.alphas())?;
        write(out, poly_f(&p, sign(sign_c0)?, &c1)?.into())
    })
}

/// `F̃(z̲; α̲)`. Pass a null `c1_table` to omit `c₁`.
///
/// # Safety
/// As for [`zp_poly_f`].
#[no_mangle]
pub unsafe extern "C" fn zp_poly_f_tilde(
    alphas: *const f64,
    zs: *const ZpComplex,
    n: usize,
    sign_c0: i32,
    c1_table: *const ZpTable,
    out: *mut ZpComplex,
) -> ZpStatus {
    guard(|| {
        let alphas = slice(alphas, n, "alphas")?.to_vec();
        let omegas = vec![Complex64::new(0.0, 0.0); n];
        let p = ExpParams::new(alphas, complexes(zs, n, "zs")?, omegas)?;
        let c1 = c1_mode(c1_table, p.alphas())?;
        write(out, poly_f_tilde(&p, sign(sign_c0)?, &c1)?.into())
    })
}

/// `S(z̲; α̲)`. `numeric_c1 != 0` fits `c₁` from `table`; otherwise it is omitted.
///
/// # Safety
/// `table` must be a live handle; `alphas` and `zs` must point to `n`
/// elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_s_sine(
    table: *const ZpTable,
    alphas: *const f64,
    zs: *const ZpComplex,
    n: usize,
    sign_c0: i32,
    numeric_c1: i32,
    out: *mut ZpBounded,
) -> ZpStatus {
    guard(|| {
        let t = table_ref(table)?;
        let p = SineParams::new(
            slice(alphas, n, "alphas")?.to_vec(),
            complexes(zs, n, "zs")?,
        )?;
        let c1 = c1_mode(
            if numeric_c1 != 0 { table } else { ptr::null() },
            p.alphas(),
        )?;
        write(out, s_sine(t, &p, sign(sign_c0)?, &c1)?.value.into())
    })
}

/// `S̃(z̲; α̲, ω̲)`.
///
/// # Safety
/// As for [`zp_s_sine`]; `omegas` must also point to `n` elements.
#[no_mangle]
pub unsafe extern "C" fn zp_s_exp(
    table: *const ZpTable,
    alphas: *const f64,
    zs: *const ZpComplex,
    omegas: *const ZpComplex,
    n: usize,
    sign_c0: i32,
    numeric_c1: i32,
    out: *mut ZpBounded,
) -> ZpStatus {
    guard(|| {
        let t = table_ref(table)?;
        let p = ExpParams::new(
            slice(alphas, n, "alphas")?.to_vec(),
            complexes(zs, n, "zs")?,
            complexes(omegas, n, "omegas")?,
        )?;
        let c1 = c1_mode(
            if numeric_c1 != 0 { table } else { ptr::null() },
            p.alphas(),
        )?;
        write(out, s_exp(t, &p, sign(sign_c0)?, &c1)?.value.into())
    })
}

/// Laurent coefficients of `φ(αs)` fitted on `points` grid points.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zp_laurent_coeffs(
    table: *const ZpTable,
    alpha: f64,
    points: usize,
    out: *mut ZpLaurent,
) -> ZpStatus {
    guard(|| {
        let t = table_ref(table)?;
        let c = extract_laurent_coeffs(t, alpha, &default_laurent_grid(t, alpha, points))?;
        write(
            out,
            ZpLaurent {
                c_minus1: c.c_minus1.into(),
                c_0: c.c_0.into(),
                c_1: c.c_1.into(),
                c1_uncertainty: c.c1_uncertainty,
                condition: c.condition,
            },
        )
    })
}
