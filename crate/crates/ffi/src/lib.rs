//! C ABI over `jetpairs`.
//!
//! Matrix polynomials live behind opaque `JpMatPoly` handles that remember
//! their field (a prime field or the rationals). Every entry point returns a
//! `JpStatus`; on failure `jp_last_error` describes the problem. Strings
//! handed out by the library must be released with `jp_string_free`, handles
//! with `jp_matpoly_free`. Field elements cross the boundary as decimal
//! strings (`"-3"`, `"5/7"`).

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use jetpairs::commutant::{commutant_basis, lift_pair};
use jetpairs::io::{parse_matpoly, peek_field_spec, write_matpoly};
use jetpairs::irr3::{certify_closure, Terminal};
use jetpairs::jetideal::{generators, jacobian_tangent_dim, ExportFlavor};
use jetpairs::redwitness::{bounds, thresholds, BlockShape};
use jetpairs::{Error, Field, FieldSpec, MatPoly, PrimeField, Rationals};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    ShapeMismatch = 4,
    FieldMismatch = 5,
    NonCommuting = 6,
    Infeasible = 7,
    Precondition = 8,
    Panic = 99,
}

/// Opaque matrix polynomial handle.
pub struct JpMatPoly {
    inner: Inner,
}

enum Inner {
    Prime(MatPoly<PrimeField>),
    Rational(MatPoly<Rationals>),
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct JpBounds {
    pub dim_w_bound: i64,
    pub dim_c_a0: i64,
    pub dim_v_bound: i64,
    pub expected_dim: i64,
    pub inequality_value: i64,
    pub delta: i64,
    pub reducible: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct JpThresholds {
    pub mu: i64,
    pub beta: i64,
    pub n_k: i64,
}

/// Terminal kinds of a closure certificate.
pub const JP_TERMINAL_IN_U: c_int = 0;
pub const JP_TERMINAL_SPECTRUM_SPLIT: c_int = 1;
pub const JP_TERMINAL_STALLED: c_int = 2;

/// Export flavors for `jp_export_ideal`.
pub const JP_EXPORT_GENERIC: c_int = 0;
pub const JP_EXPORT_MACAULAY2: c_int = 1;
pub const JP_EXPORT_SINGULAR: c_int = 2;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Fail(JpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::Field(_) => JpStatus::Parse,
            Error::ShapeMismatch(_) | Error::TruncationOrder { .. } => JpStatus::ShapeMismatch,
            Error::NonCommuting | Error::NotOnScheme { .. } => JpStatus::NonCommuting,
            Error::Infeasible(_) | Error::ResampleExhausted { .. } => JpStatus::Infeasible,
            _ => JpStatus::Precondition,
        };
        Fail(status, e.to_string())
    }
}

fn fail<T>(status: JpStatus, msg: impl Into<String>) -> Result<T, Fail> {
    Err(Fail(status, msg.into()))
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> JpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            JpStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal panic".into());
            set_last_error(&msg);
            JpStatus::Panic
        }
    }
}

unsafe fn handle<'a>(p: *const JpMatPoly) -> Result<&'a JpMatPoly, Fail> {
    p.as_ref().map_or_else(|| fail(JpStatus::NullPointer, "null handle"), Ok)
}

unsafe fn handle_mut<'a>(p: *mut JpMatPoly) -> Result<&'a mut JpMatPoly, Fail> {
    p.as_mut().map_or_else(|| fail(JpStatus::NullPointer, "null handle"), Ok)
}

unsafe fn input_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return fail(JpStatus::NullPointer, "null string");
    }
    CStr::from_ptr(p).to_str().or_else(|_| fail(JpStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return fail(JpStatus::NullPointer, "null output pointer");
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).or_else(|_| fail(JpStatus::InvalidArgument, "string contains NUL"))?;
    write_out(out, c.into_raw())
}

fn field_spec(characteristic: u64) -> Result<FieldSpec, Fail> {
    let spec = if characteristic == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(characteristic) };
    spec.validate().or_else(|e| fail(JpStatus::InvalidArgument, e.to_string()))?;
    Ok(spec)
}

fn prime(p: u64) -> Result<PrimeField, Fail> {
    PrimeField::new(p).or_else(|e| fail(JpStatus::InvalidArgument, e.to_string()))
}

fn boxed(inner: Inner) -> *mut JpMatPoly {
    Box::into_raw(Box::new(JpMatPoly { inner }))
}

/// Dispatches on the field shared by two handles.
macro_rules! with_pair {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match (&$a.inner, &$b.inner) {
            (Inner::Prime($x), Inner::Prime($y)) if $x.field() == $y.field() => $body,
            (Inner::Rational($x), Inner::Rational($y)) => $body,
            _ => fail(JpStatus::FieldMismatch, "handles are over different fields"),
        }
    };
}

macro_rules! with_one {
    ($a:expr, |$x:ident| $body:expr) => {
        match &$a.inner {
            Inner::Prime($x) => $body,
            Inner::Rational($x) => $body,
        }
    };
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn jp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn jp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Zero `n x n` matrix polynomial of order `k`; `characteristic` 0 means Q.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_matpoly_new(characteristic: u64, n: usize, k: usize, out: *mut *mut JpMatPoly) -> JpStatus {
    guard(|| {
        if n == 0 {
            return fail(JpStatus::InvalidArgument, "n must be positive");
        }
        let inner = match field_spec(characteristic)? {
            FieldSpec::Prime(p) => Inner::Prime(MatPoly::zero(prime(p)?, n, k)),
            FieldSpec::Rationals => Inner::Rational(MatPoly::zero(Rationals, n, k)),
        };
        write_out(out, boxed(inner))
    })
}

/// Parses one `matpoly n k char` record; the field comes from the header.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_matpoly_parse(text: *const c_char, out: *mut *mut JpMatPoly) -> JpStatus {
    guard(|| {
        let text = input_str(text)?;
        let inner = match peek_field_spec(text)? {
            FieldSpec::Prime(p) => Inner::Prime(parse_matpoly(prime(p)?, text)?),
            FieldSpec::Rationals => Inner::Rational(parse_matpoly(Rationals, text)?),
        };
        write_out(out, boxed(inner))
    })
}

/// # Safety
/// `h` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn jp_matpoly_free(h: *mut JpMatPoly) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Size `n`, order `k` and field characteristic of a handle.
///
/// # Safety
/// `h` must be a live handle; output pointers may be null to skip them.
#[no_mangle]
pub unsafe extern "C" fn jp_matpoly_shape(
    h: *const JpMatPoly,
    n: *mut usize,
    k: *mut usize,
    characteristic: *mut u64,
) -> JpStatus {
    guard(|| {
        let h = handle(h)?;
        let (nn, kk, c) = with_one!(h, |m| (m.n(), m.k(), m.field().characteristic()));
        if !n.is_null() {
            n.write(nn);
        }
        if !k.is_null() {
            k.write(kk);
        }
        if !characteristic.is_null() {
            characteristic.write(c);
        }
        Ok(())
    })
}

fn check_index(n: usize, k: usize, s: usize, i: usize, j: usize) -> Result<(), Fail> {
    if s > k || i >= n || j >= n {
        return fail(JpStatus::InvalidArgument, format!("index (t^{s}, {i}, {j}) out of range for n={n}, k={k}"));
    }
    Ok(())
}

/// Sets the `(i, j)` entry (zero-based) of the `t^s` coefficient.
///
/// # Safety
/// `h` must be a live handle and `value` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn jp_matpoly_set(h: *mut JpMatPoly, s: usize, i: usize, j: usize, value: *const c_char) -> JpStatus {
    guard(|| {
        let h = handle_mut(h)?;
        let value = input_str(value)?;
        match &mut h.inner {
            Inner::Prime(m) => set_entry(m, s, i, j, value),
            Inner::Rational(m) => set_entry(m, s, i, j, value),
        }
    })
}

fn set_entry<F: Field>(m: &mut MatPoly<F>, s: usize, i: usize, j: usize, value: &str) -> Result<(), Fail> {
    check_index(m.n(), m.k(), s, i, j)?;
    let v = m.field().parse_elem(value).map_err(|e| Fail(JpStatus::Parse, e.to_string()))?;
    m.coeff_mut(s)[(i, j)] = v;
    Ok(())
}

/// Reads the `(i, j)` entry (zero-based) of the `t^s` coefficient as a
/// string owned by the caller.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_matpoly_get_str(h: *const JpMatPoly, s: usize, i: usize, j: usize, out: *mut *mut c_char) -> JpStatus {
    guard(|| {
        let h = handle(h)?;
        let text = with_one!(h, |m| {
            check_index(m.n(), m.k(), s, i, j)?;
            m.field().format_elem(&m.coeff(s)[(i, j)])
        });
        write_string(out, text)
    })
}

/// The handle in `matpoly` text format.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_matpoly_to_string(h: *const JpMatPoly, out: *mut *mut c_char) -> JpStatus {
    guard(|| {
        let h = handle(h)?;
        write_string(out, with_one!(h, |m| write_matpoly(m)))
    })
}

fn same_shape<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> Result<(), Fail> {
    if a.n() != b.n() || a.k() != b.k() {
        return fail(JpStatus::ShapeMismatch, "handles differ in n or k");
    }
    Ok(())
}

/// Whether `AB = BA` in the truncated ring.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_commutes(a: *const JpMatPoly, b: *const JpMatPoly, out: *mut bool) -> JpStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        let v = with_pair!(a, b, |x, y| {
            same_shape(x, y)?;
            Ok(x.commutator(y).is_zero())
        })?;
        write_out(out, v)
    })
}

/// Dimension of the commutant of `A(t)`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_commutant_dim(a: *const JpMatPoly, out: *mut usize) -> JpStatus {
    guard(|| {
        let a = handle(a)?;
        write_out(out, with_one!(a, |m| commutant_basis(m).dim()))
    })
}

/// Tangent dimension of the jet scheme at a commuting pair.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_tangent_dim(a: *const JpMatPoly, b: *const JpMatPoly, out: *mut usize) -> JpStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        let d = with_pair!(a, b, |x, y| {
            same_shape(x, y)?;
            Ok(jacobian_tangent_dim(x.n(), x.k(), x, y)?)
        })?;
        write_out(out, d)
    })
}

/// Solves for the next coefficient of `B` given the next coefficient of
/// `A` (a handle of order 0). Returns a new order-0 handle.
///
/// # Safety
/// Inputs must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_lift(
    a: *const JpMatPoly,
    b: *const JpMatPoly,
    a_next: *const JpMatPoly,
    out: *mut *mut JpMatPoly,
) -> JpStatus {
    guard(|| {
        let (a, b, an) = (handle(a)?, handle(b)?, handle(a_next)?);
        let inner = match (&a.inner, &b.inner, &an.inner) {
            (Inner::Prime(x), Inner::Prime(y), Inner::Prime(z)) if x.field() == y.field() && y.field() == z.field() => {
                Inner::Prime(lift_one(x, y, z)?)
            }
            (Inner::Rational(x), Inner::Rational(y), Inner::Rational(z)) => Inner::Rational(lift_one(x, y, z)?),
            _ => return fail(JpStatus::FieldMismatch, "handles are over different fields"),
        };
        write_out(out, boxed(inner))
    })
}

fn lift_one<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>, next: &MatPoly<F>) -> Result<MatPoly<F>, Fail> {
    same_shape(a, b)?;
    if next.k() != 0 || next.n() != a.n() {
        return fail(JpStatus::ShapeMismatch, "next coefficient must be an n x n handle of order 0");
    }
    Ok(MatPoly::constant(lift_pair(a, b, next.coeff(0))?, 0))
}

/// Dimension bounds for the block shape `(a, a, a, b)` at order `k`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_red_bounds(a: u64, b: u64, k: u64, out: *mut JpBounds) -> JpStatus {
    guard(|| {
        let r = bounds(BlockShape::new(a, b, k)?);
        let conv = |v: i128| i64::try_from(v).or_else(|_| fail(JpStatus::InvalidArgument, "value overflows i64"));
        let v = JpBounds {
            dim_w_bound: conv(r.dim_w_bound)?,
            dim_c_a0: conv(r.dim_c_a0)?,
            dim_v_bound: conv(r.dim_v_bound)?,
            expected_dim: conv(r.expected_dim)?,
            inequality_value: conv(r.inequality_value)?,
            delta: conv(r.delta)?,
            reducible: r.reducible,
        };
        write_out(out, v)
    })
}

/// `mu_k`, `beta_k` and `N(k)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_red_thresholds(k: u64, out: *mut JpThresholds) -> JpStatus {
    guard(|| {
        if k == 0 {
            return fail(JpStatus::InvalidArgument, "k must be positive");
        }
        let t = thresholds(k);
        let conv = |v: i128| i64::try_from(v).or_else(|_| fail(JpStatus::InvalidArgument, "value overflows i64"));
        write_out(out, JpThresholds { mu: conv(t.mu)?, beta: conv(t.beta)?, n_k: conv(t.n_k)? })
    })
}

/// Generators of the jet ideal as text in the chosen flavor.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jp_export_ideal(characteristic: u64, n: usize, k: usize, flavor: c_int, out: *mut *mut c_char) -> JpStatus {
    guard(|| {
        if n == 0 {
            return fail(JpStatus::InvalidArgument, "n must be positive");
        }
        let flavor = match flavor {
            JP_EXPORT_GENERIC => ExportFlavor::GenericText,
            JP_EXPORT_MACAULAY2 => ExportFlavor::Macaulay2,
            JP_EXPORT_SINGULAR => ExportFlavor::Singular,
            _ => return fail(JpStatus::InvalidArgument, "unknown export flavor"),
        };
        let text = match field_spec(characteristic)? {
            FieldSpec::Prime(p) => generators(prime(p)?, n, k).export(flavor),
            FieldSpec::Rationals => generators(Rationals, n, k).export(flavor),
        };
        write_string(out, text)
    })
}

/// Closure certificate for a commuting `3 x 3` pair. Writes the certificate
/// text and its terminal kind (`JP_TERMINAL_*`).
///
/// # Safety
/// `a`, `b` must be live handles; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn jp_certify(
    a: *const JpMatPoly,
    b: *const JpMatPoly,
    seed: u64,
    out_text: *mut *mut c_char,
    out_terminal: *mut c_int,
) -> JpStatus {
    guard(|| {
        if out_text.is_null() || out_terminal.is_null() {
            return fail(JpStatus::NullPointer, "null output pointer");
        }
        let (a, b) = (handle(a)?, handle(b)?);
        let (text, term) = with_pair!(a, b, |x, y| {
            let cert = certify_closure(x, y, seed)?;
            let term = match cert.terminal {
                Terminal::InU => JP_TERMINAL_IN_U,
                Terminal::SpectrumSplit { .. } => JP_TERMINAL_SPECTRUM_SPLIT,
                Terminal::Stalled(_) => JP_TERMINAL_STALLED,
            };
            Ok((cert.to_text(), term))
        })?;
        write_string(out_text, text)?;
        out_terminal.write(term);
        Ok(())
    })
}
