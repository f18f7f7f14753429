//! C ABI for `bircalc`.
//!
//! Every fallible function returns a [`BircalcStatus`]; on anything other
//! than `BIRCALC_STATUS_OK` the message is available from
//! [`bircalc_last_error_message`] on the same thread. Strings handed out by
//! the library are owned by the caller and released with
//! [`bircalc_string_free`]. Handles are opaque and released with their own
//! `_free` function; passing NULL to a `_free` function is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use bircalc::picard_lattice::{anticanonical_cube, link_degree};
use bircalc::{
    AmbientSpace, BlowupLattice, Catalog, Error, GradedPolynomial, IndexPermutation, NonInnerCertificate,
    WeightedBlowup, Word, WordEngine,
};

pub const BIRCALC_SPACE_P3: u32 = 0;
pub const BIRCALC_SPACE_CUBIC: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BircalcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// A syntactically malformed polynomial, word, permutation or catalog.
    Parse = 3,
    /// Well-formed input outside the domain of the operation.
    Domain = 4,
    Overflow = 5,
    Io = 6,
    Panic = 7,
}

/// A polynomial with exact rational coefficients and positive integer
/// weights.
pub struct BircalcPolynomial(GradedPolynomial);

pub struct BircalcCatalog(Catalog);

/// Result of [`bircalc_word_certify`]. The string fields are NULL when not
/// applicable; release them with [`bircalc_certificate_clear`].
#[repr(C)]
pub struct BircalcCertificate {
    pub certified: bool,
    pub conjugate: bool,
    pub field_automorphism_obstruction: bool,
    pub witness: *mut c_char,
    pub image: *mut c_char,
    pub reason: *mut c_char,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(BircalcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::PolyParse { .. }
            | Error::WordParse(_)
            | Error::PermParse(_)
            | Error::CatalogParse { .. }
            | Error::DuplicateLabel { .. }
            | Error::CatalogInadmissible { .. } => BircalcStatus::Parse,
            Error::Overflow(_) => BircalcStatus::Overflow,
            Error::Io(_) => BircalcStatus::Io,
            _ => BircalcStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> BircalcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BircalcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            BircalcStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(BircalcStatus::NullPointer, "null output pointer".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(BircalcStatus::NullPointer, "null handle".into()))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BircalcStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BircalcStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no interior nul").into_raw()
}

fn space(code: u32) -> Result<AmbientSpace, Failure> {
    match code {
        BIRCALC_SPACE_P3 => Ok(AmbientSpace::ProjectiveThreeSpace),
        BIRCALC_SPACE_CUBIC => Ok(AmbientSpace::CubicThreefold),
        _ => Err(Failure(BircalcStatus::Domain, format!("unknown space code {code}"))),
    }
}

unsafe fn engine(catalog: *const BircalcCatalog) -> WordEngine {
    match catalog.as_ref() {
        Some(c) => WordEngine::with_catalog(&c.0),
        None => WordEngine::permissive(),
    }
}

unsafe fn word(p: *const c_char) -> Result<Word, Failure> {
    Ok(text(p)?.parse::<Word>()?)
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bircalc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bircalc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- Picard lattice

/// Degree of the link attached to a curve of genus `genus` and degree
/// `degree`; only the admissible pairs are accepted.
///
/// # Safety
/// `out_degree` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_link_degree(
    space_code: u32,
    genus: u32,
    degree: u32,
    out_degree: *mut i64,
) -> BircalcStatus {
    guard(|| {
        *out(out_degree)? = link_degree(space(space_code)?, genus, degree)?;
        Ok(())
    })
}

/// # Safety
/// `out_cube` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_anticanonical_cube(
    space_code: u32,
    genus: u32,
    degree: u32,
    out_cube: *mut i64,
) -> BircalcStatus {
    guard(|| {
        *out(out_cube)? = anticanonical_cube(space(space_code)?, genus, degree);
        Ok(())
    })
}

/// `h^0(-n K_X)`.
///
/// # Safety
/// `out_dim` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_rr_dimension(
    space_code: u32,
    genus: u32,
    degree: u32,
    n: u32,
    out_dim: *mut i64,
) -> BircalcStatus {
    guard(|| {
        let v = BlowupLattice::new(space(space_code)?, genus, degree).rr_dimension(n)?;
        *out(out_dim)? = i64::try_from(v).map_err(|_| Failure::from(Error::Overflow("rr_dimension")))?;
        Ok(())
    })
}

/// # Safety
/// `out_holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_sextic_certificate(
    space_code: u32,
    genus: u32,
    degree: u32,
    out_holds: *mut bool,
) -> BircalcStatus {
    guard(|| {
        *out(out_holds)? = BlowupLattice::new(space(space_code)?, genus, degree).sextic_double_solid_certificate();
        Ok(())
    })
}

// ---- polynomials

/// Parses `literal` in variables `x1..xn` with the given weights.
///
/// # Safety
/// `literal` must be a nul-terminated string, `weights` must point to `n`
/// values, and `out_poly` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_poly_parse(
    literal: *const c_char,
    weights: *const u32,
    n: usize,
    out_poly: *mut *mut BircalcPolynomial,
) -> BircalcStatus {
    guard(|| {
        let lit = text(literal)?;
        if weights.is_null() {
            return Err(Failure(BircalcStatus::NullPointer, "null weights".into()));
        }
        let w = std::slice::from_raw_parts(weights, n);
        let p = GradedPolynomial::parse(lit, w)?;
        *out(out_poly)? = Box::into_raw(Box::new(BircalcPolynomial(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bircalc_poly_free(p: *mut BircalcPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out_string` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_poly_to_string(
    p: *const BircalcPolynomial,
    out_string: *mut *mut c_char,
) -> BircalcStatus {
    guard(|| {
        *out(out_string)? = owned(handle(p)?.0.to_string());
        Ok(())
    })
}

/// Minimum weighted degree of the terms.
///
/// # Safety
/// `p` must be a live handle and `out_valuation` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_poly_valuation(p: *const BircalcPolynomial, out_valuation: *mut u64) -> BircalcStatus {
    guard(|| {
        *out(out_valuation)? = handle(p)?.0.weighted_valuation()?;
        Ok(())
    })
}

/// Substitutes `x_i -> u^{w_i} x_i` and factors out `u^power`. The strict
/// transform is in variables `(u, x1, .., xn)`; `u` is variable 1.
///
/// # Safety
/// `p` must be a live handle; the outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bircalc_poly_chart_pullback(
    p: *const BircalcPolynomial,
    out_power: *mut u64,
    out_strict: *mut *mut BircalcPolynomial,
) -> BircalcStatus {
    guard(|| {
        let pb = handle(p)?.0.chart_pullback()?;
        let power = out(out_power)?;
        let strict = out(out_strict)?;
        *power = pb.power;
        *strict = Box::into_raw(Box::new(BircalcPolynomial(pb.strict_transform)));
        Ok(())
    })
}

// ---- weighted blowups

/// # Safety
/// `out_discrepancy` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_blowup_discrepancy(a: u64, b: u64, out_discrepancy: *mut u64) -> BircalcStatus {
    guard(|| {
        *out(out_discrepancy)? = WeightedBlowup::new(a, b)?.discrepancy();
        Ok(())
    })
}

/// `E . C~` for the curve `f1 = f2 = 0`, written as `p/q` or `p`. Both
/// polynomials must carry the weights `(1, a, b)` with `a <= b`.
///
/// # Safety
/// `f1`, `f2` must be live handles and `out_string` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_blowup_exceptional_intersection(
    a: u64,
    b: u64,
    f1: *const BircalcPolynomial,
    f2: *const BircalcPolynomial,
    out_string: *mut *mut c_char,
) -> BircalcStatus {
    guard(|| {
        let r = WeightedBlowup::new(a, b)?.exceptional_intersection(&handle(f1)?.0, &handle(f2)?.0)?;
        *out(out_string)? = owned(r.to_string());
        Ok(())
    })
}

/// `n (2 - (a+b)^2/(ab) v_H)` as `p/q` or `p`.
///
/// # Safety
/// `out_string` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_blowup_anticanonical_defect(
    a: u64,
    b: u64,
    v_h: u64,
    n: u64,
    out_string: *mut *mut c_char,
) -> BircalcStatus {
    guard(|| {
        let r = WeightedBlowup::new(a, b)?.anticanonical_defect(v_h, n);
        *out(out_string)? = owned(r.to_string());
        Ok(())
    })
}

// ---- catalogs

/// # Safety
/// `path` must be a nul-terminated string and `out_catalog` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_catalog_load(
    path: *const c_char,
    out_catalog: *mut *mut BircalcCatalog,
) -> BircalcStatus {
    guard(|| {
        let c = Catalog::load_path(Path::new(text(path)?))?;
        *out(out_catalog)? = Box::into_raw(Box::new(BircalcCatalog(c)));
        Ok(())
    })
}

/// Parses catalog records from an in-memory string.
///
/// # Safety
/// `contents` must be a nul-terminated string and `out_catalog` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_catalog_parse(
    contents: *const c_char,
    out_catalog: *mut *mut BircalcCatalog,
) -> BircalcStatus {
    guard(|| {
        let c = Catalog::load(text(contents)?.as_bytes())?;
        *out(out_catalog)? = Box::into_raw(Box::new(BircalcCatalog(c)));
        Ok(())
    })
}

/// Number of curves, or 0 for NULL.
///
/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bircalc_catalog_len(c: *const BircalcCatalog) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// `c` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bircalc_catalog_free(c: *mut BircalcCatalog) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

// ---- words
//
// `catalog` may be NULL, in which case every chi label is accepted.

/// # Safety
/// `catalog` must be NULL or a live handle, `w` a nul-terminated string and
/// `out_string` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_word_normalize(
    catalog: *const BircalcCatalog,
    w: *const c_char,
    out_string: *mut *mut c_char,
) -> BircalcStatus {
    guard(|| {
        let r = engine(catalog).normalize(&word(w)?)?;
        *out(out_string)? = owned(r.to_string());
        Ok(())
    })
}

/// The image in the free product of the order-two factors.
///
/// # Safety
/// As for [`bircalc_word_normalize`].
#[no_mangle]
pub unsafe extern "C" fn bircalc_word_psi(
    catalog: *const BircalcCatalog,
    w: *const c_char,
    out_string: *mut *mut c_char,
) -> BircalcStatus {
    guard(|| {
        let r = engine(catalog).psi(&word(w)?)?;
        *out(out_string)? = owned(r.to_string());
        Ok(())
    })
}

/// # Safety
/// `catalog` must be NULL or a live handle, `w1`, `w2` nul-terminated
/// strings and `out_conjugate` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_word_conjugate(
    catalog: *const BircalcCatalog,
    w1: *const c_char,
    w2: *const c_char,
    out_conjugate: *mut bool,
) -> BircalcStatus {
    guard(|| {
        *out(out_conjugate)? = engine(catalog).conjugate_in_free_product(&word(w1)?, &word(w2)?)?;
        Ok(())
    })
}

/// Tries to certify that the automorphism permuting the chi factors by
/// `perm` (cycle notation, e.g. `(a b)`) is not inner. A refusal is not an
/// error: `certified` is false and `reason` is set.
///
/// # Safety
/// `catalog` must be a live handle, `perm` a nul-terminated string and
/// `out_cert` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bircalc_word_certify(
    catalog: *const BircalcCatalog,
    perm: *const c_char,
    out_cert: *mut BircalcCertificate,
) -> BircalcStatus {
    guard(|| {
        let cat = &handle(catalog)?.0;
        let rho: IndexPermutation = text(perm)?.parse()?;
        let cert = WordEngine::with_catalog(cat).non_inner_certificate(&rho, cat)?;
        let slot = out(out_cert)?;
        *slot = match cert {
            NonInnerCertificate::Certified {
                witness,
                image,
                conjugate,
                field_automorphism_obstruction,
            } => BircalcCertificate {
                certified: true,
                conjugate,
                field_automorphism_obstruction,
                witness: owned(witness),
                image: owned(image),
                reason: ptr::null_mut(),
            },
            NonInnerCertificate::Refused { reason } => BircalcCertificate {
                certified: false,
                conjugate: false,
                field_automorphism_obstruction: false,
                witness: ptr::null_mut(),
                image: ptr::null_mut(),
                reason: owned(reason),
            },
        };
        Ok(())
    })
}

/// Frees the strings inside `cert` and resets them to NULL.
///
/// # Safety
/// `cert` must be NULL or point to a certificate filled by
/// [`bircalc_word_certify`].
#[no_mangle]
pub unsafe extern "C" fn bircalc_certificate_clear(cert: *mut BircalcCertificate) {
    if let Some(c) = cert.as_mut() {
        for s in [&mut c.witness, &mut c.image, &mut c.reason] {
            bircalc_string_free(*s);
            *s = ptr::null_mut();
        }
    }
}
