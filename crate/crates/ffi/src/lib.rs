//! C ABI over the `leavitt` library.
//!
//! Graphs and elements cross the boundary as opaque handles. Every call
//! returns an [`LvStatus`]; on failure a message for the calling thread is
//! available from [`lv_last_error`]. Strings handed out by the library must
//! be released with [`lv_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use leavitt::certificate::Certificate;
use leavitt::core_fd::{embed_in_fd, fd_dimension};
use leavitt::graph::{Graph, GraphDoc, GraphInput};
use leavitt::groupoid::DEFAULT_TRUNCATION;
use leavitt::lpa::{parse_element, Element};
use leavitt::property_y::{decide_property_y, decide_strongly_graded};
use leavitt::witness::{factor_local_unit, factor_local_unit_ladder, Direction, FactorOutcome};
use leavitt::Error;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidGraph = 4,
    UnknownId = 5,
    NotComposable = 6,
    Unsupported = 7,
    NotHomogeneous = 8,
    NotFound = 9,
    CertificateRejected = 10,
    GraphMismatch = 11,
    InvalidArgument = 12,
    Panic = 13,
}

/// Direction of a local-unit factorization.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LvDirection {
    /// Degrees `(k, -k)`.
    PosNeg = 0,
    /// Degrees `(-k, k)`.
    NegPos = 1,
}

/// A validated graph; ladder presets are materialized at a fixed depth.
pub struct LvGraph {
    input: GraphInput,
    truncate: usize,
    graph: Arc<Graph>,
}

/// An element of the Leavitt path algebra in normal form.
pub struct LvElement {
    inner: Element,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LvStatus {
    match e {
        Error::Syntax { .. } => LvStatus::Syntax,
        Error::DanglingEndpoint { .. }
        | Error::DuplicateId(_)
        | Error::InvalidId(_)
        | Error::BadEnumeration(_)
        | Error::InvalidLadder(_) => LvStatus::InvalidGraph,
        Error::UnknownId(_) | Error::VertexNotInCutoff(_) => LvStatus::UnknownId,
        Error::NotComposable(_) | Error::SourceMismatch { .. } | Error::NotComposableTails(_) => {
            LvStatus::NotComposable
        }
        Error::OmegaEdgesUnsupported
        | Error::LadderUnsupported
        | Error::UnsupportedGraph(_)
        | Error::IrregularVertexOnExpansion(_)
        | Error::NoInfinitePath
        | Error::DepthExceeded { .. } => LvStatus::Unsupported,
        Error::NotHomogeneous { .. } | Error::NotDegreeZero => LvStatus::NotHomogeneous,
        Error::Certificate(_) => LvStatus::CertificateRejected,
        Error::GraphMismatch => LvStatus::GraphMismatch,
        Error::InvalidLasso(_) | Error::InvalidInput(_) => LvStatus::InvalidArgument,
    }
}

enum Fail {
    Status(LvStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> LvStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LvStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            LvStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Status(LvStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Status(LvStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::Status(LvStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(LvStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("library values serialize")
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lv_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph document (finite or ladder). Ladder presets are
/// materialized with `truncate` stages for algebra operations; pass 0 for
/// the default depth.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_graph_from_json(json: *const c_char, truncate: usize, out: *mut *mut LvGraph) -> LvStatus {
    guard(|| {
        let text = text(json)?;
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let input = GraphInput::from_doc(doc)?;
        let truncate = if truncate == 0 { DEFAULT_TRUNCATION } else { truncate };
        let graph = match &input {
            GraphInput::Finite(g) => Arc::new(g.clone()),
            GraphInput::Ladder(p) => Arc::new(p.instantiate(truncate)),
        };
        put(out, Box::into_raw(Box::new(LvGraph { input, truncate, graph })))
    })
}

/// # Safety
/// `g` must come from [`lv_graph_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lv_graph_free(g: *mut LvGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Strong-grading verdict as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_analyze_json(g: *const LvGraph, allow_empty_prefix: bool, out: *mut *mut c_char) -> LvStatus {
    guard(|| {
        let g = get(g)?;
        put(out, owned(json(&decide_strongly_graded(&g.input, allow_empty_prefix))))
    })
}

/// Property (Y) verdict as JSON; a failure also carries a certificate under
/// `"certificate"`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_property_y_json(g: *const LvGraph, allow_empty_prefix: bool, out: *mut *mut c_char) -> LvStatus {
    guard(|| {
        let g = get(g)?;
        let verdict = decide_property_y(&g.input, allow_empty_prefix);
        let mut value = serde_json::to_value(&verdict).expect("serializable");
        if let Some(c) = Certificate::property_y_failure(&g.input, &verdict) {
            value["certificate"] = serde_json::to_value(c).expect("serializable");
        }
        put(out, owned(value.to_string()))
    })
}

/// Parses and normalizes an element.
///
/// # Safety
/// `g` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lv_element_parse(g: *const LvGraph, expr: *const c_char, out: *mut *mut LvElement) -> LvStatus {
    guard(|| {
        let g = get(g)?;
        let inner = parse_element(text(expr)?, &g.graph)?.normalize();
        put(out, Box::into_raw(Box::new(LvElement { inner })))
    })
}

/// # Safety
/// `x` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lv_element_free(x: *mut LvElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Normal form in the element grammar.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_element_to_string(x: *const LvElement, out: *mut *mut c_char) -> LvStatus {
    guard(|| put(out, owned(get(x)?.inner.to_expr())))
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_element_mul(a: *const LvElement, b: *const LvElement, out: *mut *mut LvElement) -> LvStatus {
    guard(|| {
        let inner = get(a)?.inner.mul(&get(b)?.inner)?;
        put(out, Box::into_raw(Box::new(LvElement { inner })))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_element_add(a: *const LvElement, b: *const LvElement, out: *mut *mut LvElement) -> LvStatus {
    guard(|| {
        let inner = get(a)?.inner.add(&get(b)?.inner)?;
        put(out, Box::into_raw(Box::new(LvElement { inner })))
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_element_star(a: *const LvElement, out: *mut *mut LvElement) -> LvStatus {
    guard(|| {
        let inner = get(a)?.inner.star();
        put(out, Box::into_raw(Box::new(LvElement { inner })))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_element_equals(a: *const LvElement, b: *const LvElement, out: *mut bool) -> LvStatus {
    guard(|| {
        let eq = get(a)?.inner.equals(&get(b)?.inner)?;
        put(out, eq)
    })
}

/// Writes the degree when `a` is homogeneous and nonzero; otherwise
/// `*homogeneous` is false.
///
/// # Safety
/// `a` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_element_degree(a: *const LvElement, homogeneous: *mut bool, degree: *mut i64) -> LvStatus {
    guard(|| {
        let d = get(a)?.inner.degree();
        put(homogeneous, d.is_some())?;
        put(degree, d.unwrap_or(0))
    })
}

/// Exact dimension of the core subalgebra spanned by paths of length at
/// most `k` over the first `cutoff` edges.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_fd_dimension(g: *const LvGraph, k: usize, cutoff: usize, out: *mut usize) -> LvStatus {
    guard(|| {
        let d = fd_dimension(&get(g)?.graph, k, cutoff)?;
        put(out, d)
    })
}

/// Embeds a degree-0 element in a finite-dimensional *-subalgebra; writes
/// the certificate JSON.
///
/// # Safety
/// `g` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lv_core_embed_json(g: *const LvGraph, expr: *const c_char, out: *mut *mut c_char) -> LvStatus {
    guard(|| {
        let g = get(g)?;
        let e = embed_in_fd(&parse_element(text(expr)?, &g.graph)?)?;
        put(out, owned(Certificate::embedding(&e).to_json()))
    })
}

/// Writes `p_v` as a sum of products of homogeneous elements; writes the
/// certificate JSON, or returns `NotFound` when no witness exists up to
/// `max_level`.
///
/// # Safety
/// `g` must be a live handle, `vertex` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lv_factor_unit_json(
    g: *const LvGraph,
    vertex: *const c_char,
    degree: usize,
    direction: LvDirection,
    max_level: usize,
    out: *mut *mut c_char,
) -> LvStatus {
    guard(|| {
        let g = get(g)?;
        let name = text(vertex)?;
        let dir = match direction {
            LvDirection::PosNeg => Direction::PosNeg,
            LvDirection::NegPos => Direction::NegPos,
        };
        let outcome = match &g.input {
            GraphInput::Finite(_) => {
                let v = g.graph.vertex_id(name).ok_or_else(|| Error::UnknownId(name.to_string()))?;
                factor_local_unit(&g.graph, v, degree, dir, max_level)?
            }
            GraphInput::Ladder(p) => factor_local_unit_ladder(p, g.truncate, name, degree, dir, max_level)?,
        };
        match outcome {
            FactorOutcome::Found(w) => put(out, owned(Certificate::factorization(&w).to_json())),
            FactorOutcome::NotFoundUpTo(m) => {
                Err(Fail::Status(LvStatus::NotFound, format!("no witness up to level {m}")))
            }
        }
    })
}

/// Re-verifies a serialized certificate.
///
/// # Safety
/// `json` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn lv_verify_certificate(json: *const c_char) -> LvStatus {
    guard(|| {
        Certificate::from_json(text(json)?)?.verify()?;
        Ok(())
    })
}
