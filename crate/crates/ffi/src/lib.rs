//! C ABI for interval graph recognition and partial representation extension.
//!
//! Objects cross the boundary as opaque handles created by `rx_*_parse` or
//! `rx_extend` and released by the matching `rx_*_free`. Every fallible call
//! returns an [`RxStatus`]; after a non-OK status, [`rx_last_error`] describes
//! the failure on the calling thread. Coordinates are exchanged as reduced
//! rationals written `p/q` (or `p` for integers).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use repext::graph::{check_extension, format_representation, ClosedInterval, Graph};
use repext::repext::{extend, ExtendError, PartialError, PartialRepresentation};

/// Result codes shared by all fallible functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RxStatus {
    Ok = 0,
    NotInterval = 1,
    NotExtendible = 2,
    InvalidPartial = 3,
    ParseError = 4,
    NullPointer = 5,
    OutOfRange = 6,
    Internal = 7,
}

/// A parsed graph.
pub struct RxGraph(Graph);

/// Pre-drawn intervals validated against one graph.
pub struct RxPartial {
    partial: PartialRepresentation,
    vertices: usize,
}

/// A full interval representation, one interval per vertex.
pub struct RxRepresentation(Vec<ClosedInterval>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn record(status: RxStatus, msg: impl Into<String>) -> RxStatus {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

fn guarded(f: impl FnOnce() -> RxStatus) -> RxStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| record(RxStatus::Internal, "panic inside repext"))
}

unsafe fn utf8<'a>(s: *const c_char) -> Result<&'a str, RxStatus> {
    if s.is_null() {
        return Err(record(RxStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| record(RxStatus::ParseError, "input is not valid UTF-8"))
}

fn extend_status(e: &ExtendError) -> RxStatus {
    let status = match e {
        ExtendError::NotInterval => RxStatus::NotInterval,
        ExtendError::NotExtendible(_) => RxStatus::NotExtendible,
        ExtendError::InvalidPartial(_) => RxStatus::InvalidPartial,
        ExtendError::Internal(_) => RxStatus::Internal,
    };
    record(status, e.to_string())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn rx_status_message(status: RxStatus) -> *const c_char {
    let s: &'static CStr = match status {
        RxStatus::Ok => c"ok",
        RxStatus::NotInterval => c"graph is not an interval graph",
        RxStatus::NotExtendible => c"partial representation is not extendible",
        RxStatus::InvalidPartial => c"invalid partial representation",
        RxStatus::ParseError => c"malformed input",
        RxStatus::NullPointer => c"null pointer argument",
        RxStatus::OutOfRange => c"index out of range",
        RxStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Detail message for the last non-OK status on this thread. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a graph in the `n m` + edge-list format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rx_graph_parse(text: *const c_char, out: *mut *mut RxGraph) -> RxStatus {
    guarded(|| {
        if out.is_null() {
            return record(RxStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let s = match utf8(text) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match Graph::parse(s) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(RxGraph(g)));
                RxStatus::Ok
            }
            Err(e) => record(RxStatus::ParseError, e.to_string()),
        }
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle from [`rx_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn rx_graph_vertex_count(graph: *const RxGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `graph` must be null or a live handle from [`rx_graph_parse`]; it is
/// invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rx_graph_free(graph: *mut RxGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Parses `v L R` lines of pre-drawn intervals for `graph`. With
/// `assume_sorted`, lines must be in non-decreasing order of left endpoint.
///
/// # Safety
/// `graph` must be a live handle, `text` a nul-terminated string and `out` a
/// writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rx_partial_parse(
    graph: *const RxGraph,
    text: *const c_char,
    assume_sorted: bool,
    out: *mut *mut RxPartial,
) -> RxStatus {
    guarded(|| {
        if out.is_null() {
            return record(RxStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(g) = graph.as_ref() else {
            return record(RxStatus::NullPointer, "null graph");
        };
        let s = match utf8(text) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match PartialRepresentation::parse(&g.0, s, assume_sorted) {
            Ok(partial) => {
                *out = Box::into_raw(Box::new(RxPartial {
                    partial,
                    vertices: g.0.n(),
                }));
                RxStatus::Ok
            }
            Err(e @ (PartialError::Malformed { .. } | PartialError::OutOfRange { .. })) => {
                record(RxStatus::ParseError, e.to_string())
            }
            Err(e) => record(RxStatus::InvalidPartial, e.to_string()),
        }
    })
}

/// # Safety
/// `partial` must be null or a live handle from [`rx_partial_parse`]; it is
/// invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rx_partial_free(partial: *mut RxPartial) {
    if !partial.is_null() {
        drop(Box::from_raw(partial));
    }
}

/// Extends `partial` (null means nothing pre-drawn) to a representation of
/// `graph`. The result is verified before it is returned.
///
/// # Safety
/// `graph` must be a live handle, `partial` null or a live handle parsed for
/// the same graph, and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rx_extend(
    graph: *const RxGraph,
    partial: *const RxPartial,
    out: *mut *mut RxRepresentation,
) -> RxStatus {
    guarded(|| {
        if out.is_null() {
            return record(RxStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(g) = graph.as_ref() else {
            return record(RxStatus::NullPointer, "null graph");
        };
        let empty;
        let p = match partial.as_ref() {
            Some(p) if p.vertices != g.0.n() => {
                return record(
                    RxStatus::InvalidPartial,
                    "partial representation belongs to another graph",
                )
            }
            Some(p) => &p.partial,
            None => {
                empty = PartialRepresentation::empty(g.0.n());
                &empty
            }
        };
        match extend(&g.0, p) {
            Ok(ext) => {
                if let Err(e) = check_extension(&g.0, p, &ext.representation) {
                    return record(RxStatus::Internal, format!("output rejected: {e}"));
                }
                *out = Box::into_raw(Box::new(RxRepresentation(ext.representation)));
                RxStatus::Ok
            }
            Err(e) => extend_status(&e),
        }
    })
}

/// Same as [`rx_extend`] with nothing pre-drawn.
///
/// # Safety
/// As for [`rx_extend`].
#[no_mangle]
pub unsafe extern "C" fn rx_recognize(
    graph: *const RxGraph,
    out: *mut *mut RxRepresentation,
) -> RxStatus {
    rx_extend(graph, ptr::null(), out)
}

/// Number of intervals, or 0 for a null handle.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rx_rep_len(rep: *const RxRepresentation) -> usize {
    rep.as_ref().map_or(0, |r| r.0.len())
}

/// Endpoints of vertex `v` as newly allocated strings, each released with
/// [`rx_string_free`].
///
/// # Safety
/// `rep` must be a live handle; `left` and `right` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn rx_rep_interval(
    rep: *const RxRepresentation,
    v: usize,
    left: *mut *mut c_char,
    right: *mut *mut c_char,
) -> RxStatus {
    guarded(|| {
        let Some(r) = rep.as_ref() else {
            return record(RxStatus::NullPointer, "null representation");
        };
        if left.is_null() || right.is_null() {
            return record(RxStatus::NullPointer, "null output pointer");
        }
        let Some(iv) = r.0.get(v) else {
            return record(
                RxStatus::OutOfRange,
                format!("vertex {v} out of range (n = {})", r.0.len()),
            );
        };
        *left = CString::new(iv.left.to_string())
            .expect("digits only")
            .into_raw();
        *right = CString::new(iv.right.to_string())
            .expect("digits only")
            .into_raw();
        RxStatus::Ok
    })
}

/// The representation as `v L R` lines, newly allocated; null on a null
/// handle. Release with [`rx_string_free`].
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rx_rep_to_string(rep: *const RxRepresentation) -> *mut c_char {
    match rep.as_ref() {
        Some(r) => CString::new(format_representation(&r.0))
            .expect("no nul bytes")
            .into_raw(),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `rep` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rx_rep_free(rep: *mut RxRepresentation) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}
