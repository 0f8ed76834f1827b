//! C interface to `fatgraph-core`.
//!
//! Graphs cross the boundary as opaque `FgGraph` handles built from JSON or
//! from `fg_graph_build_xk`. Results that are more than a number come back
//! as NUL-terminated JSON strings owned by the caller and released with
//! `fg_string_free`. Every function returns an `FgStatus`; on failure
//! `fg_last_error` describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fatgraph_core::enumeration::{EnumerationError, Enumerator};
use fatgraph_core::json::{parse_graph, ChainJson, GraphJson};
use fatgraph_core::morita::{verify_cycle, verify_main_theorem};
use fatgraph_core::{boundary_of_graph, build_xk, canonicalize, Error, Orientation, RibbonGraph};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    MalformedInput = 3,
    ResourceCap = 4,
    IdentityFailed = 5,
    Internal = 6,
}

/// An oriented ribbon graph.
pub struct FgGraph {
    graph: RibbonGraph,
    orientation: Orientation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("NULs removed"));
}

fn status_of(e: &Error) -> FgStatus {
    match e {
        Error::Enumeration(EnumerationError::ResourceCap { .. }) => FgStatus::ResourceCap,
        Error::Json(_) => FgStatus::MalformedInput,
        _ => match e.exit_code() {
            2 => FgStatus::InvalidArgument,
            3 => FgStatus::ResourceCap,
            _ => FgStatus::Internal,
        },
    }
}

/// Runs `body`, turning errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<FgStatus, (FgStatus, String)>) -> FgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FgStatus::Internal
        }
    }
}

fn fail(e: impl Into<Error>) -> (FgStatus, String) {
    let e = e.into();
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (FgStatus, String) {
    (FgStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn graph_ref<'a>(graph: *const FgGraph) -> Result<&'a FgGraph, (FgStatus, String)> {
    graph.as_ref().ok_or_else(|| null("graph"))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<FgStatus, (FgStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(text).map_err(|_| (FgStatus::Internal, "NUL in output".into()))?.into_raw();
    Ok(FgStatus::Ok)
}

/// Message for the last failure on this thread. Valid until the next call
/// that fails on the same thread; never NULL.
#[no_mangle]
pub extern "C" fn fg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a graph from JSON `{"rotation": .., "pairing": .., "vertex_order"?: .., "tails"?: ..}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_graph_from_json(json: *const c_char, out: *mut *mut FgGraph) -> FgStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (FgStatus::MalformedInput, "input is not UTF-8".to_string()))?;
        let (graph, orientation) = parse_graph(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(FgGraph { graph, orientation }));
        Ok(FgStatus::Ok)
    })
}

/// The graph `X_k` with its reference orientation.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_graph_build_xk(k: usize, out: *mut *mut FgGraph) -> FgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if k == 0 {
            return Err((FgStatus::InvalidArgument, "k must be positive".into()));
        }
        let (graph, orientation) = build_xk(k);
        *out = Box::into_raw(Box::new(FgGraph { graph, orientation }));
        Ok(FgStatus::Ok)
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fg_graph_free(graph: *mut FgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Vertex, edge and face counts.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fg_graph_counts(
    graph: *const FgGraph,
    vertices: *mut usize,
    edges: *mut usize,
    faces: *mut usize,
) -> FgStatus {
    guard(|| {
        let g = &graph_ref(graph)?.graph;
        if vertices.is_null() || edges.is_null() || faces.is_null() {
            return Err(null("output"));
        }
        *vertices = g.num_vertices();
        *edges = g.num_edges();
        *faces = g.num_faces();
        Ok(FgStatus::Ok)
    })
}

/// Genus and number of punctures of the thickened surface.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fg_graph_genus(graph: *const FgGraph, genus: *mut usize, punctures: *mut usize) -> FgStatus {
    guard(|| {
        let g = &graph_ref(graph)?.graph;
        if genus.is_null() || punctures.is_null() {
            return Err(null("output"));
        }
        let (gg, m) = g.genus_punctures().map_err(fail)?;
        *genus = gg;
        *punctures = m;
        Ok(FgStatus::Ok)
    })
}

/// Whether the oriented graph equals its own negative.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fg_graph_is_zero(graph: *const FgGraph, out: *mut bool) -> FgStatus {
    guard(|| {
        let h = graph_ref(graph)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = canonicalize(&h.graph, &h.orientation).0.is_zero();
        Ok(FgStatus::Ok)
    })
}

/// Canonical form as JSON: `{"zero": bool, "sign": ±1, "graph": ..}`; the
/// input equals `sign` times `graph`.
///
/// # Safety
/// All pointers must be valid; free the string with `fg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fg_graph_canonical_json(graph: *const FgGraph, out: *mut *mut c_char) -> FgStatus {
    guard(|| {
        let h = graph_ref(graph)?;
        let (canon, sign) = canonicalize(&h.graph, &h.orientation);
        let value = if canon.is_zero() {
            serde_json::json!({ "zero": true })
        } else {
            serde_json::json!({
                "zero": false,
                "sign": sign.to_i64(),
                "graph": GraphJson::from_graph(canon.graph(), Some(&canon.orientation())),
            })
        };
        write_string(out, value.to_string())
    })
}

/// Boundary chain as JSON `{"grade": [g, m, k], "terms": [..]}`.
///
/// # Safety
/// All pointers must be valid; free the string with `fg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fg_graph_boundary_json(graph: *const FgGraph, out: *mut *mut c_char) -> FgStatus {
    guard(|| {
        let h = graph_ref(graph)?;
        let d = boundary_of_graph(&h.graph, &h.orientation).map_err(fail)?;
        let text = serde_json::to_string(&ChainJson::from_chain(&d)).map_err(|e| (FgStatus::Internal, e.to_string()))?;
        write_string(out, text)
    })
}

/// Chain-level certificate for `Z_k` as JSON. For `k = 5, 9, 13, ..` this
/// includes the pairing with `Θ_k`; for other odd `k ≥ 3` only the cycle
/// check runs. Returns `IdentityFailed` when a check fails; the report is
/// written either way.
///
/// # Safety
/// `out` must be a valid pointer; free the string with `fg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fg_verify(k: usize, out: *mut *mut c_char) -> FgStatus {
    guard(|| {
        let (text, passed) = if k >= 5 && k % 4 == 1 {
            let c = verify_main_theorem(k).map_err(fail)?;
            (serde_json::to_string(&c), c.passed())
        } else {
            let c = verify_cycle(k).map_err(fail)?;
            (serde_json::to_string(&c), c.cycle_ok)
        };
        let text = text.map_err(|e| (FgStatus::Internal, e.to_string()))?;
        write_string(out, text)?;
        if passed {
            Ok(FgStatus::Ok)
        } else {
            set_error(format!("verification failed for k = {k}"));
            Ok(FgStatus::IdentityFailed)
        }
    })
}

/// Euler characteristic of the genus `genus`, `punctures`-puncture complex.
/// `max_darts = 0` selects the default cap.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_euler_characteristic(
    genus: usize,
    punctures: usize,
    max_darts: usize,
    out: *mut i64,
) -> FgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let mut e = if max_darts == 0 { Enumerator::default() } else { Enumerator::new(max_darts) };
        *out = e.euler_characteristic(genus, punctures).map_err(fail)?;
        Ok(FgStatus::Ok)
    })
}
