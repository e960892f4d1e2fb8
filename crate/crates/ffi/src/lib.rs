//! C interface to `mlgraph`.
//!
//! Graphs and hierarchies are handed out as opaque pointers and must be
//! released with the matching `*_free` function. Every function returns an
//! [`MlgStatus`]; on failure a description is available from
//! [`mlg_last_error_message`] on the same thread. Strings returned through
//! out-parameters are owned by the caller and released with
//! [`mlg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mlgraph::features::SchemeSpec;
use mlgraph::graph::dot;
use mlgraph::metrics::{hierarchy_metrics, LemmaBudget};
use mlgraph::textpipe::{build_sequence_graph, clean_and_lemmatize, PipelineConfig};
use mlgraph::{ContractionScheme, DecGraph, Digraph, Error, MultilevelGraph, NodeId};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    OutOfRange = 5,
    UnknownNode = 6,
    Config = 7,
    Panic = 8,
}

/// Opaque decontractible graph.
pub struct MlgGraph(DecGraph);

/// Opaque multilevel hierarchy.
pub struct MlgHierarchy(MultilevelGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(MlgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Json(_) | Error::Dot(_) | Error::Corpus { .. } | Error::Csv(_) => MlgStatus::Parse,
            Error::LevelOutOfRange { .. } => MlgStatus::OutOfRange,
            Error::UnknownNode(_) => MlgStatus::UnknownNode,
            Error::UnknownScheme(_) | Error::InvalidParams { .. } | Error::Config(_) | Error::Io { .. } => MlgStatus::Config,
            _ => MlgStatus::InvalidGraph,
        };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::from(Error::Json(e))
    }
}

fn set_last_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("interior nuls removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MlgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            MlgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(_) => {
            set_last_error(Some("internal panic".to_owned()));
            MlgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MlgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(MlgStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure(MlgStatus::InvalidGraph, "output contains a nul byte".into()))?;
    out.write(c.into_raw());
    Ok(())
}

/// `null` or empty selects the default schedule; otherwise a JSON array of
/// `{"tag": ..., "params": {...}}` objects.
unsafe fn read_gamma(p: *const c_char) -> Result<Vec<ContractionScheme>, Failure> {
    if p.is_null() {
        return Ok(ContractionScheme::default_schedule());
    }
    let text = read_str(p, "gamma")?;
    if text.trim().is_empty() {
        return Ok(ContractionScheme::default_schedule());
    }
    let specs: Vec<SchemeSpec> = serde_json::from_str(text)?;
    Ok(specs.iter().map(ContractionScheme::from_spec).collect::<mlgraph::Result<_>>()?)
}

/// Message for the last failed call on this thread, or null after a
/// successful call. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn mlg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mlg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_graph_from_json(json: *const c_char, out: *mut *mut MlgGraph) -> MlgStatus {
    guard(|| {
        let g: DecGraph = serde_json::from_str(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(MlgGraph(g))))
    })
}

/// Parses a graph from DOT produced by [`mlg_graph_to_dot`].
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_graph_from_dot(text: *const c_char, out: *mut *mut MlgGraph) -> MlgStatus {
    guard(|| {
        let g = dot::from_dot(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(MlgGraph(g))))
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_graph_to_json(g: *const MlgGraph, out: *mut *mut c_char) -> MlgStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        write_string(out, serde_json::to_string(&g.0)?)
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_graph_to_dot(g: *const MlgGraph, out: *mut *mut c_char) -> MlgStatus {
    guard(|| write_string(out, dot::to_dot(&deref(g, "graph")?.0)))
}

/// # Safety
/// `g` must be a live graph handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_graph_size(g: *const MlgGraph, nodes: *mut usize, edges: *mut usize) -> MlgStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        write_out(nodes, g.0.node_count())?;
        write_out(edges, g.0.edge_count())
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mlg_graph_free(g: *mut MlgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

fn new_hierarchy(base: Digraph, gamma: Vec<ContractionScheme>) -> Result<*mut MlgHierarchy, Failure> {
    let m = MultilevelGraph::new(base, gamma)?;
    Ok(Box::into_raw(Box::new(MlgHierarchy(m))))
}

/// Builds a hierarchy over a plain graph given as
/// `{"nodes": [{"label", "weight"}], "edges": [{"source", "target", "weight"}]}`
/// with node indices as endpoints. `gamma` may be null for the default
/// schedule.
///
/// # Safety
/// String arguments must be null (where allowed) or nul-terminated; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_new(base_json: *const c_char, gamma: *const c_char, out: *mut *mut MlgHierarchy) -> MlgStatus {
    guard(|| {
        let base: Digraph = serde_json::from_str(read_str(base_json, "base_json")?)?;
        let h = new_hierarchy(base, read_gamma(gamma)?)?;
        write_out(out, h)
    })
}

/// Runs the text pipeline with the built-in resources and builds a
/// hierarchy over the resulting word-sequence graph.
///
/// # Safety
/// `text` must be nul-terminated, `gamma` null or nul-terminated; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_from_text(text: *const c_char, gamma: *const c_char, out: *mut *mut MlgHierarchy) -> MlgStatus {
    guard(|| {
        let seq = clean_and_lemmatize(read_str(text, "text")?, &PipelineConfig::default());
        let h = new_hierarchy(build_sequence_graph(&seq), read_gamma(gamma)?)?;
        write_out(out, h)
    })
}

/// Loads a hierarchy saved with [`mlg_hierarchy_to_json`].
///
/// # Safety
/// `json` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_from_json(json: *const c_char, out: *mut *mut MlgHierarchy) -> MlgStatus {
    guard(|| {
        let m: MultilevelGraph = serde_json::from_str(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(MlgHierarchy(m))))
    })
}

/// # Safety
/// `h` must be a live hierarchy handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_to_json(h: *const MlgHierarchy, out: *mut *mut c_char) -> MlgStatus {
    guard(|| {
        let m = &deref(h, "hierarchy")?.0;
        m.materialize()?;
        write_string(out, serde_json::to_string(m)?)
    })
}

/// Number of contraction steps; levels run from 0 to the height.
///
/// # Safety
/// `h` must be a live hierarchy handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_height(h: *const MlgHierarchy, out: *mut usize) -> MlgStatus {
    guard(|| write_out(out, deref(h, "hierarchy")?.0.height()))
}

/// Copies level `level` into a new graph handle.
///
/// # Safety
/// `h` must be a live hierarchy handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_level(h: *const MlgHierarchy, level: usize, out: *mut *mut MlgGraph) -> MlgStatus {
    guard(|| {
        let g = deref(h, "hierarchy")?.0.con(level)?.clone();
        write_out(out, Box::into_raw(Box::new(MlgGraph(g))))
    })
}

/// Base node ids behind `node` at `level`, as a sorted JSON array.
///
/// # Safety
/// `h` must be a live hierarchy handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_trace_json(h: *const MlgHierarchy, level: usize, node: u64, out: *mut *mut c_char) -> MlgStatus {
    guard(|| {
        let trace = deref(h, "hierarchy")?.0.trace(level, NodeId(node))?;
        write_string(out, serde_json::to_string(&trace)?)
    })
}

/// Per-level metrics as a JSON array, normalized by the base graph's total
/// node weight.
///
/// # Safety
/// `h` must be a live hierarchy handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_metrics_json(h: *const MlgHierarchy, out: *mut *mut c_char) -> MlgStatus {
    guard(|| {
        let m = &deref(h, "hierarchy")?.0;
        let budget = LemmaBudget::new(m.base().total_weight())
            .ok_or_else(|| Failure(MlgStatus::Config, "base graph has zero total weight".into()))?;
        write_string(out, serde_json::to_string(&hierarchy_metrics(m, budget)?)?)
    })
}

/// # Safety
/// `h` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mlg_hierarchy_free(h: *mut MlgHierarchy) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
