//! C ABI over `turan-core`.
//!
//! Graphs and families are opaque handles owned by the caller and released
//! with their `_free` function. Every fallible call returns a
//! [`TuranStatus`]; on failure [`turan_last_error`] describes the cause.
//! Strings returned through `char **` are released with
//! [`turan_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use turan_core::oracle::DEFAULT_SEARCH_BUDGET;
use turan_core::structure::{circumference, contains_subgraph, p_value};
use turan_core::{Connectivity, GraphFamily, PValue, SearchConstraint, SmallGraph, TuranError};

/// `p(F)` of a non-bipartite graph.
pub const TURAN_P_INFINITE: u64 = u64::MAX;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TuranStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGraph6 = 3,
    CapacityExceeded = 4,
    BudgetExceeded = 5,
    HypothesisViolated = 6,
    UnknownGraph = 7,
    Io = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TuranConnectivity {
    Any = 0,
    Connected = 1,
    TwoConnected = 2,
}

/// An undirected simple graph on at most 64 vertices.
pub struct TuranGraph(SmallGraph);

/// A forbidden family: graphs plus an optional long-cycle threshold.
pub struct TuranFamily {
    members: Vec<SmallGraph>,
    cycle_threshold: Option<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &TuranError) -> TuranStatus {
    match e {
        TuranError::CapacityExceeded { .. } | TuranError::TooLarge { .. } => TuranStatus::CapacityExceeded,
        TuranError::VertexOutOfRange { .. } | TuranError::NotACycle(_) | TuranError::InvalidArgument(_) => {
            TuranStatus::InvalidArgument
        }
        TuranError::Graph6(_) => TuranStatus::InvalidGraph6,
        TuranError::BudgetExceeded { .. } => TuranStatus::BudgetExceeded,
        TuranError::HypothesisViolated(_) => TuranStatus::HypothesisViolated,
        TuranError::UnknownGraph(_) => TuranStatus::UnknownGraph,
        TuranError::Io(_) => TuranStatus::Io,
    }
}

enum Fail {
    Null,
    Core(TuranError),
}

impl From<TuranError> for Fail {
    fn from(e: TuranError) -> Self {
        Fail::Core(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> TuranStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TuranStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument");
            TuranStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            TuranStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail::Core(TuranError::InvalidArgument("string is not UTF-8".into())))
}

fn give_graph(g: SmallGraph) -> *mut TuranGraph {
    Box::into_raw(Box::new(TuranGraph(g)))
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn turan_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `code` is a NUL-terminated string and `out_graph` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_graph_from_graph6(code: *const c_char, out_graph: *mut *mut TuranGraph) -> TuranStatus {
    guard(|| {
        let slot = out(out_graph)?;
        *slot = give_graph(turan_core::graph6::decode(text(code)?)?);
        Ok(())
    })
}

/// Builtin names such as `K4`, `K33`, `C5`, `W5`, `petersen`, or `g6:<code>`.
///
/// # Safety
/// `name` is a NUL-terminated string and `out_graph` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_graph_named(name: *const c_char, out_graph: *mut *mut TuranGraph) -> TuranStatus {
    guard(|| {
        let slot = out(out_graph)?;
        *slot = give_graph(SmallGraph::parse(text(name)?)?);
        Ok(())
    })
}

/// # Safety
/// `g` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn turan_graph_free(g: *mut TuranGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn turan_graph_order(g: *const TuranGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Number of edges, 0 for a null handle.
///
/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn turan_graph_edge_count(g: *const TuranGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` is a live handle and `out_code` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_graph_to_graph6(g: *const TuranGraph, out_code: *mut *mut c_char) -> TuranStatus {
    guard(|| {
        let g = deref(g)?;
        let slot = out(out_code)?;
        *slot = give_string(turan_core::graph6::encode(&g.0)?);
        Ok(())
    })
}

/// # Safety
/// `s` is null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn turan_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `a` and `b` are live handles and `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_is_isomorphic(a: *const TuranGraph, b: *const TuranGraph, result: *mut bool) -> TuranStatus {
    guard(|| {
        let (a, b) = (deref(a)?, deref(b)?);
        *out(result)? = turan_core::is_isomorphic(&a.0, &b.0);
        Ok(())
    })
}

/// Length of a longest cycle, 0 for forests.
///
/// # Safety
/// `g` is a live handle and `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_circumference(g: *const TuranGraph, result: *mut usize) -> TuranStatus {
    guard(|| {
        let g = deref(g)?;
        *out(result)? = circumference(&g.0)?;
        Ok(())
    })
}

/// Whether `host` has a (not necessarily induced) subgraph isomorphic to
/// `pattern`.
///
/// # Safety
/// `host` and `pattern` are live handles and `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_contains(
    host: *const TuranGraph,
    pattern: *const TuranGraph,
    result: *mut bool,
) -> TuranStatus {
    guard(|| {
        let (h, p) = (deref(host)?, deref(pattern)?);
        *out(result)? = contains_subgraph(&h.0, &p.0);
        Ok(())
    })
}

/// Smallest colour class over proper 2-colourings, or
/// [`TURAN_P_INFINITE`] for non-bipartite graphs.
///
/// # Safety
/// `g` is a live handle and `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_p_value(g: *const TuranGraph, result: *mut u64) -> TuranStatus {
    guard(|| {
        let g = deref(g)?;
        *out(result)? = match p_value(&g.0) {
            PValue::Finite(p) => p as u64,
            PValue::Infinite => TURAN_P_INFINITE,
        };
        Ok(())
    })
}

/// A family forbidding every cycle of length at least `cycle_threshold`
/// (0 for none) and, after [`turan_family_add`], the added graphs.
///
/// # Safety
/// `out_family` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_family_new(cycle_threshold: usize, out_family: *mut *mut TuranFamily) -> TuranStatus {
    guard(|| {
        let slot = out(out_family)?;
        let cycle_threshold = (cycle_threshold != 0).then_some(cycle_threshold);
        GraphFamily::new([], cycle_threshold)?;
        *slot = Box::into_raw(Box::new(TuranFamily {
            members: Vec::new(),
            cycle_threshold,
        }));
        Ok(())
    })
}

/// Adds a copy of `g`; the family does not keep the handle.
///
/// # Safety
/// `family` and `g` are live handles.
#[no_mangle]
pub unsafe extern "C" fn turan_family_add(family: *mut TuranFamily, g: *const TuranGraph) -> TuranStatus {
    guard(|| {
        let fam = out(family)?;
        let g = deref(g)?;
        fam.members.push(g.0.clone());
        Ok(())
    })
}

/// # Safety
/// `family` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn turan_family_free(family: *mut TuranFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

fn constraint(connectivity: TuranConnectivity, node_budget: u64, witnesses: bool) -> SearchConstraint {
    SearchConstraint {
        connectivity: match connectivity {
            TuranConnectivity::Any => Connectivity::Any,
            TuranConnectivity::Connected => Connectivity::Connected,
            TuranConnectivity::TwoConnected => Connectivity::TwoConnected,
        },
        want_witnesses: witnesses,
        node_budget: if node_budget == 0 { DEFAULT_SEARCH_BUDGET } else { node_budget },
        ..Default::default()
    }
}

/// `ex(n, family)` under the connectivity constraint. `node_budget` 0 means
/// the default. `*has_value` is false when no graph on `n` vertices
/// qualifies, and then `*value` is left untouched.
///
/// # Safety
/// `family` is a live handle; `value` and `has_value` are writable.
#[no_mangle]
pub unsafe extern "C" fn turan_ex_exact(
    n: usize,
    family: *const TuranFamily,
    connectivity: TuranConnectivity,
    node_budget: u64,
    value: *mut u64,
    has_value: *mut bool,
) -> TuranStatus {
    guard(|| {
        let fam = deref(family)?;
        let (value, has_value) = (out(value)?, out(has_value)?);
        let fam = GraphFamily::new(fam.members.clone(), fam.cycle_threshold)?;
        let rec = turan_core::ex_exact(n, &fam, &constraint(connectivity, node_budget, false))?;
        *has_value = rec.value.is_some();
        if let Some(v) = rec.value {
            *value = v;
        }
        Ok(())
    })
}

/// The extremal graphs as newline-separated graph6 codes in canonical
/// order, at most 1000 of them.
///
/// # Safety
/// `family` is a live handle and `out_codes` is writable.
#[no_mangle]
pub unsafe extern "C" fn turan_extremal_graph6(
    n: usize,
    family: *const TuranFamily,
    connectivity: TuranConnectivity,
    node_budget: u64,
    out_codes: *mut *mut c_char,
) -> TuranStatus {
    guard(|| {
        let fam = deref(family)?;
        let slot = out(out_codes)?;
        let fam = GraphFamily::new(fam.members.clone(), fam.cycle_threshold)?;
        let rec = turan_core::ex_exact(n, &fam, &constraint(connectivity, node_budget, true))?;
        *slot = give_string(rec.witnesses.join("\n"));
        Ok(())
    })
}
