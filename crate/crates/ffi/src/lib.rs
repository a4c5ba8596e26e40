//! C ABI over `edgesplit`.
//!
//! Graphs live behind an opaque `EsGraph` handle. Every fallible call returns
//! an `EsStatus`; on failure `es_last_error` describes the problem for the
//! calling thread. Strings handed out by the library are owned by the caller
//! and must be released with `es_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use edgesplit::betti::{graph_betti, DEFAULT_BETTI_CAP};
use edgesplit::error::{Error, ParseError};
use edgesplit::field::FieldSpec;
use edgesplit::graph::Graph;
use edgesplit::monomial::{stretch_ideal, MonomialIdeal};
use edgesplit::report::invariants;
use edgesplit::splitting::{
    compare, enumerate_splittings, sigma_stable, EnumerateOptions, SpecialFilter, SplittingMap,
};

/// Opaque graph handle.
pub struct EsGraph(Graph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    CapExceeded = 4,
    InvalidInput = 5,
    InvariantBreach = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsFilter {
    All = 0,
    Special1 = 1,
    Special2 = 2,
    Special = 3,
}

/// Invariants of `S/I(G)` and `I(G)`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EsInvariants {
    pub n: i64,
    pub pd_quotient: i64,
    pub pd_ideal: i64,
    pub reg_ideal: i64,
    pub reg_quotient: i64,
    pub depth: i64,
    pub dim: i64,
    pub bight: i64,
    pub nu: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> EsStatus {
    match e {
        Error::Parse(_) => EsStatus::Parse,
        Error::CapExceeded { .. } => EsStatus::CapExceeded,
        Error::Invariant(_) => EsStatus::InvariantBreach,
        _ => EsStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), EsStatus>) -> EsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            EsStatus::Panic
        }
    }
}

fn fail(e: Error) -> EsStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, EsStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(EsStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        EsStatus::InvalidUtf8
    })
}

unsafe fn field_arg(p: *const c_char) -> Result<FieldSpec, EsStatus> {
    if p.is_null() {
        return Ok(FieldSpec::GF2);
    }
    str_arg(p)?.parse::<FieldSpec>().map_err(|e| fail(e.into()))
}

unsafe fn graph_arg<'a>(g: *const EsGraph) -> Result<&'a Graph, EsStatus> {
    if g.is_null() {
        set_error("null graph handle");
        return Err(EsStatus::NullPointer);
    }
    Ok(&(*g).0)
}

unsafe fn out_ptr<T>(p: *mut T) -> Result<&'static mut T, EsStatus> {
    if p.is_null() {
        set_error("null output pointer");
        return Err(EsStatus::NullPointer);
    }
    Ok(&mut *p)
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no NUL").into_raw()
}

/// Parses a graph from an edge list (`n m` header, one edge per line) or
/// graph JSON.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn es_graph_parse(text: *const c_char, out: *mut *mut EsGraph) -> EsStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let t = str_arg(text)?;
        let parsed = if t.trim_start().starts_with('{') { Graph::from_json(t) } else { Graph::parse_edge_list(t) };
        let g = parsed.map_err(|e| fail(e.into()))?;
        *out = Box::into_raw(Box::new(EsGraph(g)));
        Ok(())
    })
}

/// Builds a graph on `1..=n` from `m` edges given as `2m` flat endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (or be null when `m == 0`)
/// and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn es_graph_new(n: u32, edges: *const u32, m: usize, out: *mut *mut EsGraph) -> EsStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let flat: &[u32] = if m == 0 {
            &[]
        } else if edges.is_null() {
            set_error("null edge array");
            return Err(EsStatus::NullPointer);
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(u32, u32)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let g = Graph::new(n as usize, &pairs).map_err(|e| fail(e.into()))?;
        *out = Box::into_raw(Box::new(EsGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_graph_free(g: *mut EsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_graph_vertex_count(g: *const EsGraph) -> u32 {
    if g.is_null() {
        0
    } else {
        (*g).0.n() as u32
    }
}

/// Number of edges, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_graph_edge_count(g: *const EsGraph) -> u32 {
    if g.is_null() {
        0
    } else {
        (*g).0.m() as u32
    }
}

/// `field` is `"gf2"`, `"q"` or `"gfp:<p>"`; null means GF(2).
///
/// # Safety
/// `g` must be a live handle, `field` null or NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn es_invariants(g: *const EsGraph, field: *const c_char, out: *mut EsInvariants) -> EsStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let field = field_arg(field)?;
        let out = out_ptr(out)?;
        let r = invariants(g, field).map_err(fail)?;
        *out = EsInvariants {
            n: r.n as i64,
            pd_quotient: r.pd_quotient,
            pd_ideal: r.pd_ideal,
            reg_ideal: r.reg_ideal,
            reg_quotient: r.reg_quotient,
            depth: r.depth,
            dim: r.dim,
            bight: r.bight,
            nu: r.nu,
        };
        Ok(())
    })
}

/// Graded Betti table of `S/I(G)` as JSON `{"convention","field","entries":[[i,j,b]]}`.
///
/// # Safety
/// As for `es_invariants`; `*out_json` receives a string to free with `es_string_free`.
#[no_mangle]
pub unsafe extern "C" fn es_betti_json(g: *const EsGraph, field: *const c_char, out_json: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let field = field_arg(field)?;
        let out = out_ptr(out_json)?;
        let t = graph_betti(g, field, DEFAULT_BETTI_CAP, None).map_err(fail)?;
        *out = into_c(t.to_json());
        Ok(())
    })
}

/// The σ-stable splitting as splitting JSON, and its stabilization index.
///
/// # Safety
/// `g` must be a live handle; `out_json` and `out_t0` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn es_sigma_stable_json(g: *const EsGraph, out_json: *mut *mut c_char, out_t0: *mut u32) -> EsStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let out = out_ptr(out_json)?;
        let t0 = out_ptr(out_t0)?;
        let (s, t) = sigma_stable(g).map_err(fail)?;
        *out = into_c(s.to_json());
        *t0 = t;
        Ok(())
    })
}

/// Counts the splittings selected by `filter` (an `EsFilter` value),
/// refusing above `cap` raw choices.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn es_splitting_count(g: *const EsGraph, filter: u32, cap: u64, out: *mut u64) -> EsStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let out = out_ptr(out)?;
        let filter = match filter {
            x if x == EsFilter::All as u32 => SpecialFilter::All,
            x if x == EsFilter::Special1 as u32 => SpecialFilter::Special1,
            x if x == EsFilter::Special2 as u32 => SpecialFilter::Special2,
            x if x == EsFilter::Special as u32 => SpecialFilter::Special,
            other => {
                set_error(&format!("unknown filter {other}"));
                return Err(EsStatus::InvalidInput);
            }
        };
        let opts = EnumerateOptions { filter, cap, ..Default::default() };
        *out = enumerate_splittings(g, &opts).map_err(fail)?.count() as u64;
        Ok(())
    })
}

/// Compares a splitting (splitting JSON) with its target; returns the
/// comparison record JSON including verdicts.
///
/// # Safety
/// String arguments NUL-terminated (`field` may be null); `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn es_compare_json(
    splitting_json: *const c_char,
    field: *const c_char,
    out_json: *mut *mut c_char,
) -> EsStatus {
    guard(|| {
        let text = str_arg(splitting_json)?;
        let field = field_arg(field)?;
        let out = out_ptr(out_json)?;
        let s = SplittingMap::from_json(text).map_err(fail)?;
        let r = compare(&s, field).map_err(fail)?;
        *out = into_c(serde_json::to_string(&r).expect("record serializes"));
        Ok(())
    })
}

/// Applies the `t`-fold stretch to an ideal written as `(x1x2, x2x3)`.
///
/// # Safety
/// `ideal` NUL-terminated; `out_text` valid.
#[no_mangle]
pub unsafe extern "C" fn es_stretch_ideal(ideal: *const c_char, t: u32, out_text: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let text = str_arg(ideal)?;
        let out = out_ptr(out_text)?;
        let i: MonomialIdeal = text.parse().map_err(|e: ParseError| fail(e.into()))?;
        let s = stretch_ideal(&i, t).map_err(fail)?;
        *out = into_c(format!("{s}"));
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; valid until the next call
/// that fails. Never null.
#[no_mangle]
pub extern "C" fn es_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn es_version() -> *const c_char {
    static V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr().cast()
}
