//! C ABI for scheme-forge.
//!
//! Objects are opaque handles created by `sf_*_new`/`sf_*_build` and released
//! with the matching `sf_*_free`. Every fallible call returns an [`SfStatus`];
//! the message of the most recent failure on the calling thread is available
//! through [`sf_last_error`].
//!
//! Variable-length results are written to caller buffers. Those calls take
//! `buf`, `cap` and `needed`: `*needed` is always set to the full size
//! (including the trailing NUL for strings), and `SF_BUFFER_TOO_SMALL` is
//! returned when `cap` is short.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use scheme_forge::designs::{self, DifferenceSet};
use scheme_forge::error::Error;
use scheme_forge::graphs::{self, ColoredDigraph, DdgVerdict, DsrgVerdict};
use scheme_forge::io::{self, GraphFormat};
use scheme_forge::iso::{self, ColoredStructure};
use scheme_forge::search::{self, SearchMode};
use scheme_forge::tatra::Omega;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    SfOk = 0,
    SfNullPointer = 1,
    SfInvalidArgument = 2,
    SfConstruction = 3,
    SfTooLarge = 4,
    SfBufferTooSmall = 5,
    SfParse = 6,
    SfInternal = 7,
}

/// Graph serialization formats.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfFormat {
    SfGraph6 = 0,
    SfDigraph6 = 1,
    SfEdgeList = 2,
    SfAdjacencyJson = 3,
}

impl From<SfFormat> for GraphFormat {
    fn from(f: SfFormat) -> Self {
        match f {
            SfFormat::SfGraph6 => GraphFormat::Graph6,
            SfFormat::SfDigraph6 => GraphFormat::Digraph6,
            SfFormat::SfEdgeList => GraphFormat::EdgeList,
            SfFormat::SfAdjacencyJson => GraphFormat::AdjacencyJson,
        }
    }
}

/// Point set of a Tatra scheme.
pub struct SfOmega(Omega);

/// A digraph, optionally with a vertex partition.
pub struct SfGraph(ColoredDigraph);

/// (v, k, t, lambda, mu)
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SfDsrgParams {
    pub v: u64,
    pub k: u64,
    pub t: u64,
    pub lambda: u64,
    pub mu: u64,
}

/// (v, k, lambda1, lambda2, m, n)
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SfDdgParams {
    pub v: u64,
    pub k: u64,
    pub lambda1: u64,
    pub lambda2: u64,
    pub m: u64,
    pub n: u64,
    pub proper: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> SfStatus {
    match e {
        Error::TooLarge { .. } | Error::FieldTooLarge { .. } => SfStatus::SfTooLarge,
        Error::Parse(_) | Error::AsymmetricForGraph6 => SfStatus::SfParse,
        Error::BadParameters(_) | Error::NotPrime(_) | Error::BadCongruence { .. } | Error::DegreeTooSmall { .. } => {
            SfStatus::SfInvalidArgument
        }
        _ => SfStatus::SfConstruction,
    }
}

/// Runs `f`, records failures and converts panics into `SF_INTERNAL`.
fn guard(f: impl FnOnce() -> Result<(), (SfStatus, String)>) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SfStatus::SfOk
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SfStatus::SfInternal
        }
    }
}

fn lift<T>(r: scheme_forge::Result<T>) -> Result<T, (SfStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (SfStatus, String) {
    (SfStatus::SfNullPointer, "null pointer argument".into())
}

unsafe fn write_bytes(bytes: &[u8], buf: *mut u8, cap: usize, needed: *mut usize) -> Result<(), (SfStatus, String)> {
    if needed.is_null() {
        return Err(null());
    }
    *needed = bytes.len();
    if bytes.len() > cap || (buf.is_null() && !bytes.is_empty()) {
        return Err((
            SfStatus::SfBufferTooSmall,
            format!("need {} bytes, have {cap}", bytes.len()),
        ));
    }
    if !bytes.is_empty() {
        std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf, bytes.len());
    }
    Ok(())
}

unsafe fn write_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), (SfStatus, String)> {
    let mut bytes = s.as_bytes().to_vec();
    bytes.push(0);
    write_bytes(&bytes, buf.cast(), cap, needed)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread (empty after a success).
///
/// # Safety
/// `buf` must be writable for `cap` bytes and `needed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> SfStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match write_str(&msg, buf, cap, needed) {
        Ok(()) => SfStatus::SfOk,
        Err((s, _)) => s,
    }
}

/// Builds Omega for GF(q) and the index-n subgroup K.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_omega_new(q: u64, n: u32, out: *mut *mut SfOmega) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = std::ptr::null_mut();
        let (r, d) = scheme_forge::arith::prime_power(q)
            .ok_or((SfStatus::SfInvalidArgument, format!("q = {q} is not a prime power")))?;
        let omega = lift(Omega::build(r, d, n))?;
        *out = Box::into_raw(Box::new(SfOmega(omega)));
        Ok(())
    })
}

/// # Safety
/// `omega` must come from `sf_omega_new` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sf_omega_free(omega: *mut SfOmega) {
    if !omega.is_null() {
        drop(Box::from_raw(omega));
    }
}

/// Number of points, or 0 for null.
///
/// # Safety
/// `omega` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_omega_len(omega: *const SfOmega) -> usize {
    omega.as_ref().map_or(0, |o| o.0.len())
}

/// Field modulus such as `x^3+x+1`.
///
/// # Safety
/// `omega` must be a live handle; buffer rules as in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn sf_omega_modulus(
    omega: *const SfOmega,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SfStatus {
    guard(|| {
        let o = omega.as_ref().ok_or_else(null)?;
        write_str(&o.0.field().modulus_string(), buf, cap, needed)
    })
}

unsafe fn emit_graph(g: ColoredDigraph, out: *mut *mut SfGraph) {
    *out = Box::into_raw(Box::new(SfGraph(g)));
}

/// Builds the digraph Gamma(i, g) with i in {1, 2}.
///
/// # Safety
/// `omega` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sf_dsrg_build(omega: *const SfOmega, i: u8, g: u32, out: *mut *mut SfGraph) -> SfStatus {
    guard(|| {
        let o = omega.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        *out = std::ptr::null_mut();
        emit_graph(lift(graphs::build_dsrg(&o.0, i, g))?, out);
        Ok(())
    })
}

/// Builds Delta(D) for the difference set `elements[0..len]` in Z_n.
///
/// # Safety
/// `omega` must be a live handle, `elements` readable for `len` entries, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sf_ddg_build(
    omega: *const SfOmega,
    elements: *const u32,
    len: usize,
    out: *mut *mut SfGraph,
) -> SfStatus {
    guard(|| {
        let o = omega.as_ref().ok_or_else(null)?;
        if out.is_null() || (elements.is_null() && len > 0) {
            return Err(null());
        }
        *out = std::ptr::null_mut();
        let elts = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(elements, len)
        };
        let ds: DifferenceSet = lift(designs::certify(o.0.n(), elts))?;
        emit_graph(lift(graphs::build_ddg(&o.0, &ds))?, out);
        Ok(())
    })
}

/// Reads a graph in the given format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_import(text: *const c_char, format: SfFormat, out: *mut *mut SfGraph) -> SfStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        *out = std::ptr::null_mut();
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (SfStatus::SfParse, "input is not UTF-8".to_string()))?;
        emit_graph(lift(io::import_graph(s, format.into()))?, out);
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_free(graph: *mut SfGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for null.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_vertex_count(graph: *const SfGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Arc count (each undirected edge counts twice), or 0 for null.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_arc_count(graph: *const SfGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.0.arc_count())
}

/// Whether x -> y is an arc. Out-of-range vertices give false.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_has_arc(graph: *const SfGraph, x: usize, y: usize) -> bool {
    match graph.as_ref() {
        Some(g) if x < g.0.vertex_count() && y < g.0.vertex_count() => g.0.has_arc(x, y),
        _ => false,
    }
}

/// Serializes the graph. The written string is NUL-terminated.
///
/// # Safety
/// `graph` must be a live handle; buffer rules as in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_export(
    graph: *const SfGraph,
    format: SfFormat,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SfStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(null)?;
        let s = lift(io::export_graph(&g.0, format.into()))?;
        write_str(&s, buf, cap, needed)
    })
}

/// Exhaustive DSRG check. On success `*is_dsrg` tells the verdict and
/// `*params` holds the parameters when it is true.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_verify_dsrg(
    graph: *const SfGraph,
    is_dsrg: *mut bool,
    params: *mut SfDsrgParams,
) -> SfStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(null)?;
        if is_dsrg.is_null() || params.is_null() {
            return Err(null());
        }
        let verdict = lift(graphs::verify_dsrg(&g.0))?;
        *params = SfDsrgParams::default();
        *is_dsrg = matches!(verdict, DsrgVerdict::Dsrg { .. });
        if let Some(p) = verdict.params() {
            *params = SfDsrgParams {
                v: p.v,
                k: p.k,
                t: p.t,
                lambda: p.lambda,
                mu: p.mu,
            };
        }
        Ok(())
    })
}

/// Exhaustive DDG check against the graph's own partition, or consecutive
/// blocks of `class_size` vertices when `class_size > 0`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_verify_ddg(
    graph: *const SfGraph,
    class_size: usize,
    is_ddg: *mut bool,
    params: *mut SfDdgParams,
) -> SfStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(null)?;
        if is_ddg.is_null() || params.is_null() {
            return Err(null());
        }
        let v = g.0.vertex_count();
        let partition: Vec<Vec<u32>> = if class_size > 0 {
            if v % class_size != 0 {
                return Err((
                    SfStatus::SfInvalidArgument,
                    format!("class size {class_size} does not divide {v}"),
                ));
            }
            (0..v / class_size)
                .map(|c| ((c * class_size) as u32..((c + 1) * class_size) as u32).collect())
                .collect()
        } else {
            g.0.partition
                .clone()
                .ok_or((SfStatus::SfInvalidArgument, "graph has no partition".to_string()))?
        };
        let verdict = lift(graphs::verify_ddg(&g.0, &partition))?;
        *params = SfDdgParams::default();
        *is_ddg = matches!(verdict, DdgVerdict::Ddg { .. });
        if let DdgVerdict::Ddg { params: p, proper, .. } = verdict {
            *params = SfDdgParams {
                v: p.v,
                k: p.k,
                lambda1: p.lambda1,
                lambda2: p.lambda2,
                m: p.m,
                n: p.n,
                proper,
            };
        }
        Ok(())
    })
}

/// Automorphism group order as a decimal string.
///
/// # Safety
/// `graph` must be a live handle; buffer rules as in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_automorphism_order(
    graph: *const SfGraph,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SfStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(null)?;
        let report = lift(iso::automorphism_order(&ColoredStructure::from_digraph(&g.0)))?;
        write_str(&report.order.to_string(), buf, cap, needed)
    })
}

/// SHA-256 of the canonical form, as 64 hex digits.
///
/// # Safety
/// `graph` must be a live handle; buffer rules as in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_canonical_hash(
    graph: *const SfGraph,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SfStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(null)?;
        let form = lift(iso::canonical_form(&ColoredStructure::from_digraph(&g.0)))?;
        write_str(&form.hash, buf, cap, needed)
    })
}

/// Decides isomorphism of two graphs.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_isomorphic(a: *const SfGraph, b: *const SfGraph, result: *mut bool) -> SfStatus {
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(null)?, b.as_ref().ok_or_else(null)?);
        if result.is_null() {
            return Err(null());
        }
        let w = lift(iso::are_isomorphic(
            &ColoredStructure::from_digraph(&a.0),
            &ColoredStructure::from_digraph(&b.0),
        ))?;
        *result = w.is_some();
        Ok(())
    })
}

/// Number of admissible (p, q) pairs with q <= max_q.
///
/// # Safety
/// `count` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_search_count_pairs(max_q: u64, prime_q_only: bool, count: *mut u64) -> SfStatus {
    guard(|| {
        if count.is_null() {
            return Err(null());
        }
        let mode = if prime_q_only {
            SearchMode::PrimeQ
        } else {
            SearchMode::PrimePowerQ
        };
        *count = lift(search::search_pairs(max_q, mode))?.len() as u64;
        Ok(())
    })
}
