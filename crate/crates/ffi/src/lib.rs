//! C interface to `dyncore`.
//!
//! Every object crosses the boundary as an opaque handle created by a
//! `*_new` function and released by the matching `*_free`. Every fallible
//! call returns a [`DcStatus`]; on anything but `DC_STATUS_OK` the message
//! is kept per thread and can be copied out with [`dc_last_error`].
//! Results are written through out-pointers.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dyncore::circuit::{CircuitError, MonotoneCircuit, WireOp};
use dyncore::dynforest::ForestError;
use dyncore::gadgets::{
    compile_mcvp_to_approx_kcore, compile_mcvp_to_kcore, compile_mcvp_to_klcore,
    compile_mcvp_to_truss, GadgetError, ReductionArtifact,
};
use dyncore::graph::{static_core_decomposition, static_truss_decomposition, Graph, GraphError};
use dyncore::twocore::TwoCoreIndex;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownVertex = 3,
    AlreadyPresent = 4,
    NotPresent = 5,
    SelfLoop = 6,
    Parse = 7,
    /// The circuit refused a wire (degree cap or cycle).
    CircuitRejected = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// Graph target of a reduction.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcTarget {
    Kcore = 0,
    ApproxKcore = 1,
    Truss = 2,
    Klcore = 3,
}

/// Undirected simple graph.
pub struct DcGraph(Graph);

/// Fully dynamic 2-core membership index.
pub struct DcTwoCore(TwoCoreIndex);

/// Monotone circuit with a designated output.
pub struct DcCircuit(MonotoneCircuit);

/// A compiled reduction together with the circuit it tracks.
pub struct DcReduction {
    circuit: MonotoneCircuit,
    artifact: ReductionArtifact,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

struct Fail(DcStatus, String);

impl From<GraphError> for Fail {
    fn from(e: GraphError) -> Self {
        let s = match e {
            GraphError::SelfLoop(_) => DcStatus::SelfLoop,
            GraphError::AlreadyPresent(..) => DcStatus::AlreadyPresent,
            GraphError::NotPresent(..) => DcStatus::NotPresent,
            GraphError::UnknownVertex(_) => DcStatus::UnknownVertex,
            GraphError::InvalidParameters(_) => DcStatus::InvalidArgument,
            GraphError::Parse { .. } => DcStatus::Parse,
        };
        Fail(s, e.to_string())
    }
}

impl From<ForestError> for Fail {
    fn from(e: ForestError) -> Self {
        let s = match e {
            ForestError::SelfLoop(_) => DcStatus::SelfLoop,
            ForestError::AlreadyPresent(..) | ForestError::SameTree(..) => DcStatus::AlreadyPresent,
            ForestError::NotPresent(..) | ForestError::NotATreeEdge(..) => DcStatus::NotPresent,
            ForestError::UnknownVertex(_) => DcStatus::UnknownVertex,
        };
        Fail(s, e.to_string())
    }
}

impl From<CircuitError> for Fail {
    fn from(e: CircuitError) -> Self {
        let s = match e {
            CircuitError::AlreadyPresent(..) => DcStatus::AlreadyPresent,
            CircuitError::NotPresent(..) => DcStatus::NotPresent,
            CircuitError::UnknownGate(_) => DcStatus::UnknownVertex,
            CircuitError::Parse { .. } => DcStatus::Parse,
            CircuitError::NoOutput => DcStatus::InvalidArgument,
            CircuitError::DegreeCapViolation { .. } | CircuitError::WouldCreateCycle(..) => {
                DcStatus::CircuitRejected
            }
        };
        Fail(s, e.to_string())
    }
}

impl From<GadgetError> for Fail {
    fn from(e: GadgetError) -> Self {
        match e {
            GadgetError::Circuit(c) => c.into(),
            GadgetError::Graph(g) => g.into(),
            GadgetError::Parse { .. } => Fail(DcStatus::Parse, e.to_string()),
            other => Fail(DcStatus::InvalidArgument, other.to_string()),
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(DcStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DcStatus {
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Fail(DcStatus::Panic, msg))
    });
    match r {
        Ok(()) => {
            LAST_ERROR.with(|e| e.borrow_mut().clear());
            DcStatus::Ok
        }
        Err(Fail(s, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = msg);
            s
        }
    }
}

unsafe fn mut_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn shared<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Copies the last error message of this thread into `buf` as a
/// NUL-terminated string, truncating to `len`. Returns the full message
/// length without the terminator.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn dc_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = e.len().min(len - 1);
            ptr::copy_nonoverlapping(e.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        e.len()
    })
}

// graph

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_graph_new(n: usize, out: *mut *mut DcGraph) -> DcStatus {
    guard(|| {
        put(
            out,
            Box::into_raw(Box::new(DcGraph(Graph::with_vertices(n)))),
        )
    })
}

/// # Safety
/// `g` must be null or a handle from `dc_graph_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_graph_free(g: *mut DcGraph) {
    free(g)
}

/// Adds edge `{u, v}`, growing the vertex set as needed.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_graph_insert_edge(g: *mut DcGraph, u: usize, v: usize) -> DcStatus {
    guard(|| Ok(mut_ref(g, "graph")?.0.insert_edge(u, v)?))
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_graph_delete_edge(g: *mut DcGraph, u: usize, v: usize) -> DcStatus {
    guard(|| Ok(mut_ref(g, "graph")?.0.delete_edge(u, v)?))
}

/// # Safety
/// `g` must be a live handle and `n`, `m` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dc_graph_size(
    g: *const DcGraph,
    n: *mut usize,
    m: *mut usize,
) -> DcStatus {
    guard(|| {
        let g = &shared(g, "graph")?.0;
        put(n, g.num_vertices())?;
        put(m, g.num_edges())
    })
}

/// Writes the core value of vertex `i` to `out[i]`. `out` needs room for
/// one entry per vertex; otherwise nothing is written and the status is
/// `DC_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `g` must be a live handle and `out` point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn dc_graph_core_values(
    g: *const DcGraph,
    out: *mut usize,
    len: usize,
) -> DcStatus {
    guard(|| {
        let g = &shared(g, "graph")?.0;
        if out.is_null() {
            return Err(null("output buffer"));
        }
        if len < g.num_vertices() {
            return Err(Fail(
                DcStatus::BufferTooSmall,
                format!("need {} entries, got {len}", g.num_vertices()),
            ));
        }
        let d = static_core_decomposition(g);
        ptr::copy_nonoverlapping(d.core_value.as_ptr(), out, d.core_value.len());
        Ok(())
    })
}

/// Writes every edge with its truss value, in increasing `(u, v)` order
/// with `u < v`. Each buffer needs one entry per edge.
///
/// # Safety
/// `g` must be a live handle and each buffer point to `len` writable
/// entries.
#[no_mangle]
pub unsafe extern "C" fn dc_graph_truss_values(
    g: *const DcGraph,
    us: *mut usize,
    vs: *mut usize,
    values: *mut usize,
    len: usize,
) -> DcStatus {
    guard(|| {
        let g = &shared(g, "graph")?.0;
        if us.is_null() || vs.is_null() || values.is_null() {
            return Err(null("output buffer"));
        }
        if len < g.num_edges() {
            return Err(Fail(
                DcStatus::BufferTooSmall,
                format!("need {} entries, got {len}", g.num_edges()),
            ));
        }
        let d = static_truss_decomposition(g);
        for (i, (&(u, v), &t)) in d.truss_value.iter().enumerate() {
            *us.add(i) = u;
            *vs.add(i) = v;
            *values.add(i) = t;
        }
        Ok(())
    })
}

// 2-core index

/// Index over `n` isolated vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_twocore_new(n: usize, out: *mut *mut DcTwoCore) -> DcStatus {
    guard(|| {
        put(
            out,
            Box::into_raw(Box::new(DcTwoCore(TwoCoreIndex::build(
                &Graph::with_vertices(n),
            )))),
        )
    })
}

/// Index over a snapshot of `g`; later changes to `g` are not tracked.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_twocore_from_graph(
    g: *const DcGraph,
    out: *mut *mut DcTwoCore,
) -> DcStatus {
    guard(|| {
        let g = &shared(g, "graph")?.0;
        put(
            out,
            Box::into_raw(Box::new(DcTwoCore(TwoCoreIndex::build(g)))),
        )
    })
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_twocore_free(t: *mut DcTwoCore) {
    free(t)
}

/// # Safety
/// `t` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_twocore_insert_edge(t: *mut DcTwoCore, u: usize, v: usize) -> DcStatus {
    guard(|| Ok(mut_ref(t, "index")?.0.insert_edge(u, v)?))
}

/// # Safety
/// `t` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_twocore_delete_edge(t: *mut DcTwoCore, u: usize, v: usize) -> DcStatus {
    guard(|| Ok(mut_ref(t, "index")?.0.delete_edge(u, v)?))
}

/// Sets `*in_core` to whether `u` lies in the 2-core.
///
/// # Safety
/// `t` must be a live handle and `in_core` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_twocore_query(
    t: *mut DcTwoCore,
    u: usize,
    in_core: *mut bool,
) -> DcStatus {
    guard(|| {
        let b = mut_ref(t, "index")?.0.is_in_2core(u)?;
        put(in_core, b)
    })
}

// circuits

/// Parses the line-oriented circuit format (`gate <id> <KIND>`,
/// `wire <a> <b>`, `output <id>`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_circuit_parse(
    text: *const c_char,
    out: *mut *mut DcCircuit,
) -> DcStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let bytes = CStr::from_ptr(text).to_bytes();
        let c = MonotoneCircuit::read_text(bytes)?;
        put(out, Box::into_raw(Box::new(DcCircuit(c))))
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_circuit_free(c: *mut DcCircuit) {
    free(c)
}

/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_circuit_insert_wire(
    c: *mut DcCircuit,
    from: usize,
    to: usize,
) -> DcStatus {
    guard(|| Ok(mut_ref(c, "circuit")?.0.insert_wire(from, to)?))
}

/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_circuit_delete_wire(
    c: *mut DcCircuit,
    from: usize,
    to: usize,
) -> DcStatus {
    guard(|| Ok(mut_ref(c, "circuit")?.0.delete_wire(from, to)?))
}

/// # Safety
/// `c` must be a live handle and `value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_circuit_value(c: *const DcCircuit, value: *mut bool) -> DcStatus {
    guard(|| {
        let c = &shared(c, "circuit")?.0;
        if c.output().is_none() {
            return Err(CircuitError::NoOutput.into());
        }
        put(value, c.query_value())
    })
}

// reductions

/// Compiles `c` into a graph whose membership question answers the circuit
/// value. `l` is only read for `DC_TARGET_KLCORE`. The circuit is copied.
///
/// # Safety
/// `c` must be a live circuit handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_reduction_new(
    c: *const DcCircuit,
    target: DcTarget,
    k: usize,
    l: usize,
    out: *mut *mut DcReduction,
) -> DcStatus {
    guard(|| {
        let circuit = shared(c, "circuit")?.0.clone();
        let artifact = match target {
            DcTarget::Kcore => compile_mcvp_to_kcore(&circuit, k)?,
            DcTarget::ApproxKcore => compile_mcvp_to_approx_kcore(&circuit, k)?,
            DcTarget::Truss => compile_mcvp_to_truss(&circuit, k)?,
            DcTarget::Klcore => compile_mcvp_to_klcore(&circuit, k, l)?,
        };
        put(
            out,
            Box::into_raw(Box::new(DcReduction { circuit, artifact })),
        )
    })
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_reduction_free(r: *mut DcReduction) {
    free(r)
}

unsafe fn reduction_update(r: *mut DcReduction, op: WireOp) -> DcStatus {
    guard(|| {
        let r = mut_ref(r, "reduction")?;
        op.apply(&mut r.circuit)?;
        if let Err(e) = r.artifact.replay_wire_update(op) {
            // keep the circuit and the graph in step
            let undo = match op {
                WireOp::Insert(a, b) => WireOp::Delete(a, b),
                WireOp::Delete(a, b) => WireOp::Insert(a, b),
            };
            let _ = undo.apply(&mut r.circuit);
            return Err(e.into());
        }
        Ok(())
    })
}

/// Inserts wire `(from, to)` in the tracked circuit and the matching edges
/// in the graph.
///
/// # Safety
/// `r` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_reduction_insert_wire(
    r: *mut DcReduction,
    from: usize,
    to: usize,
) -> DcStatus {
    reduction_update(r, WireOp::Insert(from, to))
}

/// # Safety
/// `r` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_reduction_delete_wire(
    r: *mut DcReduction,
    from: usize,
    to: usize,
) -> DcStatus {
    reduction_update(r, WireOp::Delete(from, to))
}

/// Reads the circuit value off the graph.
///
/// # Safety
/// `r` must be a live handle and `value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_reduction_query(r: *const DcReduction, value: *mut bool) -> DcStatus {
    guard(|| put(value, shared(r, "reduction")?.artifact.query()))
}

/// # Safety
/// `r` must be a live handle and `n`, `m` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dc_reduction_size(
    r: *const DcReduction,
    n: *mut usize,
    m: *mut usize,
) -> DcStatus {
    guard(|| {
        let t = &shared(r, "reduction")?.artifact.target;
        put(n, t.num_vertices())?;
        put(m, t.num_edges())
    })
}
