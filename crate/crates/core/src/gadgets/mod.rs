//! Reductions between dynamic problems.
//!
//! MCVP circuits compile into graphs whose distinguished vertex (or edge)
//! is in the relevant core (or truss) iff the circuit value is 1; OuMv,
//! k-SAT and DynXor compile into dynamic circuits.

mod bundle;
mod dynxor;
mod ksat;
mod library;
mod oumv;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{CircuitError, GateId, GateKind, MonotoneCircuit, WireOp};
use crate::graph::{
    kl_core, normalize, static_core_decomposition, static_truss_decomposition, Digraph, Edge,
    Graph, GraphError, Vertex,
};

pub use crate::graph::EdgeOp;
pub use bundle::{
    read_bundle, read_ksat_bundle, write_bundle, write_ksat_bundle, BundleManifest, WireEntry,
};
pub use dynxor::{compile_dynxor, dynxor_query, dynxor_update, read_bits, DynXorInstance};
pub use ksat::{
    brute_force_sat, compile_ksat, read_dimacs, solve_ksat, Cnf, KsatInstance, DEFAULT_MAX_SPLIT,
};
pub use library::{
    gadget, labels, verify_gadget_library, wire_edges, GadgetLabel, GadgetReport, GateGadget,
    LibraryKind,
};
pub use oumv::{
    answer_oumv_query, compile_oumv, compile_oumv_kcore_instance, read_matrix, write_matrix,
    OuMvInstance, OuMvKcoreInstance, OuMvMode,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("{library} gadget {gadget} violates its contract in context {context}")]
    ContractViolation {
        library: String,
        gadget: String,
        context: String,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("circuit: {0}")]
    Circuit(#[from] CircuitError),
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("no free {0} port on gate {1}")]
    NoFreePort(&'static str, GateId),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o: {0}")]
    Io(String),
}

/// Which membership question the compiled graph answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionKind {
    Kcore { k: usize },
    ApproxKcore { k: usize },
    Truss { k: usize },
    KlCore { k: usize, l: usize },
}

impl ReductionKind {
    pub fn library(self) -> LibraryKind {
        match self {
            ReductionKind::Kcore { .. } => LibraryKind::Kcore3,
            ReductionKind::ApproxKcore { k } => LibraryKind::Approx(k),
            ReductionKind::Truss { .. } => LibraryKind::Truss4,
            ReductionKind::KlCore { .. } => LibraryKind::KlCore,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Undirected(Graph),
    Directed(Digraph),
}

impl Target {
    pub fn num_vertices(&self) -> usize {
        match self {
            Target::Undirected(g) => g.num_vertices(),
            Target::Directed(g) => g.num_vertices(),
        }
    }

    pub fn num_edges(&self) -> usize {
        match self {
            Target::Undirected(g) => g.num_edges(),
            Target::Directed(g) => g.num_arcs(),
        }
    }

    fn insert(&mut self, a: Vertex, b: Vertex) -> Result<(), GraphError> {
        match self {
            Target::Undirected(g) => g.insert_edge(a, b),
            Target::Directed(g) => g.insert_arc(a, b),
        }
    }

    fn delete(&mut self, a: Vertex, b: Vertex) -> Result<(), GraphError> {
        match self {
            Target::Undirected(g) => g.delete_edge(a, b),
            Target::Directed(g) => g.delete_arc(a, b),
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Target::Undirected(g) => Some(g),
            Target::Directed(_) => None,
        }
    }

    pub fn as_digraph(&self) -> Option<&Digraph> {
        match self {
            Target::Directed(g) => Some(g),
            Target::Undirected(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distinguished {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub kind: ReductionKind,
    pub target: Target,
    pub distinguished: Distinguished,
    /// Current circuit wire → target edges (arcs) realizing it.
    pub wire_map: BTreeMap<(GateId, GateId), Vec<(Vertex, Vertex)>>,
    /// Gate → vertices of its gadget.
    pub gate_map: Vec<Vec<Vertex>>,
    free_in: Vec<Vec<Vec<Vertex>>>,
    free_out: Vec<Vec<Vec<Vertex>>>,
    ports: BTreeMap<(GateId, GateId), (Vec<Vertex>, Vec<Vertex>)>,
}

fn label_of(kind: GateKind) -> GadgetLabel {
    match kind {
        GateKind::Zero => GadgetLabel::Zero,
        GateKind::One => GadgetLabel::One,
        GateKind::And => GadgetLabel::And,
        GateKind::Or => GadgetLabel::Or,
    }
}

/// Compiles `c` with gadget `override_gadget(g)` when it returns one, the
/// library gadget otherwise.
pub(crate) fn compile_with(
    c: &MonotoneCircuit,
    kind: ReductionKind,
    override_gadget: impl Fn(GateId) -> Option<GateGadget>,
) -> Result<ReductionArtifact, GadgetError> {
    if !c.is_bounded() {
        return Err(GadgetError::InvalidParameters(
            "circuit must respect the bounded degree caps".into(),
        ));
    }
    let out_gate = c.output().ok_or(CircuitError::NoOutput)?;
    let lib = kind.library();
    let mut target = match lib {
        LibraryKind::KlCore => Target::Directed(Digraph::new()),
        _ => Target::Undirected(Graph::new()),
    };
    let mut next = 0;
    let mut gate_map = Vec::with_capacity(c.size());
    let mut free_in = Vec::with_capacity(c.size());
    let mut free_out: Vec<Vec<Vec<Vertex>>> = Vec::with_capacity(c.size());
    for g in 0..c.size() {
        let gad = override_gadget(g).unwrap_or_else(|| gadget(lib, label_of(c.kind(g))));
        let base = next;
        next += gad.num_vertices;
        match &mut target {
            Target::Undirected(t) => t.ensure_vertex(next - 1),
            Target::Directed(t) => t.ensure_vertex(next - 1),
        }
        for &(a, b) in &gad.edges {
            target.insert(base + a, base + b)?;
        }
        let shift = |p: &Vec<usize>| p.iter().map(|&v| v + base).collect::<Vec<_>>();
        gate_map.push((base..next).collect());
        free_in.push(gad.inputs.iter().rev().map(shift).collect());
        free_out.push(gad.outputs.iter().rev().map(shift).collect());
    }
    let distinguished = {
        let port: &Vec<Vertex> = free_out[out_gate]
            .last()
            .expect("every gadget has an output port");
        match lib {
            LibraryKind::Truss4 => Distinguished::Edge(port[0], port[1]),
            _ => Distinguished::Vertex(port[0]),
        }
    };
    augment(&mut target, kind, next)?;
    let mut art = ReductionArtifact {
        kind,
        target,
        distinguished,
        wire_map: BTreeMap::new(),
        gate_map,
        free_in,
        free_out,
        ports: BTreeMap::new(),
    };
    for (a, b) in c.wires() {
        art.replay_wire_update(WireOp::Insert(a, b))?;
    }
    Ok(art)
}

/// Lifts the base threshold (3-core, 4-truss, (2,0)-core) to the requested
/// one by attaching always-present helper vertices to the first `n` vertices.
fn augment(target: &mut Target, kind: ReductionKind, n: usize) -> Result<(), GadgetError> {
    match (kind, target) {
        (ReductionKind::Kcore { k }, Target::Undirected(g)) if k > 3 => {
            let u: Vec<Vertex> = (n..n + k - 3).collect();
            for (i, &a) in u.iter().enumerate() {
                for &b in &u[i + 1..] {
                    g.insert_edge(a, b)?;
                }
                for v in 0..n {
                    g.insert_edge(a, v)?;
                }
            }
        }
        (ReductionKind::Truss { k }, Target::Undirected(g)) if k > 4 => {
            // every vertex v sits in a private K_k made of v, the shared
            // clique U and three helpers, so every v–U edge is always in the
            // k-truss and every original edge gains |U| triangles
            let u: Vec<Vertex> = (n..n + k - 4).collect();
            for (i, &a) in u.iter().enumerate() {
                for &b in &u[i + 1..] {
                    g.insert_edge(a, b)?;
                }
            }
            let mut next = n + k - 4;
            for v in 0..n {
                let clique = [v, next, next + 1, next + 2];
                next += 3;
                for (i, &a) in clique.iter().enumerate() {
                    for &b in &clique[i + 1..] {
                        g.insert_edge(a, b)?;
                    }
                }
                for &a in &clique {
                    for &b in &u {
                        g.insert_edge(a, b)?;
                    }
                }
            }
        }
        (ReductionKind::KlCore { k, l }, Target::Directed(g)) if k > 2 || l > 0 => {
            let size = k.max(l) + 1;
            let u: Vec<Vertex> = (n..n + size).collect();
            for &a in &u {
                for &b in &u {
                    if a != b {
                        g.insert_arc(a, b)?;
                    }
                }
            }
            for v in 0..n {
                for &a in &u {
                    g.insert_arc(v, a)?;
                }
                for &a in &u[..k - 2] {
                    g.insert_arc(a, v)?;
                }
            }
        }
        _ => {}
    }
    Ok(())
}

/// MCVP → k-core (k ≥ 3): `s*` is in the k-core iff the circuit value is 1.
/// Each wire is one edge.
pub fn compile_mcvp_to_kcore(
    c: &MonotoneCircuit,
    k: usize,
) -> Result<ReductionArtifact, GadgetError> {
    if k < 3 {
        return Err(GadgetError::InvalidParameters(format!(
            "k-core reduction needs k ≥ 3, got {k}"
        )));
    }
    compile_with(c, ReductionKind::Kcore { k }, |_| None)
}

/// MCVP → gap core: value 1 ⇒ K(s*) ≥ 2k, value 0 ⇒ K(s*) ≤ k + 1.
/// Each wire is k² edges.
pub fn compile_mcvp_to_approx_kcore(
    c: &MonotoneCircuit,
    k: usize,
) -> Result<ReductionArtifact, GadgetError> {
    if k < 2 {
        return Err(GadgetError::InvalidParameters(format!(
            "gap reduction needs k ≥ 2, got {k}"
        )));
    }
    compile_with(c, ReductionKind::ApproxKcore { k }, |_| None)
}

/// MCVP → k-truss (k ≥ 4): `e*` is in the k-truss iff the circuit value is 1.
pub fn compile_mcvp_to_truss(
    c: &MonotoneCircuit,
    k: usize,
) -> Result<ReductionArtifact, GadgetError> {
    if k < 4 {
        return Err(GadgetError::InvalidParameters(format!(
            "truss reduction needs k ≥ 4, got {k}"
        )));
    }
    compile_with(c, ReductionKind::Truss { k }, |_| None)
}

/// MCVP → (k,l)-core on a digraph (k ≥ 2).
pub fn compile_mcvp_to_klcore(
    c: &MonotoneCircuit,
    k: usize,
    l: usize,
) -> Result<ReductionArtifact, GadgetError> {
    if k < 2 {
        return Err(GadgetError::InvalidParameters(format!(
            "(k,l)-core reduction needs k ≥ 2, got {k}"
        )));
    }
    compile_with(c, ReductionKind::KlCore { k, l }, |_| None)
}

impl ReductionArtifact {
    /// Applies the target-side image of a circuit wire update and returns the
    /// edge operations performed.
    pub fn replay_wire_update(&mut self, op: WireOp) -> Result<Vec<EdgeOp>, GadgetError> {
        let lib = self.kind.library();
        match op {
            WireOp::Insert(a, b) => {
                if a >= self.gate_map.len() || b >= self.gate_map.len() {
                    return Err(CircuitError::UnknownGate(a.max(b)).into());
                }
                if self.ports.contains_key(&(a, b)) {
                    return Err(CircuitError::AlreadyPresent(a, b).into());
                }
                let out = self.free_out[a]
                    .pop()
                    .ok_or(GadgetError::NoFreePort("output", a))?;
                let Some(inp) = self.free_in[b].pop() else {
                    self.free_out[a].push(out);
                    return Err(GadgetError::NoFreePort("input", b));
                };
                let edges = wire_edges(lib, &out, &inp);
                let mut ops = Vec::with_capacity(edges.len());
                for &(x, y) in &edges {
                    self.target.insert(x, y)?;
                    ops.push(EdgeOp::Insert(x, y));
                }
                self.wire_map.insert((a, b), edges);
                self.ports.insert((a, b), (out, inp));
                Ok(ops)
            }
            WireOp::Delete(a, b) => {
                let (out, inp) = self
                    .ports
                    .remove(&(a, b))
                    .ok_or(CircuitError::NotPresent(a, b))?;
                let edges = self
                    .wire_map
                    .remove(&(a, b))
                    .expect("ports and wire map agree");
                let mut ops = Vec::with_capacity(edges.len());
                for &(x, y) in &edges {
                    self.target.delete(x, y)?;
                    ops.push(EdgeOp::Delete(x, y));
                }
                self.free_out[a].push(out);
                self.free_in[b].push(inp);
                Ok(ops)
            }
        }
    }

    /// Core value of `s*` (undirected vertex reductions only).
    pub fn distinguished_core_value(&self) -> Option<usize> {
        match (&self.target, self.distinguished) {
            (Target::Undirected(g), Distinguished::Vertex(s)) => {
                Some(static_core_decomposition(g).core_value[s])
            }
            _ => None,
        }
    }

    /// The target-side answer: is the distinguished element in the core
    /// (truss)? For the gap reduction this is K(s*) ≥ 2k.
    pub fn query(&self) -> bool {
        match (self.kind, &self.target, self.distinguished) {
            (ReductionKind::Kcore { k }, Target::Undirected(g), Distinguished::Vertex(s)) => {
                static_core_decomposition(g).core_value[s] >= k
            }
            (ReductionKind::ApproxKcore { k }, Target::Undirected(g), Distinguished::Vertex(s)) => {
                static_core_decomposition(g).core_value[s] >= 2 * k
            }
            (ReductionKind::Truss { k }, Target::Undirected(g), Distinguished::Edge(a, b)) => {
                static_truss_decomposition(g).value(a, b).unwrap_or(0) >= k
            }
            (ReductionKind::KlCore { k, l }, Target::Directed(g), Distinguished::Vertex(s)) => {
                kl_core(g, k, l).contains(&s)
            }
            _ => unreachable!("kind, target and distinguished element are built together"),
        }
    }

    /// Distinguished edge, normalized.
    pub fn distinguished_edge(&self) -> Option<Edge> {
        match self.distinguished {
            Distinguished::Edge(a, b) => Some(normalize(a, b)),
            Distinguished::Vertex(_) => None,
        }
    }
}
