//! Gate gadget templates and their contract checker.
//!
//! A gadget is a small graph (digraph for the directed library) with input
//! and output ports. A port is a list of local vertices; how a wire joins an
//! output port to an input port is fixed per library by [`wire_edges`].

use std::fmt;

use crate::graph::{
    kl_core, static_core_decomposition, static_truss_decomposition, Digraph, Graph, Vertex,
};

use super::GadgetError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetLabel {
    Zero,
    One,
    And,
    Or,
    Arrow,
}

impl GadgetLabel {
    pub fn eval(self, inputs: &[bool]) -> bool {
        match self {
            GadgetLabel::Zero => false,
            GadgetLabel::One => true,
            GadgetLabel::And => inputs.len() == 2 && inputs.iter().all(|&b| b),
            GadgetLabel::Or => inputs.iter().any(|&b| b),
            GadgetLabel::Arrow => inputs[0],
        }
    }
}

impl fmt::Display for GadgetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LibraryKind {
    /// Undirected 3-core, max degree 4.
    Kcore3,
    /// Undirected 4-truss.
    Truss4,
    /// Directed (2,0)-core.
    KlCore,
    /// Gap gadgets: live ⇒ core ≥ 2k, dead ⇒ core ≤ k + 1.
    Approx(usize),
}

impl fmt::Display for LibraryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LibraryKind::Kcore3 => f.write_str("kcore3"),
            LibraryKind::Truss4 => f.write_str("truss4"),
            LibraryKind::KlCore => f.write_str("klcore"),
            LibraryKind::Approx(k) => write!(f, "approx({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateGadget {
    pub label: GadgetLabel,
    pub num_vertices: usize,
    /// Edges, or arcs for the directed library.
    pub edges: Vec<(usize, usize)>,
    pub inputs: Vec<Vec<usize>>,
    pub outputs: Vec<Vec<usize>>,
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn vertices(&mut self, count: usize) -> Vec<usize> {
        (0..count).map(|_| self.vertex()).collect()
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn clique(&mut self, vs: &[usize]) {
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                self.edge(a, b);
            }
        }
    }

    /// Edge `a`–`b` embedded in a private K4, so it always lies in two triangles.
    fn double(&mut self, a: usize, b: usize) {
        let h = self.vertices(2);
        self.clique(&[a, b, h[0], h[1]]);
    }

    /// Truss input port around hub `z`. The wire supplies the triangle
    /// (z, x, y) plus K4-backed edges x–rb and y–ra; here we add the halves
    /// of those K4s that live inside the gadget.
    fn truss_port(&mut self, z: usize, rb: usize, ra: usize) -> Vec<usize> {
        let hb = self.vertices(2);
        let ha = self.vertices(2);
        self.clique(&[rb, hb[0], hb[1]]);
        self.clique(&[ra, ha[0], ha[1]]);
        vec![z, rb, hb[0], hb[1], ra, ha[0], ha[1]]
    }

    fn finish(
        self,
        label: GadgetLabel,
        inputs: Vec<Vec<usize>>,
        outputs: Vec<Vec<usize>>,
    ) -> GateGadget {
        GateGadget {
            label,
            num_vertices: self.n,
            edges: self.edges,
            inputs,
            outputs,
        }
    }
}

/// Edges (arcs) realizing a wire from output port `out` to input port `inp`,
/// both given as global vertex ids.
pub fn wire_edges(kind: LibraryKind, out: &[Vertex], inp: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    match kind {
        LibraryKind::Kcore3 => vec![(out[0], inp[0])],
        LibraryKind::KlCore => inp.iter().map(|&i| (out[0], i)).collect(),
        LibraryKind::Approx(k) => (0..k * k).map(|p| (out[p], inp[p % k])).collect(),
        LibraryKind::Truss4 => {
            let (x, y) = (out[0], out[1]);
            let (z, rb, ra) = (inp[0], inp[1], inp[4]);
            vec![
                (z, x),
                (z, y),
                (x, rb),
                (x, inp[2]),
                (x, inp[3]),
                (y, ra),
                (y, inp[5]),
                (y, inp[6]),
            ]
        }
    }
}

pub fn gadget(kind: LibraryKind, label: GadgetLabel) -> GateGadget {
    match kind {
        LibraryKind::Kcore3 => kcore3(label),
        LibraryKind::Truss4 => truss4(label),
        LibraryKind::KlCore => klcore(label),
        LibraryKind::Approx(k) => approx(k, label),
    }
}

pub fn labels(kind: LibraryKind) -> &'static [GadgetLabel] {
    use GadgetLabel::*;
    match kind {
        LibraryKind::Kcore3 => &[Zero, One, And, Or, Arrow],
        _ => &[Zero, One, And, Or],
    }
}

fn kcore3(label: GadgetLabel) -> GateGadget {
    let mut b = Builder::default();
    match label {
        GadgetLabel::Zero => {
            b.vertex();
            b.finish(label, vec![], vec![vec![0]])
        }
        GadgetLabel::One => {
            let v = b.vertices(4);
            b.clique(&v);
            b.finish(label, vec![], vec![vec![0]])
        }
        GadgetLabel::Arrow | GadgetLabel::Or => {
            // entry a; p, q, r, s; peeling a walks p, q, r, s in order
            let [a, p, q, r, s] = [0, 1, 2, 3, 4];
            b.vertices(5);
            for (x, y) in [(a, p), (a, s), (p, q), (p, r), (q, r), (q, s), (r, s)] {
                b.edge(x, y);
            }
            let inputs = if label == GadgetLabel::Or {
                vec![vec![a], vec![a]]
            } else {
                vec![vec![a]]
            };
            b.finish(label, inputs, vec![vec![r], vec![s]])
        }
        GadgetLabel::And => {
            // the arrow with its entry split into two adjacent entries
            let [a1, p, q, r, s, a2] = [0, 1, 2, 3, 4, 5];
            b.vertices(6);
            for (x, y) in [
                (a1, p),
                (a2, s),
                (a1, a2),
                (p, q),
                (p, r),
                (q, r),
                (q, s),
                (r, s),
            ] {
                b.edge(x, y);
            }
            b.finish(label, vec![vec![a1], vec![a2]], vec![vec![r], vec![s]])
        }
    }
}

fn truss4(label: GadgetLabel) -> GateGadget {
    let mut b = Builder::default();
    match label {
        GadgetLabel::Zero => {
            b.vertices(2);
            b.edge(0, 1);
            b.finish(label, vec![], vec![vec![0, 1]])
        }
        GadgetLabel::One => {
            let v = b.vertices(4);
            b.clique(&v);
            b.finish(label, vec![], vec![vec![0, 1]])
        }
        GadgetLabel::And => {
            // disk with hubs z1, z2; rim x1 y1 a x2 y2 d, inputs x1y1 and x2y2
            let [z1, z2, a, d] = [0, 1, 2, 3];
            b.vertices(4);
            for (x, y) in [(z1, a), (z1, z2), (z1, d), (z2, a), (z2, d)] {
                b.edge(x, y);
            }
            let p1 = b.truss_port(z1, d, a);
            let p2 = b.truss_port(z2, a, d);
            b.finish(label, vec![p1, p2], vec![vec![z1, d], vec![z2, a]])
        }
        GadgetLabel::Or => {
            // two input wheels (hubs h1, h2) share edge pq with an output disk
            let [h1, h2, p, q, z1, z2, a, bb, c, d] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9];
            b.vertices(10);
            for (x, y) in [(h1, p), (h1, q), (h2, p), (h2, q), (p, q)] {
                b.edge(x, y);
            }
            for (x, y) in [
                (z1, p),
                (z1, q),
                (z1, a),
                (z1, z2),
                (z1, d),
                (z2, a),
                (z2, bb),
                (z2, c),
                (z2, d),
            ] {
                b.edge(x, y);
            }
            for (x, y) in [(q, a), (a, bb), (bb, c), (c, d), (d, p)] {
                b.double(x, y);
            }
            let p1 = b.truss_port(h1, q, p);
            let p2 = b.truss_port(h2, p, q);
            b.finish(label, vec![p1, p2], vec![vec![z1, d], vec![z2, bb]])
        }
        GadgetLabel::Arrow => unreachable!("no arrow in the truss library"),
    }
}

fn klcore(label: GadgetLabel) -> GateGadget {
    let mut b = Builder::default();
    match label {
        GadgetLabel::Zero => {
            b.vertex();
            b.finish(label, vec![], vec![vec![0]])
        }
        GadgetLabel::One => {
            b.vertices(3);
            for (x, y) in [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)] {
                b.edge(x, y);
            }
            b.finish(label, vec![], vec![vec![0]])
        }
        GadgetLabel::And => {
            b.vertex();
            b.finish(label, vec![vec![0], vec![0]], vec![vec![0], vec![0]])
        }
        GadgetLabel::Or => {
            b.vertices(2);
            b.edge(0, 1);
            b.edge(1, 0);
            b.finish(label, vec![vec![0, 1], vec![0, 1]], vec![vec![0], vec![0]])
        }
        GadgetLabel::Arrow => unreachable!("no arrow in the directed library"),
    }
}

fn approx(k: usize, label: GadgetLabel) -> GateGadget {
    let mut b = Builder::default();
    // output port of k² slots: slot i·k + j uses vertex `pick(i, j)`
    let port = |pick: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
        (0..k * k).map(|p| pick(p / k, p % k)).collect()
    };
    match label {
        GadgetLabel::Zero => {
            b.vertices(k);
            let out = port(&|i, _| i);
            b.finish(label, vec![], vec![out])
        }
        GadgetLabel::One => {
            let v = b.vertices(2 * k + 1);
            b.clique(&v);
            let out = port(&|i, _| i);
            b.finish(label, vec![], vec![out])
        }
        GadgetLabel::And | GadgetLabel::Or => {
            let groups: Vec<Vec<usize>> = (0..2 * k).map(|_| b.vertices(k)).collect();
            for w in groups.windows(2) {
                for &x in &w[0] {
                    for &y in &w[1] {
                        b.edge(x, y);
                    }
                }
            }
            let o1 = port(&|i, j| groups[i][j]);
            let o2 = port(&|i, j| groups[k + i][j]);
            let first = groups[0].clone();
            let last = groups[2 * k - 1].clone();
            let inputs = if label == GadgetLabel::Or {
                let anchor = b.vertices(2 * k + 1);
                b.clique(&anchor);
                for &x in &last {
                    for &y in &anchor[..k] {
                        b.edge(x, y);
                    }
                }
                vec![first.clone(), first]
            } else {
                vec![first, last]
            };
            b.finish(label, inputs, vec![o1, o2])
        }
        GadgetLabel::Arrow => unreachable!("no arrow in the approx library"),
    }
}

/// A gadget whose single input port is always active; wiring an output into
/// it gives that output the most support a wire can carry.
fn live_sink(kind: LibraryKind) -> GateGadget {
    let mut b = Builder::default();
    match kind {
        LibraryKind::Kcore3 => {
            let v = b.vertices(4);
            b.clique(&v);
            b.finish(GadgetLabel::One, vec![vec![0]], vec![])
        }
        LibraryKind::KlCore => {
            let mut g = klcore(GadgetLabel::One);
            g.inputs = vec![vec![0]];
            g.outputs.clear();
            g
        }
        LibraryKind::Approx(k) => {
            let v = b.vertices(2 * k + 1);
            b.clique(&v);
            b.finish(GadgetLabel::One, vec![v[..k].to_vec()], vec![])
        }
        LibraryKind::Truss4 => {
            let [z, rb, ra] = [0, 1, 2];
            b.vertices(3);
            b.double(z, rb);
            b.double(z, ra);
            let p = b.truss_port(z, rb, ra);
            b.finish(GadgetLabel::One, vec![p], vec![])
        }
    }
}

/// Undirected graph or digraph under test.
enum TestTarget {
    Undirected(Graph),
    Directed(Digraph),
}

impl TestTarget {
    fn new(kind: LibraryKind) -> Self {
        match kind {
            LibraryKind::KlCore => TestTarget::Directed(Digraph::new()),
            _ => TestTarget::Undirected(Graph::new()),
        }
    }

    fn ensure(&mut self, v: Vertex) {
        match self {
            TestTarget::Undirected(g) => g.ensure_vertex(v),
            TestTarget::Directed(g) => g.ensure_vertex(v),
        }
    }

    fn add(&mut self, a: Vertex, b: Vertex) {
        match self {
            TestTarget::Undirected(g) => g.insert_edge(a, b).expect("fresh test edge"),
            TestTarget::Directed(g) => g.insert_arc(a, b).expect("fresh test arc"),
        }
    }
}

/// Places `g` at vertex offset `base` and returns the next free offset.
fn place(t: &mut TestTarget, g: &GateGadget, base: usize) -> usize {
    if g.num_vertices > 0 {
        t.ensure(base + g.num_vertices - 1);
    }
    for &(a, b) in &g.edges {
        t.add(base + a, base + b);
    }
    base + g.num_vertices
}

fn shift(port: &[usize], base: usize) -> Vec<Vertex> {
    port.iter().map(|&v| v + base).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetReport {
    pub kind: LibraryKind,
    pub gadgets: usize,
    pub contexts: usize,
    /// Largest degree seen on a gadget vertex, wires included.
    pub max_degree: usize,
}

impl fmt::Display for GadgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} gadgets, {} contexts, max degree {}",
            self.kind, self.gadgets, self.contexts, self.max_degree
        )
    }
}

/// Embeds every gadget of the library in every input context (each input fed
/// by a One or a Zero gadget) and every output context (open or wired into a
/// live sink), and checks each output port is active iff the gate function
/// of the inputs is 1.
pub fn verify_gadget_library(kind: LibraryKind) -> Result<GadgetReport, GadgetError> {
    let mut report = GadgetReport {
        kind,
        gadgets: 0,
        contexts: 0,
        max_degree: 0,
    };
    for &label in labels(kind) {
        let gad = gadget(kind, label);
        report.gadgets += 1;
        let ni = gad.inputs.len();
        let no = gad.outputs.len();
        for in_mask in 0u32..(1 << ni) {
            for out_mask in 0u32..(1 << no) {
                let ins: Vec<bool> = (0..ni).map(|i| in_mask >> i & 1 == 1).collect();
                let context = format!("inputs {ins:?}, live sinks on outputs {out_mask:02b}");
                let fail = |msg: String| GadgetError::ContractViolation {
                    library: kind.to_string(),
                    gadget: label.to_string(),
                    context: format!("{context}: {msg}"),
                };
                let want = label.eval(&ins);
                let mut t = TestTarget::new(kind);
                let mut next = place(&mut t, &gad, 0);
                for (i, &live) in ins.iter().enumerate() {
                    let src = gadget(
                        kind,
                        if live {
                            GadgetLabel::One
                        } else {
                            GadgetLabel::Zero
                        },
                    );
                    let base = next;
                    next = place(&mut t, &src, base);
                    for (a, b) in wire_edges(kind, &shift(&src.outputs[0], base), &gad.inputs[i]) {
                        t.add(a, b);
                    }
                }
                for o in 0..no {
                    if out_mask >> o & 1 == 1 {
                        let sink = live_sink(kind);
                        let base = next;
                        next = place(&mut t, &sink, base);
                        for (a, b) in
                            wire_edges(kind, &gad.outputs[o], &shift(&sink.inputs[0], base))
                        {
                            t.add(a, b);
                        }
                    }
                }
                let active: Vec<bool> = match &t {
                    TestTarget::Undirected(g) => {
                        for v in 0..gad.num_vertices {
                            report.max_degree = report.max_degree.max(g.degree(v));
                        }
                        match kind {
                            LibraryKind::Kcore3 => {
                                let core = static_core_decomposition(g);
                                gad.outputs
                                    .iter()
                                    .map(|p| core.core_value[p[0]] >= 3)
                                    .collect()
                            }
                            LibraryKind::Approx(k) => {
                                let core = static_core_decomposition(g);
                                let mut act = Vec::new();
                                for p in &gad.outputs {
                                    let hi = p.iter().all(|&v| core.core_value[v] >= 2 * k);
                                    let lo = p.iter().all(|&v| core.core_value[v] <= k + 1);
                                    if !hi && !lo {
                                        return Err(fail("output port inside the gap".into()));
                                    }
                                    act.push(hi);
                                }
                                act
                            }
                            LibraryKind::Truss4 => {
                                let truss = static_truss_decomposition(g);
                                gad.outputs
                                    .iter()
                                    .map(|p| truss.value(p[0], p[1]).unwrap_or(0) >= 4)
                                    .collect()
                            }
                            LibraryKind::KlCore => unreachable!(),
                        }
                    }
                    TestTarget::Directed(g) => {
                        let core = kl_core(g, 2, 0);
                        gad.outputs.iter().map(|p| core.contains(&p[0])).collect()
                    }
                };
                for (o, &a) in active.iter().enumerate() {
                    if a != want {
                        return Err(fail(format!("output {o} active = {a}, gate value {want}")));
                    }
                }
                if kind == LibraryKind::Kcore3 {
                    if report.max_degree > 4 {
                        return Err(fail(format!("degree {} exceeds 4", report.max_degree)));
                    }
                    if let (GadgetLabel::Zero, TestTarget::Undirected(g)) = (label, &t) {
                        if g.degree(0) > 1 {
                            return Err(fail("zero gadget vertex degree above 1".into()));
                        }
                    }
                }
                report.contexts += 1;
            }
        }
    }
    Ok(report)
}
