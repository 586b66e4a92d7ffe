//! Simple undirected graphs and digraphs with static decompositions.
//!
//! Every decomposition comes in two flavours: the fast peeling algorithm and a
//! deliberately naive fixpoint oracle that follows the definition literally.
//! The oracles exist only for cross-checking.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

/// Dense vertex identifier.
pub type Vertex = usize;

/// Undirected edge, always stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({0}, {1}) already present")]
    AlreadyPresent(Vertex, Vertex),
    #[error("edge ({0}, {1}) not present")]
    NotPresent(Vertex, Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A single edge (or arc) update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeOp {
    Insert(Vertex, Vertex),
    Delete(Vertex, Vertex),
}

impl EdgeOp {
    pub fn endpoints(self) -> (Vertex, Vertex) {
        match self {
            EdgeOp::Insert(u, v) | EdgeOp::Delete(u, v) => (u, v),
        }
    }

    pub fn apply(self, g: &mut Graph) -> Result<(), GraphError> {
        match self {
            EdgeOp::Insert(u, v) => g.insert_edge(u, v),
            EdgeOp::Delete(u, v) => g.delete_edge(u, v),
        }
    }
}

impl std::fmt::Display for EdgeOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeOp::Insert(u, v) => write!(f, "+ {u} {v}"),
            EdgeOp::Delete(u, v) => write!(f, "- {u} {v}"),
        }
    }
}

pub fn normalize(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Mutable simple undirected graph over dense vertex ids.
///
/// Inserting an edge auto-creates missing endpoints; queries on unknown
/// vertices fail with [`GraphError::UnknownVertex`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(edges: I) -> Self {
        let mut g = Graph::new();
        for (u, v) in edges {
            let _ = g.insert_edge(u, v);
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn ensure_vertex(&mut self, u: Vertex) {
        if u >= self.adj.len() {
            self.adj.resize(u + 1, BTreeSet::new());
        }
    }

    pub fn contains_vertex(&self, u: Vertex) -> bool {
        u < self.adj.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains(&v))
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj.get(u).map_or(0, |a| a.len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(u).into_iter().flat_map(|a| a.iter().copied())
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.ensure_vertex(u.max(v));
        if !self.adj[u].insert(v) {
            return Err(GraphError::AlreadyPresent(u, v));
        }
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotPresent(u, v));
        }
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        self.m -= 1;
        Ok(())
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#` starts a
    /// comment. Duplicate lines are rejected.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for (u, v, line) in parse_pairs(reader)? {
            g.insert_edge(u, v).map_err(|e| GraphError::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Both arcs for every edge.
    pub fn to_bidirected(&self) -> Digraph {
        let mut d = Digraph::with_vertices(self.num_vertices());
        for (u, v) in self.edges() {
            d.insert_arc(u, v).expect("simple graph");
            d.insert_arc(v, u).expect("simple graph");
        }
        d
    }
}

fn parse_pairs<R: BufRead>(reader: R) -> Result<Vec<(Vertex, Vertex, usize)>, GraphError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| GraphError::Parse {
            line: lineno,
            msg: e.to_string(),
        })?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut it = body.split_whitespace();
        let mut next = || -> Result<Vertex, GraphError> {
            it.next()
                .ok_or_else(|| GraphError::Parse {
                    line: lineno,
                    msg: "expected two vertex ids".into(),
                })?
                .parse()
                .map_err(|e| GraphError::Parse {
                    line: lineno,
                    msg: format!("bad vertex id: {e}"),
                })
        };
        let u = next()?;
        let v = next()?;
        if it.next().is_some() {
            return Err(GraphError::Parse {
                line: lineno,
                msg: "trailing tokens".into(),
            });
        }
        out.push((u, v, lineno));
    }
    Ok(out)
}

/// Mutable simple digraph (no self-loops, no parallel arcs).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<BTreeSet<Vertex>>,
    in_adj: Vec<BTreeSet<Vertex>>,
    m: usize,
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        Digraph {
            out_adj: vec![BTreeSet::new(); n],
            in_adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.out_adj.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.m
    }

    pub fn ensure_vertex(&mut self, u: Vertex) {
        if u >= self.out_adj.len() {
            self.out_adj.resize(u + 1, BTreeSet::new());
            self.in_adj.resize(u + 1, BTreeSet::new());
        }
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj.get(u).is_some_and(|a| a.contains(&v))
    }

    pub fn in_degree(&self, u: Vertex) -> usize {
        self.in_adj.get(u).map_or(0, |a| a.len())
    }

    pub fn out_degree(&self, u: Vertex) -> usize {
        self.out_adj.get(u).map_or(0, |a| a.len())
    }

    pub fn out_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out_adj
            .get(u)
            .into_iter()
            .flat_map(|a| a.iter().copied())
    }

    pub fn in_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.in_adj
            .get(u)
            .into_iter()
            .flat_map(|a| a.iter().copied())
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().map(move |&v| (u, v)))
    }

    pub fn insert_arc(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.ensure_vertex(u.max(v));
        if !self.out_adj[u].insert(v) {
            return Err(GraphError::AlreadyPresent(u, v));
        }
        self.in_adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn delete_arc(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if !self.has_arc(u, v) {
            return Err(GraphError::NotPresent(u, v));
        }
        self.out_adj[u].remove(&v);
        self.in_adj[v].remove(&u);
        self.m -= 1;
        Ok(())
    }

    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self, GraphError> {
        let mut g = Digraph::new();
        for (u, v, line) in parse_pairs(reader)? {
            g.insert_arc(u, v).map_err(|e| GraphError::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Vertex → core value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub core_value: Vec<usize>,
}

impl CoreDecomposition {
    pub fn value(&self, u: Vertex) -> Option<usize> {
        self.core_value.get(u).copied()
    }

    /// Vertices of the k-core.
    pub fn k_core(&self, k: usize) -> BTreeSet<Vertex> {
        self.core_value
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c >= k)
            .map(|(u, _)| u)
            .collect()
    }

    pub fn max_core(&self) -> usize {
        self.core_value.iter().copied().max().unwrap_or(0)
    }
}

/// Edge → truss value. Triangle-free edges have truss value 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussDecomposition {
    pub truss_value: BTreeMap<Edge, usize>,
}

impl TrussDecomposition {
    pub fn value(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.truss_value.get(&normalize(u, v)).copied()
    }

    pub fn k_truss(&self, k: usize) -> BTreeSet<Edge> {
        self.truss_value
            .iter()
            .filter(|&(_, &t)| t >= k)
            .map(|(&e, _)| e)
            .collect()
    }
}

/// Bucket-based peeling (Batagelj–Zaversnik), linear in n + m.
pub fn static_core_decomposition(g: &Graph) -> CoreDecomposition {
    let n = g.num_vertices();
    let mut deg: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = start of the degree-d block in `order`
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    {
        let mut next = bin.clone();
        for u in 0..n {
            pos[u] = next[deg[u]];
            order[pos[u]] = u;
            next[deg[u]] += 1;
        }
    }

    for i in 0..n {
        let u = order[i];
        for w in g.neighbors(u) {
            if deg[w] > deg[u] {
                let dw = deg[w];
                let pw = pos[w];
                let start = bin[dw];
                let x = order[start];
                if x != w {
                    order.swap(start, pw);
                    pos[x] = pw;
                    pos[w] = start;
                }
                bin[dw] += 1;
                deg[w] -= 1;
            }
        }
    }
    CoreDecomposition { core_value: deg }
}

/// Definitional oracle: for each k, delete vertices of degree < k until
/// nothing changes. O(n·m·k_max); only for cross-checking.
pub fn oracle_core_decomposition(g: &Graph) -> CoreDecomposition {
    let n = g.num_vertices();
    let mut core_value = vec![0usize; n];
    let mut k = 1;
    loop {
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for u in 0..n {
                if alive[u] && g.neighbors(u).filter(|&w| alive[w]).count() < k {
                    alive[u] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for u in 0..n {
            if alive[u] {
                core_value[u] = k;
            }
        }
        k += 1;
    }
    CoreDecomposition { core_value }
}

pub fn k_core_membership(g: &Graph, k: usize, u: Vertex) -> Result<bool, GraphError> {
    if !g.contains_vertex(u) {
        return Err(GraphError::UnknownVertex(u));
    }
    Ok(static_core_decomposition(g).core_value[u] >= k)
}

/// Edge peeling by minimum triangle support, with edges bucketed by
/// support as in the vertex case.
pub fn static_truss_decomposition(g: &Graph) -> TrussDecomposition {
    let edges: Vec<Edge> = g.edges().collect();
    let m = edges.len();
    // adj[u]: (neighbor, edge id), sorted by neighbor
    let mut adj: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); g.num_vertices()];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut gone = vec![false; m];
    let mut sup = vec![0usize; m];
    for (id, &(u, v)) in edges.iter().enumerate() {
        sup[id] = triangles(&adj, &gone, u, v).count();
    }
    let max_sup = sup.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; max_sup + 2];
    for &s in &sup {
        bin[s + 1] += 1;
    }
    for s in 1..bin.len() {
        bin[s] += bin[s - 1];
    }
    let mut order = vec![0usize; m];
    let mut pos = vec![0usize; m];
    let mut next = bin.clone();
    for e in 0..m {
        pos[e] = next[sup[e]];
        order[pos[e]] = e;
        next[sup[e]] += 1;
    }
    let mut truss_value = BTreeMap::new();
    let mut touched = Vec::new();
    for i in 0..m {
        let e = order[i];
        let (u, v) = edges[e];
        truss_value.insert((u, v), sup[e] + 2);
        gone[e] = true;
        touched.clear();
        touched.extend(triangles(&adj, &gone, u, v).flat_map(|(a, b)| [a, b]));
        for &f in &touched {
            if sup[f] > sup[e] {
                // swap f to the front of its bucket, then shrink the bucket
                let s = sup[f];
                let h = order[bin[s]];
                order.swap(bin[s], pos[f]);
                pos[h] = pos[f];
                pos[f] = bin[s];
                bin[s] += 1;
                sup[f] -= 1;
            }
        }
    }
    TrussDecomposition { truss_value }
}

/// Edge-id pairs `(uw, vw)` over the surviving triangles on `{u, v}`.
fn triangles<'a>(
    adj: &'a [Vec<(Vertex, usize)>],
    gone: &'a [bool],
    u: Vertex,
    v: Vertex,
) -> impl Iterator<Item = (usize, usize)> + 'a {
    let (a, b) = (&adj[u], &adj[v]);
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let hit = (a[i].1, b[j].1);
                    i += 1;
                    j += 1;
                    if !gone[hit.0] && !gone[hit.1] {
                        return Some(hit);
                    }
                }
            }
        }
        None
    })
}

/// Definitional truss oracle: for each k ≥ 3, repeatedly delete edges lying
/// in fewer than k − 2 surviving triangles.
pub fn oracle_truss_decomposition(g: &Graph) -> TrussDecomposition {
    let all: Vec<Edge> = g.edges().collect();
    let mut truss_value: BTreeMap<Edge, usize> = all.iter().map(|&e| (e, 2)).collect();
    let mut k = 3;
    loop {
        let mut alive: BTreeSet<Edge> = all.iter().copied().collect();
        loop {
            let doomed: Vec<Edge> = alive
                .iter()
                .copied()
                .filter(|&(u, v)| {
                    let tri = g
                        .neighbors(u)
                        .filter(|&w| {
                            w != v
                                && g.has_edge(v, w)
                                && alive.contains(&normalize(u, w))
                                && alive.contains(&normalize(v, w))
                        })
                        .count();
                    tri + 2 < k
                })
                .collect();
            if doomed.is_empty() {
                break;
            }
            for e in doomed {
                alive.remove(&e);
            }
        }
        if alive.is_empty() {
            break;
        }
        for e in alive {
            truss_value.insert(e, k);
        }
        k += 1;
    }
    TrussDecomposition { truss_value }
}

/// Maximal vertex set whose induced subdigraph has in-degree ≥ `k` and
/// out-degree ≥ `l` everywhere.
pub fn kl_core(g: &Digraph, k: usize, l: usize) -> BTreeSet<Vertex> {
    let n = g.num_vertices();
    let mut alive = vec![true; n];
    let mut indeg: Vec<usize> = (0..n).map(|u| g.in_degree(u)).collect();
    let mut outdeg: Vec<usize> = (0..n).map(|u| g.out_degree(u)).collect();
    let mut queue: VecDeque<Vertex> = (0..n).filter(|&u| indeg[u] < k || outdeg[u] < l).collect();
    while let Some(u) = queue.pop_front() {
        if !alive[u] {
            continue;
        }
        alive[u] = false;
        for w in g.out_neighbors(u) {
            if alive[w] {
                indeg[w] -= 1;
                if indeg[w] < k {
                    queue.push_back(w);
                }
            }
        }
        for w in g.in_neighbors(u) {
            if alive[w] {
                outdeg[w] -= 1;
                if outdeg[w] < l {
                    queue.push_back(w);
                }
            }
        }
    }
    (0..n).filter(|&u| alive[u]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapVerdict {
    AtMostX,
    AtLeastY,
}

/// Decides `c ≤ x` versus `c ≥ y` from an α-approximation `s` of `c`
/// (`c ≤ s ≤ αc`). Declares `AtLeastY` iff `s > αx`.
pub fn gap_decide(s: f64, alpha: f64, x: f64, y: f64) -> Result<GapVerdict, GraphError> {
    if !(x >= 0.0 && x < y) {
        return Err(GraphError::InvalidParameters(format!(
            "need 0 <= X < Y, got X={x}, Y={y}"
        )));
    }
    if alpha < 1.0 || (x > 0.0 && alpha >= y / x) {
        return Err(GraphError::InvalidParameters(format!(
            "alpha={alpha} must lie in [1, Y/X)"
        )));
    }
    Ok(if s > alpha * x {
        GapVerdict::AtLeastY
    } else {
        GapVerdict::AtMostX
    })
}
