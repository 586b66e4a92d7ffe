//! Full core maintenance by recompute-and-diff, affected-set measurement and
//! an instance where an order-based maintainer must rewrite Θ(n) order
//! entries although no core value changes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use crate::graph::{static_core_decomposition, EdgeOp, Graph, GraphError, Vertex};

/// Graph plus explicit, always exact core values.
#[derive(Debug, Clone)]
pub struct MaintainedCoreState {
    pub graph: Graph,
    pub core_value: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateReport {
    pub op: EdgeOp,
    /// Endpoints of the update together with every vertex whose core value
    /// changed.
    pub affected: BTreeSet<Vertex>,
    /// Vertices whose value changed.
    pub changed: usize,
    /// `(d, ||V*||_d)` for each requested radius.
    pub neighborhood: Vec<(usize, usize)>,
    pub wall_time: Duration,
}

impl fmt::Display for UpdateReport {
    /// `op |V*| ||V*||_1 ||V*||_2 time_ns`, with one column per requested
    /// radius in place of the two norms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.op, self.affected.len())?;
        for (_, s) in &self.neighborhood {
            write!(f, " {s}")?;
        }
        write!(f, " {}", self.wall_time.as_nanos())
    }
}

impl MaintainedCoreState {
    pub fn new(graph: Graph) -> Self {
        let core_value = static_core_decomposition(&graph).core_value;
        MaintainedCoreState { graph, core_value }
    }

    /// Applies `op`, recomputes every core value and diffs. Radii `ds` are
    /// measured on the graph after the update (they are not timed).
    pub fn apply(&mut self, op: EdgeOp, ds: &[usize]) -> Result<UpdateReport, GraphError> {
        let start = Instant::now();
        op.apply(&mut self.graph)?;
        let fresh = static_core_decomposition(&self.graph).core_value;
        let (u, v) = op.endpoints();
        let mut affected: BTreeSet<Vertex> = [u, v].into();
        let mut changed = 0;
        for (x, &k) in fresh.iter().enumerate() {
            if self.core_value.get(x).copied().unwrap_or(0) != k {
                affected.insert(x);
                changed += 1;
            }
        }
        self.core_value = fresh;
        let wall_time = start.elapsed();
        let neighborhood = ds
            .iter()
            .map(|&d| (d, neighborhood_size(&self.graph, &affected, d)))
            .collect();
        Ok(UpdateReport {
            op,
            affected,
            changed,
            neighborhood,
            wall_time,
        })
    }
}

pub fn fcm_apply(state: &mut MaintainedCoreState, op: EdgeOp) -> Result<UpdateReport, GraphError> {
    state.apply(op, &[1, 2])
}

/// Number of vertices within distance `d` of `s`.
pub fn neighborhood_size(g: &Graph, s: &BTreeSet<Vertex>, d: usize) -> usize {
    let mut dist = vec![usize::MAX; g.num_vertices()];
    let mut queue = VecDeque::new();
    let mut count = 0;
    for &x in s {
        if x < dist.len() && dist[x] == usize::MAX {
            dist[x] = 0;
            queue.push_back(x);
            count += 1;
        }
    }
    while let Some(x) = queue.pop_front() {
        if dist[x] == d {
            continue;
        }
        for y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
                count += 1;
            }
        }
    }
    count
}

/// Order in which static peeling removes vertices: always a vertex of
/// minimum current degree, lowest id first among ties.
pub fn peeling_order(g: &Graph) -> Vec<Vertex> {
    let n = g.num_vertices();
    let mut deg: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut heap: BTreeSet<(usize, Vertex)> = (0..n).map(|u| (deg[u], u)).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, u)) = heap.pop_first() {
        gone[u] = true;
        order.push(u);
        for w in g.neighbors(u) {
            if !gone[w] {
                heap.remove(&(deg[w], w));
                deg[w] -= 1;
                heap.insert((deg[w], w));
            }
        }
    }
    order
}

/// Two anchors of three vertices, cross-linked, joined by a path of `n − 6`
/// middle vertices. `e1` sits in the left anchor and `e2` in the right one;
/// whichever anchor misses its edge holds the lowest-id degree-2 vertex, so
/// the peel front enters the path from that side.
#[derive(Debug, Clone)]
pub struct Counterexample {
    /// The starting graph: contains `e1`, not `e2`.
    pub graph: Graph,
    pub e1: (Vertex, Vertex),
    pub e2: (Vertex, Vertex),
    /// Middle vertices from left to right.
    pub middle: Vec<Vertex>,
}

impl Counterexample {
    /// Graph after deleting `e1` and inserting `e2`.
    pub fn after(&self) -> Graph {
        let mut g = self.graph.clone();
        g.delete_edge(self.e1.0, self.e1.1).expect("e1 present");
        g.insert_edge(self.e2.0, self.e2.1).expect("e2 absent");
        g
    }

    /// Middle vertices in the order peeling removes them.
    pub fn middle_order(&self, g: &Graph) -> Vec<Vertex> {
        let is_mid = |v: Vertex| v >= 6;
        peeling_order(g)
            .into_iter()
            .filter(|&v| is_mid(v))
            .collect()
    }

    /// Re-checks both properties: no core value changes at any point of the
    /// pair and the middle peeling order reverses.
    pub fn check(&self) -> Result<(), String> {
        let before = static_core_decomposition(&self.graph).core_value;
        let mut mid = self.graph.clone();
        mid.delete_edge(self.e1.0, self.e1.1)
            .map_err(|e| e.to_string())?;
        if static_core_decomposition(&mid).core_value != before {
            return Err("deleting e1 changes a core value".into());
        }
        let after = self.after();
        if static_core_decomposition(&after).core_value != before {
            return Err("inserting e2 changes a core value".into());
        }
        let o1 = self.middle_order(&self.graph);
        let o2 = self.middle_order(&after);
        let mut right_to_left = self.middle.clone();
        right_to_left.reverse();
        if o1 != right_to_left || o2 != self.middle {
            return Err("middle peeling order does not reverse".into());
        }
        Ok(())
    }
}

pub fn counterexample_instance(n: usize) -> Result<Counterexample, GraphError> {
    if n < 8 {
        return Err(GraphError::InvalidParameters(format!(
            "counterexample needs n ≥ 8, got {n}"
        )));
    }
    // left anchor 0 1 2, right anchor 3 4 5, middle 6..n
    let middle: Vec<Vertex> = (6..n).collect();
    let mut g = Graph::with_vertices(n);
    for (u, v) in [(0, 2), (1, 2), (3, 5), (4, 5), (1, 4), (2, 5)] {
        g.insert_edge(u, v)?;
    }
    g.insert_edge(0, middle[0])?;
    g.insert_edge(3, middle[middle.len() - 1])?;
    for w in middle.windows(2) {
        g.insert_edge(w[0], w[1])?;
    }
    let (e1, e2) = ((0, 1), (3, 4));
    g.insert_edge(e1.0, e1.1)?;
    let ce = Counterexample {
        graph: g,
        e1,
        e2,
        middle,
    };
    ce.check().map_err(GraphError::InvalidParameters)?;
    Ok(ce)
}
