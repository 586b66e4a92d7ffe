//! Holm–de Lichtenberg–Thorup fully dynamic connectivity.
//!
//! Every edge carries a level in `0..levels`. Level-`i` forest `F_i` spans the
//! subgraph of edges with level ≥ `i`, and `F_0 ⊇ F_1 ⊇ …`. A tree of `F_i`
//! has at most `n / 2^i` vertices, so levels never exceed `⌊lg n⌋`.
//!
//! On the per-level Euler tour forests, channel 0 flags vertices incident to a
//! tree edge of exactly that level and channel 1 flags vertices incident to a
//! non-tree edge of exactly that level.

use std::collections::{HashMap, HashSet};

use super::ett::EulerTourForest;
use super::{ForestChange, ForestError};
use crate::graph::{normalize, Edge, Vertex};

const TREE_CH: usize = 0;
const NONTREE_CH: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct EdgeInfo {
    level: usize,
    tree: bool,
}

type Incidence = HashMap<Vertex, HashSet<Vertex>>;

#[derive(Debug, Clone)]
pub struct HdtConnectivity {
    n: usize,
    forests: Vec<EulerTourForest>,
    tree_adj: Vec<Incidence>,
    nontree_adj: Vec<Incidence>,
    edges: HashMap<Edge, EdgeInfo>,
}

impl HdtConnectivity {
    pub fn new(n: usize) -> Self {
        let levels = (usize::BITS - n.max(1).leading_zeros()) as usize;
        HdtConnectivity {
            n,
            forests: (0..levels).map(|_| EulerTourForest::new(n)).collect(),
            tree_adj: vec![HashMap::new(); levels],
            nontree_adj: vec![HashMap::new(); levels],
            edges: HashMap::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_levels(&self) -> usize {
        self.forests.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains_key(&normalize(u, v))
    }

    pub fn is_tree_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.get(&normalize(u, v)).is_some_and(|e| e.tree)
    }

    pub fn edge_level(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.get(&normalize(u, v)).map(|e| e.level)
    }

    pub fn connected(&self, u: Vertex, v: Vertex) -> bool {
        u == v || self.forests[0].connected(u, v)
    }

    pub fn component_size(&self, u: Vertex) -> usize {
        self.forests[0].tree_size(u)
    }

    /// Level-0 spanning forest edges.
    pub fn spanning_forest(&self) -> Vec<Edge> {
        self.forests[0].edges()
    }

    fn check(&self, u: Vertex) -> Result<(), ForestError> {
        if u < self.n {
            Ok(())
        } else {
            Err(ForestError::UnknownVertex(u))
        }
    }

    fn add_incidence(&mut self, tree: bool, level: usize, u: Vertex, v: Vertex) {
        let (adj, ch) = if tree {
            (&mut self.tree_adj[level], TREE_CH)
        } else {
            (&mut self.nontree_adj[level], NONTREE_CH)
        };
        for (a, b) in [(u, v), (v, u)] {
            let set = adj.entry(a).or_default();
            set.insert(b);
            let c = set.len();
            self.forests[level].set_count(ch, a, c);
        }
    }

    fn remove_incidence(&mut self, tree: bool, level: usize, u: Vertex, v: Vertex) {
        let (adj, ch) = if tree {
            (&mut self.tree_adj[level], TREE_CH)
        } else {
            (&mut self.nontree_adj[level], NONTREE_CH)
        };
        for (a, b) in [(u, v), (v, u)] {
            let c = match adj.get_mut(&a) {
                Some(set) => {
                    set.remove(&b);
                    let c = set.len();
                    if c == 0 {
                        adj.remove(&a);
                    }
                    c
                }
                None => 0,
            };
            self.forests[level].set_count(ch, a, c);
        }
    }

    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<ForestChange, ForestError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(ForestError::SelfLoop(u));
        }
        let e = normalize(u, v);
        if self.edges.contains_key(&e) {
            return Err(ForestError::AlreadyPresent(u, v));
        }
        if self.forests[0].connected(u, v) {
            self.edges.insert(
                e,
                EdgeInfo {
                    level: 0,
                    tree: false,
                },
            );
            self.add_incidence(false, 0, u, v);
            Ok(ForestChange::NoChange)
        } else {
            self.edges.insert(
                e,
                EdgeInfo {
                    level: 0,
                    tree: true,
                },
            );
            self.forests[0].link(u, v)?;
            self.add_incidence(true, 0, u, v);
            Ok(ForestChange::TreeEdgeAdded(e.0, e.1))
        }
    }

    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<ForestChange, ForestError> {
        let e = normalize(u, v);
        let Some(info) = self.edges.remove(&e) else {
            return Err(ForestError::NotPresent(u, v));
        };
        if !info.tree {
            self.remove_incidence(false, info.level, u, v);
            return Ok(ForestChange::NoChange);
        }
        self.remove_incidence(true, info.level, u, v);
        for i in 0..=info.level {
            self.forests[i].cut(u, v)?;
        }
        for i in (0..=info.level).rev() {
            if let Some(r) = self.replace(i, u, v) {
                return Ok(ForestChange::TreeEdgeRemoved {
                    u: e.0,
                    v: e.1,
                    replacement: Some(r),
                });
            }
        }
        Ok(ForestChange::TreeEdgeRemoved {
            u: e.0,
            v: e.1,
            replacement: None,
        })
    }

    /// Searches level `level` for an edge reconnecting the trees of `u` and
    /// `v` in `F_level`, raising examined edges of the smaller side.
    fn replace(&mut self, level: usize, u: Vertex, v: Vertex) -> Option<Edge> {
        let f = &self.forests[level];
        let small = if f.tree_size(u) <= f.tree_size(v) {
            u
        } else {
            v
        };

        // push level-`level` tree edges of the small side one level up
        while let Some(x) = self.forests[level].first_flagged(TREE_CH, small) {
            let nbrs: Vec<Vertex> = self.tree_adj[level]
                .get(&x)
                .map(|s| s.iter().copied().collect())
                .unwrap_or_default();
            for y in nbrs {
                self.remove_incidence(true, level, x, y);
                debug_assert!(
                    level + 1 < self.forests.len(),
                    "tree size invariant violated"
                );
                self.forests[level + 1]
                    .link(x, y)
                    .expect("level forests are nested");
                self.add_incidence(true, level + 1, x, y);
                self.edges.get_mut(&normalize(x, y)).unwrap().level = level + 1;
            }
        }

        while let Some(x) = self.forests[level].first_flagged(NONTREE_CH, small) {
            let nbrs: Vec<Vertex> = self.nontree_adj[level]
                .get(&x)
                .map(|s| s.iter().copied().collect())
                .unwrap_or_default();
            for y in nbrs {
                if self.forests[level].connected(y, small) {
                    self.remove_incidence(false, level, x, y);
                    self.add_incidence(false, level + 1, x, y);
                    self.edges.get_mut(&normalize(x, y)).unwrap().level = level + 1;
                } else {
                    self.remove_incidence(false, level, x, y);
                    self.add_incidence(true, level, x, y);
                    *self.edges.get_mut(&normalize(x, y)).unwrap() = EdgeInfo { level, tree: true };
                    for i in 0..=level {
                        self.forests[i]
                            .link(x, y)
                            .expect("endpoints were disconnected");
                    }
                    return Some(normalize(x, y));
                }
            }
        }
        None
    }

    /// Checks the structural invariants: nested forests, tree sizes bounded by
    /// `n / 2^i`, level-0 forest spanning every edge, and consistent
    /// incidence bookkeeping.
    pub fn validate(&self) -> Result<(), String> {
        for (&(a, b), info) in &self.edges {
            if !self.forests[0].connected(a, b) {
                return Err(format!("edge ({a}, {b}) endpoints not connected in F_0"));
            }
            for i in 0..self.forests.len() {
                let in_forest = self.forests[i].has_edge(a, b);
                if in_forest != (info.tree && i <= info.level) {
                    return Err(format!(
                        "edge ({a}, {b}) forest membership wrong at level {i}"
                    ));
                }
            }
            let adj = if info.tree {
                &self.tree_adj
            } else {
                &self.nontree_adj
            };
            if !adj[info.level].get(&a).is_some_and(|s| s.contains(&b)) {
                return Err(format!("edge ({a}, {b}) missing from incidence"));
            }
            if !info.tree && !self.forests[info.level].connected(a, b) {
                return Err(format!(
                    "non-tree edge ({a}, {b}) crosses level-{} trees",
                    info.level
                ));
            }
        }
        let tree_edges = self.edges.values().filter(|e| e.tree).count();
        if self.forests[0].edges().len() != tree_edges {
            return Err("F_0 has edges not recorded as tree edges".into());
        }
        for (i, f) in self.forests.iter().enumerate() {
            for u in 0..self.n {
                if f.tree_size(u) > (self.n >> i).max(1) {
                    return Err(format!("level {i} tree of {u} too large"));
                }
                let t = self.tree_adj[i].get(&u).map_or(0, |s| s.len());
                let nt = self.nontree_adj[i].get(&u).map_or(0, |s| s.len());
                if f.count(TREE_CH, u) != t || f.count(NONTREE_CH, u) != nt {
                    return Err(format!("level {i} vertex {u} flag counts stale"));
                }
            }
        }
        Ok(())
    }
}
