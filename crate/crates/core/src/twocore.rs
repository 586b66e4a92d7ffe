//! Fully dynamic 2-core membership.
//!
//! HDT maintains a spanning forest `F`. Every graph edge is either a tree edge
//! of `F` or an extra edge; a vertex is special when it has an incident extra
//! edge. `u` is in the 2-core iff it is special or two distinct subtrees of
//! `u` (components of `T_u − u`) contain special vertices. With `T_u` rooted
//! at `u`, the first and last special vertices `v`, `w` of its Euler tour lie
//! in distinct subtrees iff `u` is on the `v`–`w` path, i.e. iff
//! `nca(v, w) = u` after everting `u`.
//!
//! Updates cost O(lg² n) amortized (HDT); queries O(lg n).

use crate::dynforest::{
    EulerTourForest, ForestChange, ForestError, HdtConnectivity, LinkCutForest,
};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone)]
pub struct TwoCoreIndex {
    hdt: HdtConnectivity,
    ett: EulerTourForest,
    lct: LinkCutForest,
    extra_degree: Vec<usize>,
}

impl TwoCoreIndex {
    /// Empty graph on vertices `0..n`.
    pub fn new(n: usize) -> Self {
        TwoCoreIndex {
            hdt: HdtConnectivity::new(n),
            ett: EulerTourForest::new(n),
            lct: LinkCutForest::new(n),
            extra_degree: vec![0; n],
        }
    }

    /// Index over `g`'s vertices and edges. Vertices `g.num_vertices()..n`
    /// (if `n` is larger) start isolated.
    pub fn build(g: &Graph) -> Self {
        Self::build_with_capacity(g, g.num_vertices())
    }

    pub fn build_with_capacity(g: &Graph, n: usize) -> Self {
        let mut ix = TwoCoreIndex::new(n.max(g.num_vertices()));
        for (u, v) in g.edges() {
            ix.insert_edge(u, v).expect("simple graph");
        }
        ix
    }

    pub fn num_vertices(&self) -> usize {
        self.extra_degree.len()
    }

    pub fn num_edges(&self) -> usize {
        self.hdt.num_edges()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.hdt.has_edge(u, v)
    }

    pub fn extra_degree(&self, u: Vertex) -> usize {
        self.extra_degree[u]
    }

    pub fn is_special(&self, u: Vertex) -> bool {
        self.extra_degree[u] > 0
    }

    fn bump_extra(&mut self, u: Vertex, up: bool) {
        if up {
            self.extra_degree[u] += 1;
        } else {
            self.extra_degree[u] -= 1;
        }
        self.ett
            .set_mark(u, self.extra_degree[u])
            .expect("vertex in range");
    }

    fn link_forests(&mut self, u: Vertex, v: Vertex) {
        self.ett.link(u, v).expect("HDT forest stays acyclic");
        self.lct.link(u, v).expect("HDT forest stays acyclic");
    }

    fn cut_forests(&mut self, u: Vertex, v: Vertex) {
        self.ett.cut(u, v).expect("HDT tree edge mirrored");
        self.lct.cut(u, v).expect("HDT tree edge mirrored");
    }

    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), ForestError> {
        match self.hdt.insert_edge(u, v)? {
            ForestChange::TreeEdgeAdded(a, b) => self.link_forests(a, b),
            ForestChange::NoChange => {
                self.bump_extra(u, true);
                self.bump_extra(v, true);
            }
            ForestChange::TreeEdgeRemoved { .. } => unreachable!("insert never removes"),
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), ForestError> {
        match self.hdt.delete_edge(u, v)? {
            ForestChange::NoChange => {
                self.bump_extra(u, false);
                self.bump_extra(v, false);
            }
            ForestChange::TreeEdgeRemoved {
                u: a,
                v: b,
                replacement,
            } => {
                self.cut_forests(a, b);
                if let Some((w, z)) = replacement {
                    self.link_forests(w, z);
                    self.bump_extra(w, false);
                    self.bump_extra(z, false);
                }
            }
            ForestChange::TreeEdgeAdded(..) => unreachable!("delete never adds"),
        }
        Ok(())
    }

    /// Is `u` in the 2-core of the current graph?
    pub fn is_in_2core(&mut self, u: Vertex) -> Result<bool, ForestError> {
        if u >= self.num_vertices() {
            return Err(ForestError::UnknownVertex(u));
        }
        if self.is_special(u) {
            return Ok(true);
        }
        // u is unmarked, so first/last marked already exclude u itself
        self.ett.reroot(u)?;
        let (Some(v), Some(w)) = (self.ett.first_marked(u), self.ett.last_marked(u)) else {
            return Ok(false);
        };
        if v == w {
            return Ok(false);
        }
        self.lct.evert(u)?;
        Ok(self.lct.nca(v, w) == Some(u))
    }

    /// ETT edge set = LCT edge set = HDT level-0 forest, marks = extra degree,
    /// and every extra edge counted at both endpoints.
    pub fn validate(&self) -> Result<(), String> {
        let f = self.hdt.spanning_forest();
        if self.ett.edges() != f {
            return Err("ETT edge set differs from HDT forest".into());
        }
        if self.lct.edges() != f {
            return Err("LCT edge set differs from HDT forest".into());
        }
        let extra_total: usize = self.extra_degree.iter().sum();
        if extra_total != 2 * (self.hdt.num_edges() - f.len()) {
            return Err("extra degrees do not match extra edge count".into());
        }
        for u in 0..self.num_vertices() {
            if self.ett.mark(u) != self.extra_degree[u] {
                return Err(format!("mark of {u} differs from extra degree"));
            }
        }
        self.hdt.validate()?;
        self.ett.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_triangle() {
        let mut ix = TwoCoreIndex::new(3);
        assert!(!ix.is_in_2core(0).unwrap());
        let tri = Graph::from_edges([(0, 1), (1, 2), (0, 2)]);
        let mut ix = TwoCoreIndex::build(&tri);
        assert_eq!((0..3).filter(|&u| ix.is_special(u)).count(), 2);
        assert!((0..3).all(|u| ix.is_in_2core(u).unwrap()));
        ix.validate().unwrap();
        assert_eq!(ix.is_in_2core(7), Err(ForestError::UnknownVertex(7)));
    }

    #[test]
    fn insert_tree_edge_then_cycle() {
        let mut ix = TwoCoreIndex::new(4);
        ix.insert_edge(0, 1).unwrap();
        ix.insert_edge(1, 2).unwrap();
        assert_eq!(
            ix.extra_degree(0) + ix.extra_degree(1) + ix.extra_degree(2),
            0
        );
        ix.insert_edge(2, 0).unwrap();
        assert!(ix.is_special(2) && ix.is_special(0));
        assert_eq!(ix.insert_edge(0, 2), Err(ForestError::AlreadyPresent(0, 2)));
    }

    #[test]
    fn delete_extra_and_tree_edges() {
        let tri = Graph::from_edges([(0, 1), (1, 2), (0, 2)]);
        let mut ix = TwoCoreIndex::build(&tri);
        ix.delete_edge(0, 2).unwrap();
        assert!((0..3).all(|u| !ix.is_special(u)));
        assert!((0..3).all(|u| !ix.is_in_2core(u).unwrap()));

        let mut ix = TwoCoreIndex::build(&tri);
        ix.delete_edge(0, 1).unwrap();
        assert!((0..3).all(|u| !ix.is_special(u)));
        ix.validate().unwrap();
        assert_eq!(ix.delete_edge(0, 1), Err(ForestError::NotPresent(0, 1)));
    }

    #[test]
    fn cycle_and_tree() {
        let c5 = Graph::from_edges((0..5).map(|i| (i, (i + 1) % 5)));
        let mut ix = TwoCoreIndex::build(&c5);
        assert!((0..5).all(|u| ix.is_in_2core(u).unwrap()));
        let tree = Graph::from_edges([(0, 1), (0, 2), (2, 3), (2, 4)]);
        let mut ix = TwoCoreIndex::build(&tree);
        assert!((0..5).all(|u| !ix.is_in_2core(u).unwrap()));
    }

    #[test]
    fn dumbbell_path_interior() {
        // triangles {0,1,2} and {5,6,7} joined by path 2-3-4-5, pendant 8 on 3
        let g = Graph::from_edges([
            (0, 1),
            (1, 2),
            (0, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (5, 7),
            (3, 8),
        ]);
        let mut ix = TwoCoreIndex::build(&g);
        let got: Vec<bool> = (0..9).map(|u| ix.is_in_2core(u).unwrap()).collect();
        let want: Vec<bool> = crate::graph::oracle_core_decomposition(&g)
            .core_value
            .iter()
            .map(|&c| c >= 2)
            .collect();
        assert_eq!(got, want);
        assert!(got[3] && got[4] && !got[8]);
    }
}
