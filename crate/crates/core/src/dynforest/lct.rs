//! Link-cut forest (Sleator–Tarjan) with evert and nearest common ancestor.

use std::collections::HashSet;

use super::ForestError;
use crate::graph::{normalize, Edge, Vertex};

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct LinkCutForest {
    left: Vec<u32>,
    right: Vec<u32>,
    /// splay parent, or path-parent when `x` is a splay root
    parent: Vec<u32>,
    flip: Vec<bool>,
    edges: HashSet<Edge>,
}

impl LinkCutForest {
    pub fn new(n: usize) -> Self {
        LinkCutForest {
            left: vec![NIL; n],
            right: vec![NIL; n],
            parent: vec![NIL; n],
            flip: vec![false; n],
            edges: HashSet::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.left.len()
    }

    fn is_splay_root(&self, x: u32) -> bool {
        let p = self.parent[x as usize];
        p == NIL || (self.left[p as usize] != x && self.right[p as usize] != x)
    }

    fn push(&mut self, x: u32) {
        let xi = x as usize;
        if self.flip[xi] {
            self.flip[xi] = false;
            let (l, r) = (self.left[xi], self.right[xi]);
            self.left[xi] = r;
            self.right[xi] = l;
            for c in [l, r] {
                if c != NIL {
                    self.flip[c as usize] ^= true;
                }
            }
        }
    }

    fn rotate(&mut self, x: u32) {
        let p = self.parent[x as usize];
        let g = self.parent[p as usize];
        let p_was_root = self.is_splay_root(p);
        if self.left[p as usize] == x {
            let b = self.right[x as usize];
            self.left[p as usize] = b;
            if b != NIL {
                self.parent[b as usize] = p;
            }
            self.right[x as usize] = p;
        } else {
            let b = self.left[x as usize];
            self.right[p as usize] = b;
            if b != NIL {
                self.parent[b as usize] = p;
            }
            self.left[x as usize] = p;
        }
        self.parent[p as usize] = x;
        self.parent[x as usize] = g;
        if !p_was_root {
            if self.left[g as usize] == p {
                self.left[g as usize] = x;
            } else {
                self.right[g as usize] = x;
            }
        }
    }

    fn splay(&mut self, x: u32) {
        // push pending flips top-down along the splay path
        let mut stack = vec![x];
        let mut y = x;
        while !self.is_splay_root(y) {
            y = self.parent[y as usize];
            stack.push(y);
        }
        while let Some(z) = stack.pop() {
            self.push(z);
        }
        while !self.is_splay_root(x) {
            let p = self.parent[x as usize];
            if !self.is_splay_root(p) {
                let g = self.parent[p as usize];
                let zigzig = (self.left[g as usize] == p) == (self.left[p as usize] == x);
                if zigzig {
                    self.rotate(p);
                } else {
                    self.rotate(x);
                }
            }
            self.rotate(x);
        }
    }

    /// Makes the root-to-`x` path preferred. Returns the last node at which
    /// the access switched paths, which is the NCA when called after
    /// accessing another node.
    fn access(&mut self, x: u32) -> u32 {
        let mut last = NIL;
        let mut y = x;
        while y != NIL {
            self.splay(y);
            self.right[y as usize] = last;
            last = y;
            y = self.parent[y as usize];
        }
        self.splay(x);
        last
    }

    fn find_root_node(&mut self, x: u32) -> u32 {
        self.access(x);
        let mut r = x;
        loop {
            self.push(r);
            let l = self.left[r as usize];
            if l == NIL {
                break;
            }
            r = l;
        }
        self.splay(r);
        r
    }

    fn check(&self, u: Vertex) -> Result<(), ForestError> {
        if u < self.num_vertices() {
            Ok(())
        } else {
            Err(ForestError::UnknownVertex(u))
        }
    }

    pub fn find_root(&mut self, u: Vertex) -> Vertex {
        self.find_root_node(u as u32) as Vertex
    }

    pub fn connected(&mut self, u: Vertex, v: Vertex) -> bool {
        u == v || self.find_root_node(u as u32) == self.find_root_node(v as u32)
    }

    /// Makes `u` the root of its tree.
    pub fn evert(&mut self, u: Vertex) -> Result<(), ForestError> {
        self.check(u)?;
        let x = u as u32;
        self.access(x);
        self.flip[u] ^= true;
        self.push(x);
        Ok(())
    }

    pub fn link(&mut self, u: Vertex, v: Vertex) -> Result<(), ForestError> {
        self.check(u)?;
        self.check(v)?;
        if self.connected(u, v) {
            return Err(ForestError::SameTree(u, v));
        }
        self.evert(u)?;
        self.parent[u] = v as u32;
        self.edges.insert(normalize(u, v));
        Ok(())
    }

    pub fn cut(&mut self, u: Vertex, v: Vertex) -> Result<(), ForestError> {
        if !self.edges.remove(&normalize(u, v)) {
            return Err(ForestError::NotATreeEdge(u, v));
        }
        self.evert(u)?;
        self.access(v as u32);
        // v's splay tree is now exactly the path u-v with u on the left
        let l = self.left[v];
        debug_assert_eq!(l, u as u32);
        self.left[v] = NIL;
        self.parent[l as usize] = NIL;
        Ok(())
    }

    /// Lowest common ancestor of `v` and `w` under the current roots, or
    /// `None` when they lie in different trees.
    pub fn nca(&mut self, v: Vertex, w: Vertex) -> Option<Vertex> {
        if v >= self.num_vertices() || w >= self.num_vertices() {
            return None;
        }
        if v == w {
            return Some(v);
        }
        if !self.connected(v, w) {
            return None;
        }
        self.access(v as u32);
        Some(self.access(w as u32) as Vertex)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&normalize(u, v))
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<_> = self.edges.iter().copied().collect();
        e.sort_unstable();
        e
    }
}
