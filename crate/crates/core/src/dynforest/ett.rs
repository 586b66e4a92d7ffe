//! Euler tour forest over a fixed vertex universe.
//!
//! Each tree is stored as its Euler tour: one self-loop arc per vertex and
//! two arcs per tree edge, kept in a treap ordered by tour position. Every
//! treap node aggregates, per channel, how many flagged self-loops lie in its
//! subtree. Channel 0 is the public "mark"; channel 1 is used by HDT.

use std::collections::HashMap;

use super::ForestError;
use crate::graph::Vertex;

const NIL: u32 = u32::MAX;
pub(crate) const CHANNELS: usize = 2;

#[derive(Debug, Clone)]
struct Node {
    left: u32,
    right: u32,
    parent: u32,
    priority: u32,
    size: u32,
    from: u32,
    to: u32,
    own: [bool; CHANNELS],
    agg: [u32; CHANNELS],
}

#[derive(Debug, Clone)]
pub struct EulerTourForest {
    nodes: Vec<Node>,
    free: Vec<u32>,
    /// directed tree arc -> node
    arcs: HashMap<(u32, u32), u32>,
    counts: Vec<[usize; CHANNELS]>,
    rng: u64,
}

impl EulerTourForest {
    /// A forest of `n` singleton trees; vertex `u` owns node `u`.
    pub fn new(n: usize) -> Self {
        let mut f = EulerTourForest {
            nodes: Vec::with_capacity(n),
            free: Vec::new(),
            arcs: HashMap::new(),
            counts: vec![[0; CHANNELS]; n],
            rng: 0x9e37_79b9_7f4a_7c15,
        };
        for u in 0..n as u32 {
            f.alloc(u, u);
        }
        f
    }

    pub fn num_vertices(&self) -> usize {
        self.counts.len()
    }

    fn next_priority(&mut self) -> u32 {
        // xorshift64*
        self.rng ^= self.rng >> 12;
        self.rng ^= self.rng << 25;
        self.rng ^= self.rng >> 27;
        (self.rng.wrapping_mul(0x2545_f491_4f6c_dd1d) >> 32) as u32
    }

    fn alloc(&mut self, from: u32, to: u32) -> u32 {
        let node = Node {
            left: NIL,
            right: NIL,
            parent: NIL,
            priority: self.next_priority(),
            size: 1,
            from,
            to,
            own: [false; CHANNELS],
            agg: [0; CHANNELS],
        };
        if let Some(id) = self.free.pop() {
            self.nodes[id as usize] = node;
            id
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as u32
        }
    }

    fn check(&self, u: Vertex) -> Result<(), ForestError> {
        if u < self.num_vertices() {
            Ok(())
        } else {
            Err(ForestError::UnknownVertex(u))
        }
    }

    #[inline]
    fn size(&self, x: u32) -> u32 {
        if x == NIL {
            0
        } else {
            self.nodes[x as usize].size
        }
    }

    #[inline]
    fn agg(&self, x: u32, ch: usize) -> u32 {
        if x == NIL {
            0
        } else {
            self.nodes[x as usize].agg[ch]
        }
    }

    fn update(&mut self, x: u32) {
        let (l, r) = (self.nodes[x as usize].left, self.nodes[x as usize].right);
        let size = 1 + self.size(l) + self.size(r);
        let mut agg = [0; CHANNELS];
        for (ch, a) in agg.iter_mut().enumerate() {
            *a = self.nodes[x as usize].own[ch] as u32 + self.agg(l, ch) + self.agg(r, ch);
        }
        let n = &mut self.nodes[x as usize];
        n.size = size;
        n.agg = agg;
    }

    fn set_parent(&mut self, x: u32, p: u32) {
        if x != NIL {
            self.nodes[x as usize].parent = p;
        }
    }

    fn root_of(&self, mut x: u32) -> u32 {
        while self.nodes[x as usize].parent != NIL {
            x = self.nodes[x as usize].parent;
        }
        x
    }

    /// Zero-based position of `x` in its tour.
    fn position(&self, mut x: u32) -> u32 {
        let mut idx = self.size(self.nodes[x as usize].left);
        loop {
            let p = self.nodes[x as usize].parent;
            if p == NIL {
                return idx;
            }
            if self.nodes[p as usize].right == x {
                idx += self.size(self.nodes[p as usize].left) + 1;
            }
            x = p;
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].priority > self.nodes[b as usize].priority {
            let r = self.merge(self.nodes[a as usize].right, b);
            self.nodes[a as usize].right = r;
            self.set_parent(r, a);
            self.update(a);
            a
        } else {
            let l = self.merge(a, self.nodes[b as usize].left);
            self.nodes[b as usize].left = l;
            self.set_parent(l, b);
            self.update(b);
            b
        }
    }

    /// Splits off the first `k` nodes. Both returned roots have no parent.
    fn split(&mut self, t: u32, k: u32) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        let left = self.nodes[t as usize].left;
        let sl = self.size(left);
        if sl >= k {
            let (a, b) = self.split(left, k);
            self.nodes[t as usize].left = b;
            self.set_parent(b, t);
            self.update(t);
            self.set_parent(a, NIL);
            self.set_parent(t, NIL);
            (a, t)
        } else {
            let (a, b) = self.split(self.nodes[t as usize].right, k - sl - 1);
            self.nodes[t as usize].right = a;
            self.set_parent(a, t);
            self.update(t);
            self.set_parent(b, NIL);
            self.set_parent(t, NIL);
            (t, b)
        }
    }

    fn join(&mut self, a: u32, b: u32) -> u32 {
        let r = self.merge(a, b);
        self.set_parent(r, NIL);
        r
    }

    /// Rotates the tour of `u`'s tree so that `u`'s self-loop comes first.
    /// Returns the new treap root.
    fn reroot_node(&mut self, u: u32) -> u32 {
        let root = self.root_of(u);
        let pos = self.position(u);
        if pos == 0 {
            return root;
        }
        let (a, b) = self.split(root, pos);
        self.join(b, a)
    }

    pub fn reroot(&mut self, u: Vertex) -> Result<(), ForestError> {
        self.check(u)?;
        self.reroot_node(u as u32);
        Ok(())
    }

    pub fn connected(&self, u: Vertex, v: Vertex) -> bool {
        u < self.num_vertices()
            && v < self.num_vertices()
            && self.root_of(u as u32) == self.root_of(v as u32)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains_key(&(u as u32, v as u32))
    }

    /// Number of vertices in `u`'s tree.
    pub fn tree_size(&self, u: Vertex) -> usize {
        let s = self.size(self.root_of(u as u32)) as usize;
        s.div_ceil(3)
    }

    pub fn link(&mut self, u: Vertex, v: Vertex) -> Result<(), ForestError> {
        self.check(u)?;
        self.check(v)?;
        if self.connected(u, v) {
            return Err(ForestError::SameTree(u, v));
        }
        let (u32_, v32) = (u as u32, v as u32);
        let tu = self.reroot_node(u32_);
        let tv = self.reroot_node(v32);
        let uv = self.alloc(u32_, v32);
        let vu = self.alloc(v32, u32_);
        self.arcs.insert((u32_, v32), uv);
        self.arcs.insert((v32, u32_), vu);
        let t = self.join(tu, uv);
        let t = self.join(t, tv);
        self.join(t, vu);
        Ok(())
    }

    pub fn cut(&mut self, u: Vertex, v: Vertex) -> Result<(), ForestError> {
        let (u32_, v32) = (u as u32, v as u32);
        let (Some(&a), Some(&b)) = (self.arcs.get(&(u32_, v32)), self.arcs.get(&(v32, u32_)))
        else {
            return Err(ForestError::NotATreeEdge(u, v));
        };
        let (pa, pb) = (self.position(a), self.position(b));
        let (first, second, p1, p2) = if pa < pb {
            (a, b, pa, pb)
        } else {
            (b, a, pb, pa)
        };
        let root = self.root_of(first);
        let (left, rest) = self.split(root, p1);
        let (f, rest) = self.split(rest, 1);
        debug_assert_eq!(f, first);
        let (middle, rest) = self.split(rest, p2 - p1 - 1);
        let (s, right) = self.split(rest, 1);
        debug_assert_eq!(s, second);
        self.join(left, right);
        let _ = middle;
        self.arcs.remove(&(u32_, v32));
        self.arcs.remove(&(v32, u32_));
        self.free.push(a);
        self.free.push(b);
        Ok(())
    }

    pub(crate) fn set_count(&mut self, ch: usize, u: Vertex, count: usize) {
        let was = self.counts[u][ch] > 0;
        self.counts[u][ch] = count;
        if was == (count > 0) {
            return;
        }
        let mut x = u as u32;
        self.nodes[x as usize].own[ch] = count > 0;
        while x != NIL {
            self.update(x);
            x = self.nodes[x as usize].parent;
        }
    }

    pub(crate) fn count(&self, ch: usize, u: Vertex) -> usize {
        self.counts[u][ch]
    }

    /// Number of flagged vertices in `u`'s tree on channel `ch`.
    pub(crate) fn tree_flagged(&self, ch: usize, u: Vertex) -> usize {
        self.agg(self.root_of(u as u32), ch) as usize
    }

    fn descend(&self, ch: usize, u: Vertex, first: bool) -> Option<Vertex> {
        let mut x = self.root_of(u as u32);
        if self.agg(x, ch) == 0 {
            return None;
        }
        loop {
            let n = &self.nodes[x as usize];
            let (near, far) = if first {
                (n.left, n.right)
            } else {
                (n.right, n.left)
            };
            if self.agg(near, ch) > 0 {
                x = near;
            } else if n.own[ch] {
                return Some(n.from as Vertex);
            } else {
                x = far;
            }
        }
    }

    pub(crate) fn first_flagged(&self, ch: usize, u: Vertex) -> Option<Vertex> {
        self.descend(ch, u, true)
    }

    pub fn set_mark(&mut self, u: Vertex, count: usize) -> Result<(), ForestError> {
        self.check(u)?;
        self.set_count(0, u, count);
        Ok(())
    }

    pub fn mark(&self, u: Vertex) -> usize {
        self.counts[u][0]
    }

    /// Number of marked vertices in `u`'s tree.
    pub fn marked_in_tree(&self, u: Vertex) -> usize {
        self.tree_flagged(0, u)
    }

    /// First marked vertex in tour order of `u`'s tree.
    pub fn first_marked(&self, u: Vertex) -> Option<Vertex> {
        self.descend(0, u, true)
    }

    /// Last marked vertex in tour order of `u`'s tree.
    pub fn last_marked(&self, u: Vertex) -> Option<Vertex> {
        self.descend(0, u, false)
    }

    fn collect(&self, x: u32, out: &mut Vec<(Vertex, Vertex)>) {
        if x == NIL {
            return;
        }
        let n = &self.nodes[x as usize];
        self.collect(n.left, out);
        out.push((n.from as Vertex, n.to as Vertex));
        self.collect(n.right, out);
    }

    /// Materialized tour of `u`'s tree.
    pub fn tour(&self, u: Vertex) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        self.collect(self.root_of(u as u32), &mut out);
        out
    }

    /// Debug dump: one tour per tree, ordered by smallest vertex.
    pub fn tours(&self) -> Vec<Vec<(Vertex, Vertex)>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for u in 0..self.num_vertices() {
            let r = self.root_of(u as u32);
            if seen.insert(r) {
                out.push(self.tour(u));
            }
        }
        out
    }

    /// Undirected tree edges, each once with the smaller endpoint first.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e: Vec<_> = self
            .arcs
            .keys()
            .filter(|(a, b)| a < b)
            .map(|&(a, b)| (a as Vertex, b as Vertex))
            .collect();
        e.sort_unstable();
        e
    }

    /// Full structural check: treap shape, sizes, aggregates, and tour
    /// validity of every tree. Returns a description of the first problem.
    pub fn validate(&self) -> Result<(), String> {
        let free: std::collections::HashSet<u32> = self.free.iter().copied().collect();
        for (i, n) in self.nodes.iter().enumerate() {
            if free.contains(&(i as u32)) {
                continue;
            }
            let i = i as u32;
            for c in [n.left, n.right] {
                if c != NIL && self.nodes[c as usize].parent != i {
                    return Err(format!("node {i}: child {c} has wrong parent"));
                }
            }
            if n.size != 1 + self.size(n.left) + self.size(n.right) {
                return Err(format!("node {i}: stale size"));
            }
            for ch in 0..CHANNELS {
                if n.agg[ch] != n.own[ch] as u32 + self.agg(n.left, ch) + self.agg(n.right, ch) {
                    return Err(format!("node {i}: stale aggregate on channel {ch}"));
                }
            }
            if n.from == n.to {
                for ch in 0..CHANNELS {
                    if n.own[ch] != (self.counts[n.from as usize][ch] > 0) {
                        return Err(format!("vertex {}: flag disagrees with count", n.from));
                    }
                }
            }
        }
        let mut covered = vec![false; self.num_vertices()];
        for tour in self.tours() {
            check_tour(&tour)?;
            for &(a, b) in &tour {
                if a == b {
                    covered[a] = true;
                }
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err("some vertex has no self-loop in any tour".into());
        }
        Ok(())
    }
}

/// Checks that `tour` is a valid Euler tour of a tree: consecutive arcs share
/// an endpoint, it starts and ends at the same vertex (the root), each vertex's self-loop occurs
/// once and each tree edge once per direction, and the edges form a tree.
pub fn check_tour(tour: &[(Vertex, Vertex)]) -> Result<(), String> {
    let Some(&(root, _)) = tour.first() else {
        return Err("empty tour".into());
    };
    if tour.last().map(|a| a.1) != Some(root) {
        return Err("tour does not end at the root".into());
    }
    for w in tour.windows(2) {
        if w[0].1 != w[1].0 {
            return Err(format!(
                "arcs {:?} and {:?} do not share an endpoint",
                w[0], w[1]
            ));
        }
    }
    let mut loops = std::collections::HashSet::new();
    let mut arcs = std::collections::HashSet::new();
    for &(a, b) in tour {
        if a == b {
            if !loops.insert(a) {
                return Err(format!("self-loop of {a} repeated"));
            }
        } else if !arcs.insert((a, b)) {
            return Err(format!("arc ({a}, {b}) repeated"));
        }
    }
    for &(a, b) in &arcs {
        if !arcs.contains(&(b, a)) {
            return Err(format!("arc ({a}, {b}) lacks its reverse"));
        }
        if !loops.contains(&a) {
            return Err(format!("vertex {a} lacks its self-loop"));
        }
    }
    if arcs.len() / 2 + 1 != loops.len() {
        return Err("edge count is not vertex count minus one".into());
    }
    Ok(())
}
