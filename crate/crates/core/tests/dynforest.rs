use std::collections::{BTreeSet, VecDeque};

use dyncore::dynforest::{check_tour, EulerTourForest, HdtConnectivity, LinkCutForest};
use dyncore::graph::{normalize, Graph};
use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Component labels by BFS over an explicit edge set.
fn components(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if label[y] == usize::MAX {
                    label[y] = s;
                    q.push_back(y);
                }
            }
        }
    }
    label
}

/// Parent pointers of the tree containing `root`, rooted there.
fn parents(n: usize, edges: &BTreeSet<(usize, usize)>, root: usize) -> Vec<Option<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut par = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut q = VecDeque::from([root]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                par[y] = Some(x);
                q.push_back(y);
            }
        }
    }
    par
}

fn naive_lca(par: &[Option<usize>], a: usize, b: usize) -> usize {
    let mut anc = BTreeSet::new();
    let mut x = Some(a);
    while let Some(y) = x {
        anc.insert(y);
        x = par[y];
    }
    let mut x = b;
    loop {
        if anc.contains(&x) {
            return x;
        }
        x = par[x].expect("same tree");
    }
}

#[test]
fn ett_and_lct_random_link_cut_trace() {
    let n = 40;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ett = EulerTourForest::new(n);
    let mut lct = LinkCutForest::new(n);
    let mut edges = BTreeSet::new();
    for step in 0..3000 {
        if rng.gen_bool(0.6) || edges.is_empty() {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let same = u == v || ett.connected(u, v);
            assert_eq!(same, lct.connected(u, v));
            if same {
                assert!(u == v || ett.link(u, v).is_err());
                continue;
            }
            ett.link(u, v).unwrap();
            lct.link(u, v).unwrap();
            edges.insert(normalize(u, v));
        } else {
            let &(u, v) = edges.iter().choose(&mut rng).unwrap();
            edges.remove(&(u, v));
            ett.cut(v, u).unwrap();
            lct.cut(u, v).unwrap();
        }
        if step % 7 == 0 {
            ett.reroot(rng.gen_range(0..n)).unwrap();
        }
        let label = components(n, &edges);
        for _ in 0..10 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            assert_eq!(ett.connected(a, b), label[a] == label[b]);
            assert_eq!(lct.connected(a, b), label[a] == label[b]);
        }
        if step % 50 == 0 {
            ett.validate().unwrap();
            for t in ett.tours() {
                check_tour(&t).unwrap();
            }
        }
    }
    assert_eq!(ett.edges(), edges.iter().copied().collect::<Vec<_>>());
    assert_eq!(lct.edges(), edges.iter().copied().collect::<Vec<_>>());
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> BTreeSet<(usize, usize)> {
    (1..n).map(|v| normalize(rng.gen_range(0..v), v)).collect()
}

#[test]
fn ett_reroots_preserve_validity() {
    let n = 30;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut ett = EulerTourForest::new(n);
    for (a, b) in random_tree(n, &mut rng) {
        ett.link(a, b).unwrap();
    }
    for _ in 0..100 {
        let r = rng.gen_range(0..n);
        ett.reroot(r).unwrap();
        let t = ett.tour(0);
        assert_eq!(t[0], (r, r));
        check_tour(&t).unwrap();
        assert_eq!(t.iter().filter(|a| a.0 == a.1).count(), n);
    }
}

#[test]
fn ett_first_last_marked_matches_scan() {
    let n = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ett = EulerTourForest::new(n);
    for (a, b) in random_tree(n, &mut rng) {
        ett.link(a, b).unwrap();
    }
    let mut marks = vec![0usize; n];
    for _ in 0..500 {
        let u = rng.gen_range(0..n);
        let c = if rng.gen_bool(0.7) {
            0
        } else {
            rng.gen_range(1..4)
        };
        marks[u] = c;
        ett.set_mark(u, c).unwrap();
        ett.reroot(rng.gen_range(0..n)).unwrap();
        let tour = ett.tour(0);
        let marked: Vec<usize> = tour
            .iter()
            .filter(|a| a.0 == a.1 && marks[a.0] > 0)
            .map(|a| a.0)
            .collect();
        assert_eq!(ett.first_marked(0), marked.first().copied());
        assert_eq!(ett.last_marked(0), marked.last().copied());
        assert_eq!(
            ett.marked_in_tree(0),
            marks.iter().filter(|&&m| m > 0).count()
        );
    }
    ett.validate().unwrap();
}

#[test]
fn lct_nca_matches_parent_walk() {
    let n = 60;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let edges = random_tree(n, &mut rng);
    let mut lct = LinkCutForest::new(n);
    for &(a, b) in &edges {
        lct.link(a, b).unwrap();
    }
    for round in 0..10 {
        let root = rng.gen_range(0..n);
        lct.evert(root).unwrap();
        let par = parents(n, &edges, root);
        for _ in 0..100 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            assert_eq!(lct.nca(a, b), Some(naive_lca(&par, a, b)), "round {round}");
        }
    }
}

fn hdt_trace(n: usize, ops: usize, seed: u64, check_every: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = HdtConnectivity::new(n);
    let mut g = Graph::with_vertices(n);
    let mut present: Vec<(usize, usize)> = Vec::new();
    for step in 0..ops {
        if rng.gen_bool(0.55) || present.is_empty() {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u == v || g.has_edge(u, v) {
                continue;
            }
            g.insert_edge(u, v).unwrap();
            present.push(normalize(u, v));
            h.insert_edge(u, v).unwrap();
        } else {
            let i = rng.gen_range(0..present.len());
            let (u, v) = present.swap_remove(i);
            g.delete_edge(u, v).unwrap();
            h.delete_edge(v, u).unwrap();
        }
        if step % check_every == 0 {
            let edges: BTreeSet<_> = g.edges().collect();
            let label = components(n, &edges);
            for _ in 0..20 {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                assert_eq!(h.connected(a, b), label[a] == label[b], "step {step}");
            }
            let forest: BTreeSet<_> = h.spanning_forest().into_iter().collect();
            assert!(forest.is_subset(&edges));
            assert_eq!(
                components(n, &forest),
                label,
                "forest must span, step {step}"
            );
        }
    }
    h.validate().unwrap();
}

#[test]
fn hdt_small_dense_trace_validates() {
    let n = 24;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut h = HdtConnectivity::new(n);
    let mut g = Graph::with_vertices(n);
    for step in 0..3000 {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v {
            continue;
        }
        if g.has_edge(u, v) {
            g.delete_edge(u, v).unwrap();
            h.delete_edge(u, v).unwrap();
        } else {
            g.insert_edge(u, v).unwrap();
            h.insert_edge(u, v).unwrap();
        }
        if step % 25 == 0 {
            h.validate().unwrap();
        }
    }
}

#[test]
fn hdt_random_trace_matches_bfs() {
    hdt_trace(500, 10_000, 2024, 100);
}
