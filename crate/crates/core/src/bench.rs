//! Timing sweeps. Each row reports the median over the repetitions of the
//! per-phase means: `p` (preprocessing), `u` (one update), `q` (one query).
//! One extra untimed repetition warms up caches and the allocator.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynforest::HdtConnectivity;
use crate::graph::{EdgeOp, Graph, Vertex};
use crate::maint::{counterexample_instance, MaintainedCoreState};
use crate::twocore::TwoCoreIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchSubject {
    Twocore,
    Hdt,
    FcmBaseline,
    Counterexample,
}

impl fmt::Display for BenchSubject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchSubject::Twocore => "twocore",
            BenchSubject::Hdt => "hdt",
            BenchSubject::FcmBaseline => "fcm-baseline",
            BenchSubject::Counterexample => "counterexample",
        })
    }
}

impl FromStr for BenchSubject {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "twocore" => Ok(BenchSubject::Twocore),
            "hdt" => Ok(BenchSubject::Hdt),
            "fcm-baseline" => Ok(BenchSubject::FcmBaseline),
            "counterexample" => Ok(BenchSubject::Counterexample),
            _ => Err(format!("unknown bench subject {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub updates: usize,
    pub queries: usize,
    /// Edges per vertex of the random graphs.
    pub density: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: (10..=16).map(|e| 1 << e).collect(),
            reps: 5,
            updates: 2000,
            queries: 2000,
            density: 4,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub subject: BenchSubject,
    pub n: usize,
    pub m: usize,
    pub preprocess_ns: f64,
    pub update_ns: f64,
    pub query_ns: f64,
    /// Largest `|V*|` seen (maintenance subjects only).
    pub max_affected: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// `(update, query)` growth factor between consecutive rows.
    pub fn growth(&self) -> Vec<(f64, f64)> {
        self.rows
            .windows(2)
            .map(|w| {
                (
                    w[1].update_ns / w[0].update_ns,
                    w[1].query_ns / w[0].query_ns,
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "subject\tn\tm\tp_ns\tu_ns\tq_ns\tu_growth\tq_growth\tmax_affected"
        )?;
        let growth = self.growth();
        for (i, r) in self.rows.iter().enumerate() {
            let (gu, gq) = match i {
                0 => ("-".to_string(), "-".to_string()),
                _ => (ratio(growth[i - 1].0), ratio(growth[i - 1].1)),
            };
            let aff = r.max_affected.map_or("-".to_string(), |a| a.to_string());
            writeln!(
                f,
                "{}\t{}\t{}\t{:.0}\t{:.1}\t{:.1}\t{gu}\t{gq}\t{aff}",
                r.subject, r.n, r.m, r.preprocess_ns, r.update_ns, r.query_ns
            )?;
        }
        Ok(())
    }
}

fn ratio(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.2}")
    } else {
        "-".to_string()
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    while g.num_edges() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.has_edge(u, v) {
            g.insert_edge(u, v).expect("checked");
        }
    }
    g
}

/// Alternating delete/insert ops that keep the edge count fixed.
fn churn(rng: &mut ChaCha8Rng, g: &Graph, count: usize) -> Vec<EdgeOp> {
    let n = g.num_vertices();
    let mut g = g.clone();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut ops = Vec::with_capacity(count);
    while ops.len() < count {
        if ops.len() % 2 == 0 {
            let (u, v) = edges.swap_remove(rng.gen_range(0..edges.len()));
            g.delete_edge(u, v).expect("present");
            ops.push(EdgeOp::Delete(u, v));
        } else {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && !g.has_edge(u, v) {
                g.insert_edge(u, v).expect("checked");
                edges.push((u, v));
                ops.push(EdgeOp::Insert(u, v));
            }
        }
    }
    ops
}

struct Sample {
    p: f64,
    u: f64,
    q: f64,
    m: usize,
    affected: Option<usize>,
}

fn per_op(start: Instant, count: usize) -> f64 {
    start.elapsed().as_nanos() as f64 / count.max(1) as f64
}

fn sample(subject: BenchSubject, n: usize, cfg: &BenchConfig, rng: &mut ChaCha8Rng) -> Sample {
    match subject {
        BenchSubject::Twocore => {
            let g = random_graph(rng, n, cfg.density * n);
            let ops = churn(rng, &g, cfg.updates);
            let qs: Vec<Vertex> = (0..cfg.queries).map(|_| rng.gen_range(0..n)).collect();
            let t = Instant::now();
            let mut ix = TwoCoreIndex::build(&g);
            let p = t.elapsed().as_nanos() as f64;
            let t = Instant::now();
            for op in &ops {
                match *op {
                    EdgeOp::Insert(u, v) => ix.insert_edge(u, v).expect("legal"),
                    EdgeOp::Delete(u, v) => ix.delete_edge(u, v).expect("legal"),
                }
            }
            let u = per_op(t, ops.len());
            let t = Instant::now();
            let mut hits = 0;
            for &x in &qs {
                hits += ix.is_in_2core(x).expect("vertex exists") as usize;
            }
            let q = per_op(t, qs.len());
            std::hint::black_box(hits);
            Sample {
                p,
                u,
                q,
                m: g.num_edges(),
                affected: None,
            }
        }
        BenchSubject::Hdt => {
            let g = random_graph(rng, n, cfg.density * n);
            let ops = churn(rng, &g, cfg.updates);
            let qs: Vec<(Vertex, Vertex)> = (0..cfg.queries)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            let t = Instant::now();
            let mut h = HdtConnectivity::new(n);
            for (a, b) in g.edges() {
                h.insert_edge(a, b).expect("simple graph");
            }
            let p = t.elapsed().as_nanos() as f64;
            let t = Instant::now();
            for op in &ops {
                match *op {
                    EdgeOp::Insert(a, b) => h.insert_edge(a, b).map(|_| ()).expect("legal"),
                    EdgeOp::Delete(a, b) => h.delete_edge(a, b).map(|_| ()).expect("legal"),
                }
            }
            let u = per_op(t, ops.len());
            let t = Instant::now();
            let hits = qs.iter().filter(|&&(a, b)| h.connected(a, b)).count();
            let q = per_op(t, qs.len());
            std::hint::black_box(hits);
            Sample {
                p,
                u,
                q,
                m: g.num_edges(),
                affected: None,
            }
        }
        BenchSubject::FcmBaseline => {
            let g = random_graph(rng, n, cfg.density * n);
            // every update is a full recompute, so fewer of them
            let ops = churn(rng, &g, cfg.updates.min(50));
            let m = g.num_edges();
            let t = Instant::now();
            let mut st = MaintainedCoreState::new(g);
            let p = t.elapsed().as_nanos() as f64;
            let mut affected = 0;
            let t = Instant::now();
            for &op in &ops {
                affected = affected.max(st.apply(op, &[]).expect("legal").affected.len());
            }
            let u = per_op(t, ops.len());
            let t = Instant::now();
            let s: usize = (0..cfg.queries).map(|i| st.core_value[i % n]).sum();
            let q = per_op(t, cfg.queries);
            std::hint::black_box(s);
            Sample {
                p,
                u,
                q,
                m,
                affected: Some(affected),
            }
        }
        BenchSubject::Counterexample => {
            let ce = counterexample_instance(n.max(8)).expect("n ≥ 8");
            let m = ce.graph.num_edges();
            let t = Instant::now();
            let mut st = MaintainedCoreState::new(ce.graph.clone());
            let p = t.elapsed().as_nanos() as f64;
            let pair = [
                EdgeOp::Delete(ce.e1.0, ce.e1.1),
                EdgeOp::Insert(ce.e2.0, ce.e2.1),
            ];
            let undo = [
                EdgeOp::Delete(ce.e2.0, ce.e2.1),
                EdgeOp::Insert(ce.e1.0, ce.e1.1),
            ];
            let rounds = (cfg.updates / 2).clamp(1, 20);
            let mut affected = 0;
            let mut total = 0u128;
            for _ in 0..rounds {
                let t = Instant::now();
                for op in pair {
                    affected = affected.max(st.apply(op, &[]).expect("legal").affected.len());
                }
                total += t.elapsed().as_nanos();
                for op in undo {
                    st.apply(op, &[]).expect("legal");
                }
            }
            let u = total as f64 / (2 * rounds) as f64;
            Sample {
                p,
                u,
                q: 0.0,
                m,
                affected: Some(affected),
            }
        }
    }
}

pub fn run_bench(subject: BenchSubject, cfg: &BenchConfig) -> BenchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let _ = sample(subject, n, cfg, &mut rng);
        let samples: Vec<Sample> = (0..cfg.reps.max(1))
            .map(|_| sample(subject, n, cfg, &mut rng))
            .collect();
        rows.push(BenchRow {
            subject,
            n,
            m: samples[0].m,
            preprocess_ns: median(samples.iter().map(|s| s.p).collect()),
            update_ns: median(samples.iter().map(|s| s.u).collect()),
            query_ns: median(samples.iter().map(|s| s.q).collect()),
            max_affected: samples.iter().filter_map(|s| s.affected).max(),
        });
    }
    BenchReport { rows }
}
