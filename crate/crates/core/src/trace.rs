//! Line-oriented update/query traces.
//!
//! ```text
//! # comment
//! twocore 5
//! + 0 1
//! - 0 1
//! ? 3
//! ```
//!
//! The header names the object kind and its size (vertices, or gates for a
//! circuit). Graph kinds take `+ u v` and `- u v`; `twocore` and `core`
//! query a vertex with `? u`, `truss` an edge with `?e u v`. Circuit traces
//! take `+w a b`, `-w a b` and `?`.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::circuit::WireOp;
use crate::graph::{static_core_decomposition, EdgeOp, Graph, Vertex};
use crate::twocore::TwoCoreIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("op {index}: {msg}")]
    Illegal { index: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Twocore,
    Core,
    Truss,
    Circuit,
}

impl fmt::Display for TraceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceKind::Twocore => "twocore",
            TraceKind::Core => "core",
            TraceKind::Truss => "truss",
            TraceKind::Circuit => "circuit",
        })
    }
}

impl FromStr for TraceKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "twocore" => Ok(TraceKind::Twocore),
            "core" => Ok(TraceKind::Core),
            "truss" => Ok(TraceKind::Truss),
            "circuit" => Ok(TraceKind::Circuit),
            _ => Err(format!("unknown trace kind {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOp {
    Edge(EdgeOp),
    Vertex(Vertex),
    EdgeQuery(Vertex, Vertex),
    Wire(WireOp),
    Value,
}

impl fmt::Display for TraceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceOp::Edge(op) => write!(f, "{op}"),
            TraceOp::Vertex(u) => write!(f, "? {u}"),
            TraceOp::EdgeQuery(u, v) => write!(f, "?e {u} {v}"),
            TraceOp::Wire(WireOp::Insert(a, b)) => write!(f, "+w {a} {b}"),
            TraceOp::Wire(WireOp::Delete(a, b)) => write!(f, "-w {a} {b}"),
            TraceOp::Value => f.write_str("?"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFile {
    pub kind: TraceKind,
    pub n: usize,
    pub ops: Vec<TraceOp>,
}

impl TraceFile {
    pub fn new(kind: TraceKind, n: usize) -> Self {
        TraceFile {
            kind,
            n,
            ops: Vec::new(),
        }
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self, TraceError> {
        let mut trace: Option<TraceFile> = None;
        for (no, line) in reader.lines().enumerate() {
            let err = |msg: String| TraceError::Parse { line: no + 1, msg };
            let line = line.map_err(|e| err(e.to_string()))?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let f: Vec<&str> = body.split_whitespace().collect();
            let Some(t) = trace.as_mut() else {
                if f.len() != 2 {
                    return Err(err("expected header `<kind> <n>`".into()));
                }
                let kind = f[0].parse().map_err(err)?;
                let n = f[1]
                    .parse()
                    .map_err(|_| err(format!("bad size {:?}", f[1])))?;
                trace = Some(TraceFile::new(kind, n));
                continue;
            };
            let num = |i: usize| -> Result<usize, TraceError> {
                f.get(i)
                    .ok_or_else(|| err("missing operand".into()))?
                    .parse()
                    .map_err(|_| err(format!("bad operand {:?}", f[i])))
            };
            let arity = match f[0] {
                "+" | "-" | "?e" | "+w" | "-w" => 3,
                "?" if f.len() == 1 => 1,
                "?" => 2,
                other => return Err(err(format!("unknown op {other:?}"))),
            };
            if f.len() != arity {
                return Err(err(format!("`{}` takes {} operands", f[0], arity - 1)));
            }
            let op = match f[0] {
                "+" => TraceOp::Edge(EdgeOp::Insert(num(1)?, num(2)?)),
                "-" => TraceOp::Edge(EdgeOp::Delete(num(1)?, num(2)?)),
                "?e" => TraceOp::EdgeQuery(num(1)?, num(2)?),
                "+w" => TraceOp::Wire(WireOp::Insert(num(1)?, num(2)?)),
                "-w" => TraceOp::Wire(WireOp::Delete(num(1)?, num(2)?)),
                _ if arity == 1 => TraceOp::Value,
                _ => TraceOp::Vertex(num(1)?),
            };
            t.ops.push(op);
        }
        let t = trace.ok_or(TraceError::Parse {
            line: 0,
            msg: "empty trace".into(),
        })?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.kind, self.n);
        for op in &self.ops {
            s.push_str(&op.to_string());
            s.push('\n');
        }
        s
    }

    /// Every op is of a form the kind accepts and names ids below `n`.
    pub fn validate(&self) -> Result<(), TraceError> {
        for (index, op) in self.ops.iter().enumerate() {
            let bad = |msg: String| Err(TraceError::Illegal { index, msg });
            let ids: Vec<usize> = match (self.kind, *op) {
                (TraceKind::Circuit, TraceOp::Wire(w)) => {
                    let (a, b) = w.endpoints();
                    vec![a, b]
                }
                (TraceKind::Circuit, TraceOp::Value) => vec![],
                (TraceKind::Circuit, _) => return bad(format!("`{op}` in a circuit trace")),
                (_, TraceOp::Edge(e)) => {
                    let (u, v) = e.endpoints();
                    if u == v {
                        return bad(format!("self-loop `{op}`"));
                    }
                    vec![u, v]
                }
                (TraceKind::Twocore | TraceKind::Core, TraceOp::Vertex(u)) => vec![u],
                (TraceKind::Truss, TraceOp::EdgeQuery(u, v)) => vec![u, v],
                (kind, _) => return bad(format!("`{op}` in a {kind} trace")),
            };
            if let Some(&x) = ids.iter().find(|&&x| x >= self.n) {
                return bad(format!("id {x} out of range 0..{}", self.n));
            }
        }
        Ok(())
    }

    /// Number of query ops.
    pub fn num_queries(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| {
                matches!(
                    op,
                    TraceOp::Vertex(_) | TraceOp::EdgeQuery(..) | TraceOp::Value
                )
            })
            .count()
    }
}

/// Replays a `twocore` trace and returns one answer per `?` op. With
/// `oracle` the answers come from a static decomposition per query.
pub fn replay_twocore(trace: &TraceFile, oracle: bool) -> Result<Vec<bool>, TraceError> {
    if trace.kind != TraceKind::Twocore {
        return Err(TraceError::Illegal {
            index: 0,
            msg: format!("expected a twocore trace, got {}", trace.kind),
        });
    }
    let mut g = Graph::with_vertices(trace.n);
    let mut ix = (!oracle).then(|| TwoCoreIndex::new(trace.n));
    let mut out = Vec::with_capacity(trace.num_queries());
    for (index, op) in trace.ops.iter().enumerate() {
        let illegal = |msg: String| TraceError::Illegal { index, msg };
        match *op {
            TraceOp::Edge(e) => {
                e.apply(&mut g).map_err(|x| illegal(x.to_string()))?;
                if let Some(ix) = ix.as_mut() {
                    let r = match e {
                        EdgeOp::Insert(u, v) => ix.insert_edge(u, v),
                        EdgeOp::Delete(u, v) => ix.delete_edge(u, v),
                    };
                    r.map_err(|x| illegal(x.to_string()))?;
                }
            }
            TraceOp::Vertex(u) => out.push(match ix.as_mut() {
                Some(ix) => ix.is_in_2core(u).map_err(|x| illegal(x.to_string()))?,
                None => static_core_decomposition(&g).core_value[u] >= 2,
            }),
            _ => return Err(illegal(format!("`{op}` in a twocore trace"))),
        }
    }
    Ok(out)
}

/// Random legal `twocore` trace: a graph hovering around `density · n`
/// edges, with a query after each update with probability `query_rate`.
pub fn random_twocore_trace<R: Rng>(
    rng: &mut R,
    n: usize,
    updates: usize,
    density: f64,
    query_rate: f64,
) -> TraceFile {
    assert!(n >= 2);
    let mut t = TraceFile::new(TraceKind::Twocore, n);
    let mut g = Graph::with_vertices(n);
    let mut present: Vec<(Vertex, Vertex)> = Vec::new();
    let target = (density * n as f64) as usize;
    let mut done = 0;
    while done < updates {
        let grow = present.is_empty()
            || (present.len() < target && rng.gen_bool(0.6))
            || rng.gen_bool(0.3);
        if grow {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u == v || g.has_edge(u, v) {
                continue;
            }
            g.insert_edge(u, v).expect("checked");
            present.push((u, v));
            t.ops.push(TraceOp::Edge(EdgeOp::Insert(u, v)));
            done += 1;
        } else {
            let (u, v) = present.swap_remove(rng.gen_range(0..present.len()));
            g.delete_edge(u, v).expect("present");
            t.ops.push(TraceOp::Edge(EdgeOp::Delete(u, v)));
            done += 1;
        }
        if rng.gen_bool(query_rate) {
            t.ops.push(TraceOp::Vertex(rng.gen_range(0..n)));
        }
    }
    t
}

/// Circuit trace from a sequence of wire updates, with a `?` after each.
pub fn circuit_trace(size: usize, ops: &[WireOp]) -> TraceFile {
    let mut t = TraceFile::new(TraceKind::Circuit, size);
    for &op in ops {
        t.ops.push(TraceOp::Wire(op));
        t.ops.push(TraceOp::Value);
    }
    t
}
