//! Artifact bundles: a directory holding `manifest.json`, the target edge
//! list `target.edges` and, optionally, the source circuit `circuit.txt`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ksat::{compile_ksat, read_dimacs, KsatInstance};
use super::{Distinguished, GadgetError, ReductionArtifact, ReductionKind, Target};
use crate::circuit::{GateId, MonotoneCircuit};
use crate::graph::{Digraph, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireEntry {
    pub from: GateId,
    pub to: GateId,
    pub edges: Vec<(Vertex, Vertex)>,
    pub out_port: Vec<Vertex>,
    pub in_port: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleManifest {
    pub kind: ReductionKind,
    pub directed: bool,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub distinguished: Distinguished,
    pub wires: Vec<WireEntry>,
    pub gate_map: Vec<Vec<Vertex>>,
    pub free_in: Vec<Vec<Vec<Vertex>>>,
    pub free_out: Vec<Vec<Vec<Vertex>>>,
}

fn io(e: impl std::fmt::Display) -> GadgetError {
    GadgetError::Io(e.to_string())
}

pub fn write_bundle(
    dir: &Path,
    art: &ReductionArtifact,
    source: Option<&MonotoneCircuit>,
) -> Result<(), GadgetError> {
    fs::create_dir_all(dir).map_err(io)?;
    let wires = art
        .wire_map
        .iter()
        .map(|(&(from, to), edges)| {
            let (out_port, in_port) = art.ports[&(from, to)].clone();
            WireEntry {
                from,
                to,
                edges: edges.clone(),
                out_port,
                in_port,
            }
        })
        .collect();
    let manifest = BundleManifest {
        kind: art.kind,
        directed: matches!(art.target, Target::Directed(_)),
        num_vertices: art.target.num_vertices(),
        num_edges: art.target.num_edges(),
        distinguished: art.distinguished,
        wires,
        gate_map: art.gate_map.clone(),
        free_in: art.free_in.clone(),
        free_out: art.free_out.clone(),
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(io)?;
    fs::write(dir.join("manifest.json"), json).map_err(io)?;
    let edges = match &art.target {
        Target::Undirected(g) => g.to_edge_list(),
        Target::Directed(g) => g.to_edge_list(),
    };
    fs::write(dir.join("target.edges"), edges).map_err(io)?;
    if let Some(c) = source {
        fs::write(dir.join("circuit.txt"), c.to_text()).map_err(io)?;
    }
    Ok(())
}

/// Reloads a bundle; the source circuit is returned when one was stored.
pub fn read_bundle(
    dir: &Path,
) -> Result<(ReductionArtifact, Option<MonotoneCircuit>), GadgetError> {
    let json = fs::read_to_string(dir.join("manifest.json")).map_err(io)?;
    let m: BundleManifest = serde_json::from_str(&json).map_err(io)?;
    let edges = fs::read(dir.join("target.edges")).map_err(io)?;
    let target = if m.directed {
        let mut g = Digraph::read_edge_list(edges.as_slice())?;
        if m.num_vertices > 0 {
            g.ensure_vertex(m.num_vertices - 1);
        }
        Target::Directed(g)
    } else {
        let mut g = Graph::read_edge_list(edges.as_slice())?;
        if m.num_vertices > 0 {
            g.ensure_vertex(m.num_vertices - 1);
        }
        Target::Undirected(g)
    };
    if target.num_vertices() != m.num_vertices || target.num_edges() != m.num_edges {
        return Err(GadgetError::Io(
            "edge list disagrees with the manifest counts".into(),
        ));
    }
    let mut wire_map = BTreeMap::new();
    let mut ports = BTreeMap::new();
    for w in m.wires {
        wire_map.insert((w.from, w.to), w.edges);
        ports.insert((w.from, w.to), (w.out_port, w.in_port));
    }
    let art = ReductionArtifact {
        kind: m.kind,
        target,
        distinguished: m.distinguished,
        wire_map,
        gate_map: m.gate_map,
        free_in: m.free_in,
        free_out: m.free_out,
        ports,
    };
    let source = match fs::read(dir.join("circuit.txt")) {
        Ok(text) => Some(MonotoneCircuit::read_text(text.as_slice())?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(io(e)),
    };
    Ok((art, source))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct KsatManifest {
    delta: f64,
    split: usize,
    max_split: usize,
    gates: usize,
}

/// k-SAT bundle: `formula.cnf`, the compiled circuit `circuit.txt` and
/// `ksat.json` with the split parameters.
pub fn write_ksat_bundle(
    dir: &Path,
    inst: &KsatInstance,
    max_split: usize,
) -> Result<(), GadgetError> {
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("formula.cnf"), inst.formula.to_dimacs()).map_err(io)?;
    fs::write(dir.join("circuit.txt"), inst.circuit.circuit.to_text()).map_err(io)?;
    let m = KsatManifest {
        delta: inst.delta,
        split: inst.split,
        max_split,
        gates: inst.circuit.circuit.size(),
    };
    fs::write(
        dir.join("ksat.json"),
        serde_json::to_string_pretty(&m).map_err(io)?,
    )
    .map_err(io)?;
    Ok(())
}

/// Recompiles the stored formula and checks it reproduces the stored
/// circuit exactly.
pub fn read_ksat_bundle(dir: &Path) -> Result<KsatInstance, GadgetError> {
    let m: KsatManifest =
        serde_json::from_str(&fs::read_to_string(dir.join("ksat.json")).map_err(io)?)
            .map_err(io)?;
    let f = read_dimacs(fs::read(dir.join("formula.cnf")).map_err(io)?.as_slice())?;
    let inst = compile_ksat(&f, m.delta, m.max_split)?;
    let stored = fs::read_to_string(dir.join("circuit.txt")).map_err(io)?;
    if inst.split != m.split || inst.circuit.circuit.to_text() != stored {
        return Err(GadgetError::Io(
            "stored circuit does not match the formula".into(),
        ));
    }
    Ok(inst)
}
