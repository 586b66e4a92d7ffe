//! OuMv → dynamic circuit value.
//!
//! `C_M` has a One gate `𝟙`, Or gates `L_i`, `R_j` and an Or output `g*`,
//! with a wire `L_i → R_j` for every `M_ij = 1`. A query `(u, v)` adds
//! `𝟙 → L_i` for `u_i = 1` and `R_j → g*` for `v_j = 1`, reads the circuit
//! value and rolls back.

use std::io::BufRead;

use super::{compile_with, label_of, GadgetError, GadgetLabel, ReductionArtifact, ReductionKind};
use crate::circuit::{
    expand_degrees, CircuitError, ExpandedCircuit, GateId, GateKind, MonotoneCircuit, WireOp,
};
use crate::graph::Vertex;

/// How query wires are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OuMvMode {
    /// Insert the query wires, read, delete them.
    #[default]
    FullyDynamic,
    /// Only insertions are updates; rollback undoes them from a journal.
    Incremental,
    /// Every `𝟙 → L_i` and `R_j → g*` wire starts present; a query deletes
    /// the ones not selected and the journal restores them.
    Decremental,
}

#[derive(Debug, Clone)]
pub struct OuMvInstance {
    pub matrix: Vec<Vec<bool>>,
    pub mode: OuMvMode,
    /// Template circuit (unbounded) with the current wires.
    pub template: MonotoneCircuit,
    pub circuit: ExpandedCircuit,
    pub one: GateId,
    pub l: Vec<GateId>,
    pub r: Vec<GateId>,
    pub g_star: GateId,
    journal: Vec<WireOp>,
    /// Wire operations counted as updates (rollback excluded).
    pub updates: usize,
}

fn check_square(m: &[Vec<bool>]) -> Result<usize, GadgetError> {
    let n = m.len();
    if n == 0 || m.iter().any(|row| row.len() != n) {
        return Err(GadgetError::InvalidParameters(
            "OuMv matrix must be square with N ≥ 1".into(),
        ));
    }
    Ok(n)
}

pub fn compile_oumv(m: &[Vec<bool>], mode: OuMvMode) -> Result<OuMvInstance, GadgetError> {
    let n = check_square(m)?;
    let mut t = MonotoneCircuit::unbounded();
    let one = t.add_gate(GateKind::One);
    let l: Vec<GateId> = (0..n).map(|_| t.add_gate(GateKind::Or)).collect();
    let r: Vec<GateId> = (0..n).map(|_| t.add_gate(GateKind::Or)).collect();
    let g_star = t.add_gate(GateKind::Or);
    t.set_output(g_star)?;
    for (i, row) in m.iter().enumerate() {
        for (j, &bit) in row.iter().enumerate() {
            if bit {
                t.insert_wire(l[i], r[j])?;
            }
        }
    }
    let mut fanin = vec![0; t.size()];
    let mut fanout = vec![0; t.size()];
    fanout[one] = n;
    for i in 0..n {
        fanin[l[i]] = 1;
        fanout[l[i]] = n;
        fanin[r[i]] = n;
        fanout[r[i]] = 1;
    }
    fanin[g_star] = n;
    let circuit = expand_degrees(&t, |g| fanin[g], |g| fanout[g])?;
    let mut inst = OuMvInstance {
        matrix: m.to_vec(),
        mode,
        template: t,
        circuit,
        one,
        l,
        r,
        g_star,
        journal: Vec::new(),
        updates: 0,
    };
    if mode == OuMvMode::Decremental {
        for w in inst.query_wires(&vec![true; n], &vec![true; n]) {
            inst.raw(WireOp::Insert(w.0, w.1))?;
        }
    }
    Ok(inst)
}

impl OuMvInstance {
    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    fn query_wires(&self, u: &[bool], v: &[bool]) -> Vec<(GateId, GateId)> {
        let mut w: Vec<_> = (0..self.n())
            .filter(|&i| u[i])
            .map(|i| (self.one, self.l[i]))
            .collect();
        w.extend(
            (0..self.n())
                .filter(|&j| v[j])
                .map(|j| (self.r[j], self.g_star)),
        );
        w
    }

    fn raw(&mut self, op: WireOp) -> Result<(), CircuitError> {
        match op {
            WireOp::Insert(a, b) => {
                self.template.insert_wire(a, b)?;
                self.circuit.insert_wire(a, b)
            }
            WireOp::Delete(a, b) => {
                self.template.delete_wire(a, b)?;
                self.circuit.delete_wire(a, b)
            }
        }
    }

    /// Wire operations that set up query `(u, v)` under the current mode.
    pub fn setup_ops(&self, u: &[bool], v: &[bool]) -> Result<Vec<WireOp>, GadgetError> {
        let n = self.n();
        if u.len() != n || v.len() != n {
            return Err(GadgetError::InvalidParameters(format!(
                "query vectors must have length {n}"
            )));
        }
        Ok(match self.mode {
            OuMvMode::FullyDynamic | OuMvMode::Incremental => self
                .query_wires(u, v)
                .into_iter()
                .map(|(a, b)| WireOp::Insert(a, b))
                .collect(),
            OuMvMode::Decremental => {
                let nu: Vec<bool> = u.iter().map(|b| !b).collect();
                let nv: Vec<bool> = v.iter().map(|b| !b).collect();
                self.query_wires(&nu, &nv)
                    .into_iter()
                    .map(|(a, b)| WireOp::Delete(a, b))
                    .collect()
            }
        })
    }

    /// Applies the query setup, journaling every operation.
    pub fn begin_query(&mut self, u: &[bool], v: &[bool]) -> Result<(), GadgetError> {
        for op in self.setup_ops(u, v)? {
            self.raw(op)?;
            self.journal.push(op);
            self.updates += 1;
        }
        Ok(())
    }

    /// Undoes the journal in reverse. In the fully dynamic mode the undo
    /// operations count as updates.
    pub fn rollback(&mut self) -> Result<(), GadgetError> {
        while let Some(op) = self.journal.pop() {
            let undo = match op {
                WireOp::Insert(a, b) => WireOp::Delete(a, b),
                WireOp::Delete(a, b) => WireOp::Insert(a, b),
            };
            self.raw(undo)?;
            if self.mode == OuMvMode::FullyDynamic {
                self.updates += 1;
            }
        }
        Ok(())
    }

    /// uᵀMv through the circuit.
    pub fn answer_query(&mut self, u: &[bool], v: &[bool]) -> Result<bool, GadgetError> {
        self.begin_query(u, v)?;
        let ans = self.circuit.query_value();
        self.rollback()?;
        Ok(ans)
    }
}

pub fn answer_oumv_query(
    inst: &mut OuMvInstance,
    u: &[bool],
    v: &[bool],
) -> Result<bool, GadgetError> {
    inst.answer_query(u, v)
}

/// `C_M` compiled to a 3-core instance with the `𝟙` gadget replaced by an
/// arrow whose input is `s*`. Queries replay their wires on the graph.
#[derive(Debug, Clone)]
pub struct OuMvKcoreInstance {
    pub oumv: OuMvInstance,
    pub artifact: ReductionArtifact,
    /// Expanded gate whose gadget is the arrow.
    pub arrow_gate: GateId,
    /// Expanded wires currently replayed for the open query.
    open: Vec<(GateId, GateId)>,
}

pub fn compile_oumv_kcore_instance(m: &[Vec<bool>]) -> Result<OuMvKcoreInstance, GadgetError> {
    let oumv = compile_oumv(m, OuMvMode::FullyDynamic)?;
    let c = &oumv.circuit.circuit;
    let arrow_gate = oumv.circuit.map.gates[oumv.one].root;
    if (0..c.size()).any(|g| !matches!(c.kind(g), GateKind::One | GateKind::Or)) {
        return Err(GadgetError::InvalidParameters(
            "C_M must use only One and Or gates".into(),
        ));
    }
    let mut artifact = compile_with(c, ReductionKind::Kcore { k: 3 }, |g| {
        (g == arrow_gate).then(|| super::gadget(super::LibraryKind::Kcore3, GadgetLabel::Arrow))
    })?;
    debug_assert_eq!(label_of(c.kind(arrow_gate)), GadgetLabel::One);
    let s_star = match artifact.distinguished {
        super::Distinguished::Vertex(s) => s,
        super::Distinguished::Edge(..) => unreachable!("k-core reductions use a vertex"),
    };
    let entry: Vertex = artifact.gate_map[arrow_gate][0];
    artifact.target.insert(s_star, entry)?;
    Ok(OuMvKcoreInstance {
        oumv,
        artifact,
        arrow_gate,
        open: Vec::new(),
    })
}

impl OuMvKcoreInstance {
    /// Adds the query wires of `(u, v)` to both the circuit and the graph.
    pub fn begin_query(&mut self, u: &[bool], v: &[bool]) -> Result<(), GadgetError> {
        for op in self.oumv.setup_ops(u, v)? {
            let WireOp::Insert(a, b) = op else {
                unreachable!("fully dynamic mode only inserts")
            };
            self.oumv.raw(op)?;
            let (x, y) = self.oumv.circuit.route(a, b).expect("just routed");
            self.artifact.replay_wire_update(WireOp::Insert(x, y))?;
            self.open.push((a, b));
        }
        Ok(())
    }

    pub fn rollback(&mut self) -> Result<(), GadgetError> {
        while let Some((a, b)) = self.open.pop() {
            let (x, y) = self.oumv.circuit.route(a, b).expect("open wire is routed");
            self.artifact.replay_wire_update(WireOp::Delete(x, y))?;
            self.oumv.raw(WireOp::Delete(a, b))?;
        }
        Ok(())
    }

    /// Runs `f` on the graph with query `(u, v)` applied, then rolls back.
    pub fn with_query<T>(
        &mut self,
        u: &[bool],
        v: &[bool],
        f: impl FnOnce(&ReductionArtifact, &ExpandedCircuit) -> T,
    ) -> Result<T, GadgetError> {
        self.begin_query(u, v)?;
        let out = f(&self.artifact, &self.oumv.circuit);
        self.rollback()?;
        Ok(out)
    }
}

/// Reads a 0/1 matrix, one row per line; blanks inside a row are ignored
/// and `#` starts a comment.
pub fn read_matrix<R: BufRead>(reader: R) -> Result<Vec<Vec<bool>>, GadgetError> {
    let mut m = Vec::new();
    for (no, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| GadgetError::Parse {
            line: no + 1,
            msg: e.to_string(),
        })?;
        let body = line.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for ch in body.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                other => {
                    return Err(GadgetError::Parse {
                        line: no + 1,
                        msg: format!("unexpected {other:?}"),
                    });
                }
            }
        }
        if !row.is_empty() {
            m.push(row);
        }
    }
    check_square(&m)?;
    Ok(m)
}

pub fn write_matrix(m: &[Vec<bool>]) -> String {
    let mut s = String::new();
    for row in m {
        s.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> Vec<Vec<bool>> {
        (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
    }

    #[test]
    fn identity_has_one_wire_per_row() {
        let inst = compile_oumv(&identity(3), OuMvMode::FullyDynamic).unwrap();
        let lr = inst
            .template
            .wires()
            .into_iter()
            .filter(|(a, b)| inst.l.contains(a) && inst.r.contains(b));
        assert_eq!(lr.count(), 3);
    }

    #[test]
    fn zero_u_answers_zero() {
        let mut inst = compile_oumv(&vec![vec![true; 4]; 4], OuMvMode::FullyDynamic).unwrap();
        assert!(!inst.answer_query(&[false; 4], &[true; 4]).unwrap());
        assert!(inst
            .answer_query(&[false, false, true, false], &[true; 4])
            .unwrap());
    }

    #[test]
    fn modes_roll_back_exactly() {
        for mode in [
            OuMvMode::FullyDynamic,
            OuMvMode::Incremental,
            OuMvMode::Decremental,
        ] {
            let mut inst = compile_oumv(&identity(4), mode).unwrap();
            let before = inst.circuit.circuit.wires();
            let u = [true, false, true, false];
            assert!(inst.answer_query(&u, &[false, false, true, true]).unwrap());
            assert!(!inst.answer_query(&u, &[false, true, false, true]).unwrap());
            assert_eq!(inst.circuit.circuit.wires(), before, "{mode:?}");
        }
    }

    #[test]
    fn matrix_text_round_trips() {
        let m = read_matrix("10 1\n0 1 0\n# c\n111\n".as_bytes()).unwrap();
        assert_eq!(write_matrix(&m), "101\n010\n111\n");
        assert!(read_matrix("10\n1\n".as_bytes()).is_err());
    }
}
