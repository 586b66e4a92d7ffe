//! Dynamic monotone Boolean circuits.
//!
//! Gates are labelled `Zero`, `One`, `And` or `Or`. And/Or gates with fewer
//! than two inputs behave as if the missing inputs were 0, so an And gate is 1
//! only with at least two inputs that are all 1.
//!
//! A *bounded* circuit enforces the usual caps: constants have in-degree 0
//! and out-degree ≤ 1, And/Or gates in/out-degree ≤ 2, the output gate
//! out-degree 0. An *unbounded* circuit only keeps the constant in-degree
//! and output out-degree rules; [`expand_degrees`] turns it into a bounded one.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::io::BufRead;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

pub type GateId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Zero,
    One,
    And,
    Or,
}

impl GateKind {
    pub fn is_constant(self) -> bool {
        matches!(self, GateKind::Zero | GateKind::One)
    }

    pub fn max_in(self) -> usize {
        if self.is_constant() {
            0
        } else {
            2
        }
    }

    pub fn max_out(self) -> usize {
        if self.is_constant() {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::Zero => "ZERO",
            GateKind::One => "ONE",
            GateKind::And => "AND",
            GateKind::Or => "OR",
        })
    }
}

impl FromStr for GateKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ZERO" => Ok(GateKind::Zero),
            "ONE" => Ok(GateKind::One),
            "AND" => Ok(GateKind::And),
            "OR" => Ok(GateKind::Or),
            other => Err(format!("unknown gate label {other}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("wire ({from}, {to}) violates the degree cap of gate {gate}")]
    DegreeCapViolation {
        from: GateId,
        to: GateId,
        gate: GateId,
    },
    #[error("wire ({0}, {1}) would create a cycle")]
    WouldCreateCycle(GateId, GateId),
    #[error("wire ({0}, {1}) already present")]
    AlreadyPresent(GateId, GateId),
    #[error("wire ({0}, {1}) not present")]
    NotPresent(GateId, GateId),
    #[error("unknown gate {0}")]
    UnknownGate(GateId),
    #[error("circuit has no output gate")]
    NoOutput,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationResult {
    pub value: Vec<bool>,
    pub circuit_value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCircuit {
    kinds: Vec<GateKind>,
    inputs: Vec<BTreeSet<GateId>>,
    outputs: Vec<BTreeSet<GateId>>,
    output: Option<GateId>,
    bounded: bool,
}

impl Default for MonotoneCircuit {
    fn default() -> Self {
        Self::new()
    }
}

impl MonotoneCircuit {
    /// Empty bounded circuit.
    pub fn new() -> Self {
        MonotoneCircuit {
            kinds: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            output: None,
            bounded: true,
        }
    }

    /// Empty circuit without fan-in/fan-out caps on And/Or gates.
    pub fn unbounded() -> Self {
        MonotoneCircuit {
            bounded: false,
            ..Self::new()
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn add_gate(&mut self, kind: GateKind) -> GateId {
        self.kinds.push(kind);
        self.inputs.push(BTreeSet::new());
        self.outputs.push(BTreeSet::new());
        self.kinds.len() - 1
    }

    /// Designates the output gate. It must have no outgoing wires.
    pub fn set_output(&mut self, g: GateId) -> Result<(), CircuitError> {
        self.check(g)?;
        if !self.outputs[g].is_empty() {
            let to = *self.outputs[g].iter().next().unwrap();
            return Err(CircuitError::DegreeCapViolation {
                from: g,
                to,
                gate: g,
            });
        }
        self.output = Some(g);
        Ok(())
    }

    pub fn output(&self) -> Option<GateId> {
        self.output
    }

    pub fn size(&self) -> usize {
        self.kinds.len()
    }

    pub fn num_wires(&self) -> usize {
        self.inputs.iter().map(|s| s.len()).sum()
    }

    pub fn kind(&self, g: GateId) -> GateKind {
        self.kinds[g]
    }

    pub fn inputs(&self, g: GateId) -> impl Iterator<Item = GateId> + '_ {
        self.inputs[g].iter().copied()
    }

    pub fn outputs(&self, g: GateId) -> impl Iterator<Item = GateId> + '_ {
        self.outputs[g].iter().copied()
    }

    pub fn in_degree(&self, g: GateId) -> usize {
        self.inputs[g].len()
    }

    pub fn out_degree(&self, g: GateId) -> usize {
        self.outputs[g].len()
    }

    pub fn has_wire(&self, from: GateId, to: GateId) -> bool {
        self.outputs.get(from).is_some_and(|s| s.contains(&to))
    }

    /// All wires in lexicographic order.
    pub fn wires(&self) -> Vec<(GateId, GateId)> {
        self.outputs
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
            .collect()
    }

    fn check(&self, g: GateId) -> Result<(), CircuitError> {
        if g < self.kinds.len() {
            Ok(())
        } else {
            Err(CircuitError::UnknownGate(g))
        }
    }

    fn out_cap(&self, g: GateId) -> usize {
        if Some(g) == self.output {
            0
        } else if self.bounded {
            self.kinds[g].max_out()
        } else {
            usize::MAX
        }
    }

    fn in_cap(&self, g: GateId) -> usize {
        if self.bounded || self.kinds[g].is_constant() {
            self.kinds[g].max_in()
        } else {
            usize::MAX
        }
    }

    /// Does a directed path lead from `from` to `to`?
    pub fn reaches(&self, from: GateId, to: GateId) -> bool {
        let mut seen = vec![false; self.size()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            for &y in &self.outputs[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    pub fn insert_wire(&mut self, from: GateId, to: GateId) -> Result<(), CircuitError> {
        self.check(from)?;
        self.check(to)?;
        if self.has_wire(from, to) {
            return Err(CircuitError::AlreadyPresent(from, to));
        }
        if self.outputs[from].len() >= self.out_cap(from) {
            return Err(CircuitError::DegreeCapViolation {
                from,
                to,
                gate: from,
            });
        }
        if self.inputs[to].len() >= self.in_cap(to) {
            return Err(CircuitError::DegreeCapViolation { from, to, gate: to });
        }
        if from == to || self.reaches(to, from) {
            return Err(CircuitError::WouldCreateCycle(from, to));
        }
        self.outputs[from].insert(to);
        self.inputs[to].insert(from);
        Ok(())
    }

    pub fn delete_wire(&mut self, from: GateId, to: GateId) -> Result<(), CircuitError> {
        if !self.has_wire(from, to) {
            return Err(CircuitError::NotPresent(from, to));
        }
        self.outputs[from].remove(&to);
        self.inputs[to].remove(&from);
        Ok(())
    }

    /// Topological order (Kahn), smallest ready gate first.
    pub fn topological_order(&self) -> Vec<GateId> {
        let mut indeg: Vec<usize> = self.inputs.iter().map(|s| s.len()).collect();
        let mut ready: BTreeSet<GateId> = (0..self.size()).filter(|&g| indeg[g] == 0).collect();
        let mut order = Vec::with_capacity(self.size());
        while let Some(g) = ready.pop_first() {
            order.push(g);
            for &h in &self.outputs[g] {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.insert(h);
                }
            }
        }
        order
    }

    pub(crate) fn gate_value(&self, g: GateId, value: &[bool]) -> bool {
        match self.kinds[g] {
            GateKind::Zero => false,
            GateKind::One => true,
            GateKind::Or => self.inputs[g].iter().any(|&i| value[i]),
            GateKind::And => self.inputs[g].len() >= 2 && self.inputs[g].iter().all(|&i| value[i]),
        }
    }

    pub fn evaluate(&self) -> EvaluationResult {
        let mut value = vec![false; self.size()];
        for g in self.topological_order() {
            value[g] = self.gate_value(g, &value);
        }
        let circuit_value = self.output.is_some_and(|o| value[o]);
        EvaluationResult {
            value,
            circuit_value,
        }
    }

    /// Current circuit value by full re-evaluation.
    pub fn query_value(&self) -> bool {
        self.evaluate().circuit_value
    }

    /// Checks degree caps (if bounded), acyclicity and the output rule.
    pub fn validate(&self) -> Result<(), String> {
        if self.topological_order().len() != self.size() {
            return Err("circuit has a cycle".into());
        }
        for g in 0..self.size() {
            if self.inputs[g].len() > self.in_cap(g) || self.outputs[g].len() > self.out_cap(g) {
                return Err(format!("gate {g} exceeds its degree caps"));
            }
        }
        Ok(())
    }

    /// Text format: `gate <id> <LABEL>`, `wire <from> <to>`, `output <id>`,
    /// optional `unbounded`; `#` comments. Gate ids must be dense.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.bounded {
            out.push_str("unbounded\n");
        }
        for (g, k) in self.kinds.iter().enumerate() {
            let _ = writeln!(out, "gate {g} {k}");
        }
        if let Some(o) = self.output {
            let _ = writeln!(out, "output {o}");
        }
        for (a, b) in self.wires() {
            let _ = writeln!(out, "wire {a} {b}");
        }
        out
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<Self, CircuitError> {
        let mut bounded = true;
        let mut gates: BTreeMap<GateId, GateKind> = BTreeMap::new();
        let mut wires = Vec::new();
        let mut output = None;
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let perr = |msg: String| CircuitError::Parse { line: lineno, msg };
            let line = line.map_err(|e| perr(e.to_string()))?;
            let body = line.split('#').next().unwrap_or("").trim();
            let toks: Vec<&str> = body.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<GateId>()
                    .map_err(|e| perr(format!("bad gate id: {e}")))
            };
            match toks.as_slice() {
                [] => {}
                ["unbounded"] => bounded = false,
                ["gate", id, label] => {
                    let kind = label.parse().map_err(perr)?;
                    if gates.insert(num(id)?, kind).is_some() {
                        return Err(perr(format!("gate {id} declared twice")));
                    }
                }
                ["wire", a, b] => wires.push((num(a)?, num(b)?, lineno)),
                ["output", id] => output = Some((num(id)?, lineno)),
                _ => return Err(perr(format!("unrecognized line: {body}"))),
            }
        }
        let mut c = if bounded {
            Self::new()
        } else {
            Self::unbounded()
        };
        for (expect, (&id, &kind)) in gates.iter().enumerate() {
            if id != expect {
                return Err(CircuitError::Parse {
                    line: 0,
                    msg: format!("gate ids must be dense, missing {expect}"),
                });
            }
            c.add_gate(kind);
        }
        if let Some((o, line)) = output {
            c.set_output(o).map_err(|e| CircuitError::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        for (a, b, line) in wires {
            c.insert_wire(a, b).map_err(|e| CircuitError::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(c)
    }
}

/// One step of a circuit update trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WireOp {
    Insert(GateId, GateId),
    Delete(GateId, GateId),
}

impl WireOp {
    pub fn endpoints(self) -> (GateId, GateId) {
        match self {
            WireOp::Insert(a, b) | WireOp::Delete(a, b) => (a, b),
        }
    }

    pub fn apply(self, c: &mut MonotoneCircuit) -> Result<(), CircuitError> {
        match self {
            WireOp::Insert(a, b) => c.insert_wire(a, b),
            WireOp::Delete(a, b) => c.delete_wire(a, b),
        }
    }
}

/// Random bounded circuit on `size ≥ 2` gates. Wires only run from lower to
/// higher ids, the last gate is an And/Or output, and roughly a fifth of the
/// gates are constants.
pub fn random_circuit<R: Rng>(rng: &mut R, size: usize) -> MonotoneCircuit {
    assert!(size >= 2);
    let mut c = MonotoneCircuit::new();
    for g in 0..size {
        let kind = if g == size - 1 {
            if rng.gen_bool(0.5) {
                GateKind::Or
            } else {
                GateKind::And
            }
        } else if g < 2 || rng.gen_bool(0.2) {
            if rng.gen_bool(0.5) {
                GateKind::One
            } else {
                GateKind::Zero
            }
        } else if rng.gen_bool(0.5) {
            GateKind::Or
        } else {
            GateKind::And
        };
        c.add_gate(kind);
    }
    c.set_output(size - 1).unwrap();
    for g in 0..size {
        if c.kind(g).is_constant() {
            continue;
        }
        for _ in 0..2 {
            if rng.gen_bool(0.85) {
                let from = rng.gen_range(0..g);
                let _ = c.insert_wire(from, g);
            }
        }
    }
    c
}

/// A random legal wire update for a circuit built by [`random_circuit`]:
/// deletes an existing wire or inserts a forward wire that fits the caps.
pub fn random_wire_op<R: Rng>(rng: &mut R, c: &MonotoneCircuit) -> Option<WireOp> {
    let wires = c.wires();
    if !wires.is_empty() && rng.gen_bool(0.45) {
        let (a, b) = wires[rng.gen_range(0..wires.len())];
        return Some(WireOp::Delete(a, b));
    }
    for _ in 0..64 {
        let b = rng.gen_range(1..c.size());
        let a = rng.gen_range(0..b);
        let mut probe = c.clone();
        if probe.insert_wire(a, b).is_ok() {
            return Some(WireOp::Insert(a, b));
        }
    }
    wires.first().map(|&(a, b)| WireOp::Delete(a, b))
}

/// Where a template gate lives inside an expanded circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSlots {
    /// Gates receiving the template gate's inputs; a gate appears once per
    /// free input position reserved for this template gate.
    pub input_slots: Vec<GateId>,
    /// Gates whose output positions carry the template gate's value.
    pub output_slots: Vec<GateId>,
    /// The gate computing the template gate's value.
    pub root: GateId,
}

/// Template gate → slots in the expanded circuit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpansionMap {
    pub gates: Vec<GateSlots>,
}

/// A bounded circuit simulating an unbounded template, with template-level
/// wire updates routed to free slots.
#[derive(Debug, Clone)]
pub struct ExpandedCircuit {
    pub circuit: MonotoneCircuit,
    pub map: ExpansionMap,
    free_in: Vec<Vec<GateId>>,
    free_out: Vec<Vec<GateId>>,
    routed: HashMap<(GateId, GateId), (GateId, GateId)>,
}

fn build_input_tree(
    c: &mut MonotoneCircuit,
    kind: GateKind,
    slots: usize,
    out: &mut Vec<GateId>,
) -> Option<GateId> {
    // returns the gate computing the combination; `None` means "one bare slot"
    if slots == 1 {
        return None;
    }
    let g = c.add_gate(kind);
    for part in [slots.div_ceil(2), slots / 2] {
        match build_input_tree(c, kind, part, out) {
            Some(child) => c.insert_wire(child, g).expect("fresh tree gate"),
            None => out.push(g),
        }
    }
    Some(g)
}

fn build_output_tree(c: &mut MonotoneCircuit, source: GateId, slots: usize, out: &mut Vec<GateId>) {
    // `source` has one free output position to fill with `slots` leaves
    if slots == 1 {
        out.push(source);
        return;
    }
    let g = c.add_gate(GateKind::Or);
    c.insert_wire(source, g).expect("fresh tree gate");
    build_output_tree(c, g, slots.div_ceil(2), out);
    build_output_tree(c, g, slots / 2, out);
}

/// Expands `template` so that every gate respects the bounded caps.
///
/// Gate `g` gets `fanin(g)` input slots and `fanout(g)` output slots. An
/// And/Or gate with more than two inputs becomes a balanced tree of gates of
/// its own kind (`fanin − 1` gates); more than the allowed outputs become a
/// tree of Or gates. The template's current wires are routed through slots.
pub fn expand_degrees(
    template: &MonotoneCircuit,
    fanin: impl Fn(GateId) -> usize,
    fanout: impl Fn(GateId) -> usize,
) -> Result<ExpandedCircuit, CircuitError> {
    let mut c = MonotoneCircuit::new();
    let mut gates = Vec::with_capacity(template.size());
    for g in 0..template.size() {
        let kind = template.kind(g);
        let is_output = template.output() == Some(g);
        let din = if kind.is_constant() {
            0
        } else {
            fanin(g).max(template.in_degree(g))
        };
        let dout = if is_output {
            0
        } else {
            fanout(g).max(template.out_degree(g))
        };
        let mut input_slots = Vec::new();
        let root = if din <= 2 {
            let r = c.add_gate(kind);
            input_slots.extend(std::iter::repeat_n(r, din));
            r
        } else {
            build_input_tree(&mut c, kind, din, &mut input_slots).expect("din > 1")
        };
        let mut output_slots = Vec::new();
        let cap = kind.max_out();
        if dout <= cap {
            output_slots.extend(std::iter::repeat_n(root, dout));
        } else if cap == 1 {
            build_output_tree(&mut c, root, dout, &mut output_slots);
        } else {
            build_output_tree(&mut c, root, dout.div_ceil(2), &mut output_slots);
            build_output_tree(&mut c, root, dout / 2, &mut output_slots);
        }
        gates.push(GateSlots {
            input_slots,
            output_slots,
            root,
        });
    }
    if let Some(o) = template.output() {
        c.set_output(gates[o].root)?;
    }
    let free_in = gates
        .iter()
        .map(|s| s.input_slots.iter().rev().copied().collect())
        .collect();
    let free_out = gates
        .iter()
        .map(|s| s.output_slots.iter().rev().copied().collect())
        .collect();
    let mut e = ExpandedCircuit {
        circuit: c,
        map: ExpansionMap { gates },
        free_in,
        free_out,
        routed: HashMap::new(),
    };
    for (a, b) in template.wires() {
        e.insert_wire(a, b)?;
    }
    Ok(e)
}

impl ExpandedCircuit {
    /// Routes template wire `from → to` through a free output slot of `from`
    /// and a free input slot of `to`.
    pub fn insert_wire(&mut self, from: GateId, to: GateId) -> Result<(), CircuitError> {
        if from >= self.free_out.len() || to >= self.free_in.len() {
            return Err(CircuitError::UnknownGate(from.max(to)));
        }
        if self.routed.contains_key(&(from, to)) {
            return Err(CircuitError::AlreadyPresent(from, to));
        }
        let Some(&a) = self.free_out[from].last() else {
            return Err(CircuitError::DegreeCapViolation {
                from,
                to,
                gate: from,
            });
        };
        let Some(&b) = self.free_in[to].last() else {
            return Err(CircuitError::DegreeCapViolation { from, to, gate: to });
        };
        self.circuit.insert_wire(a, b)?;
        self.free_out[from].pop();
        self.free_in[to].pop();
        self.routed.insert((from, to), (a, b));
        Ok(())
    }

    pub fn delete_wire(&mut self, from: GateId, to: GateId) -> Result<(), CircuitError> {
        let Some((a, b)) = self.routed.remove(&(from, to)) else {
            return Err(CircuitError::NotPresent(from, to));
        };
        self.circuit.delete_wire(a, b)?;
        self.free_out[from].push(a);
        self.free_in[to].push(b);
        Ok(())
    }

    pub fn has_wire(&self, from: GateId, to: GateId) -> bool {
        self.routed.contains_key(&(from, to))
    }

    /// Expanded wire carrying template wire `from → to`.
    pub fn route(&self, from: GateId, to: GateId) -> Option<(GateId, GateId)> {
        self.routed.get(&(from, to)).copied()
    }

    pub fn query_value(&self) -> bool {
        self.circuit.query_value()
    }

    /// Value of template gate `g`.
    pub fn gate_value(&self, g: GateId) -> bool {
        self.circuit.evaluate().value[self.map.gates[g].root]
    }
}
