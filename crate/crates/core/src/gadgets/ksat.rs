//! k-SAT → dynamic circuit value with a split `U ⊆ V`.
//!
//! `C^U_F` has `𝟙`, an Or gate `L_c` per clause, an Or gate `R_u` per
//! assignment `u` of `U` and an And output `g*`. `L_c → R_u` whenever `u`
//! does not satisfy `c`, and every `R_u → g*` is permanent. Stage `v` (an
//! assignment of `V \ U`) adds `𝟙 → L_c` for the clauses `v` does not
//! satisfy; value 0 means some `u` completes `v` to a model.

use std::io::BufRead;

use super::GadgetError;
use crate::circuit::{expand_degrees, ExpandedCircuit, GateId, GateKind, MonotoneCircuit};

/// Default cap on `2^{|U|}`.
pub const DEFAULT_MAX_SPLIT: usize = 1 << 16;

/// CNF over variables `1..=num_vars`; literals use the DIMACS sign
/// convention.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    /// Is `lit` true when variable `x` (1-based) takes bit `x - 1` of
    /// `assignment`?
    fn lit_true(lit: i32, assignment: u64) -> bool {
        let var = lit.unsigned_abs() as usize - 1;
        (assignment >> var & 1 == 1) == (lit > 0)
    }

    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| Self::lit_true(l, assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{l} "));
            }
            s.push_str("0\n");
        }
        s
    }
}

pub fn read_dimacs<R: BufRead>(reader: R) -> Result<Cnf, GadgetError> {
    let mut cnf = Cnf::default();
    let mut header: Option<usize> = None;
    let mut current = Vec::new();
    for (no, line) in reader.lines().enumerate() {
        let err = |msg: String| GadgetError::Parse { line: no + 1, msg };
        let line = line.map_err(|e| err(e.to_string()))?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('%') {
            break;
        }
        if let Some(rest) = t.strip_prefix('p') {
            let f: Vec<&str> = rest.split_whitespace().collect();
            if f.len() != 3 || f[0] != "cnf" {
                return Err(err("expected `p cnf <vars> <clauses>`".into()));
            }
            cnf.num_vars = f[1].parse().map_err(|_| err("bad variable count".into()))?;
            header = Some(f[2].parse().map_err(|_| err("bad clause count".into()))?);
            continue;
        }
        if header.is_none() {
            return Err(err("clause before the problem line".into()));
        }
        for tok in t.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| err(format!("bad literal {tok:?}")))?;
            if lit == 0 {
                cnf.clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > cnf.num_vars {
                return Err(err(format!(
                    "literal {lit} beyond {} variables",
                    cnf.num_vars
                )));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        cnf.clauses.push(current);
    }
    match header {
        None => Err(GadgetError::Parse {
            line: 0,
            msg: "missing problem line".into(),
        }),
        Some(m) if m != cnf.clauses.len() => Err(GadgetError::Parse {
            line: 0,
            msg: format!("header announces {m} clauses, found {}", cnf.clauses.len()),
        }),
        Some(_) => Ok(cnf),
    }
}

/// Exhaustive check over all `2^N` assignments.
pub fn brute_force_sat(f: &Cnf) -> bool {
    assert!(f.num_vars < 64, "brute force over at most 63 variables");
    (0..1u64 << f.num_vars).any(|a| f.satisfied_by(a))
}

#[derive(Debug, Clone)]
pub struct KsatInstance {
    pub formula: Cnf,
    pub delta: f64,
    /// `|U|`; `U` is variables `1..=split`.
    pub split: usize,
    pub template: MonotoneCircuit,
    pub circuit: ExpandedCircuit,
    pub one: GateId,
    pub l: Vec<GateId>,
    /// `r[u]` for `u` read as a bit mask over `U`.
    pub r: Vec<GateId>,
    pub g_star: GateId,
    /// Stages run by the last `solve`.
    pub stages: u64,
}

/// Does the restriction of `c` to the variables in `lo..hi` (1-based,
/// half-open) have a literal made true by `bits` (bit 0 = variable `lo`)?
fn restricted_sat(c: &[i32], lo: usize, hi: usize, bits: u64) -> bool {
    c.iter().any(|&l| {
        let var = l.unsigned_abs() as usize;
        (lo..hi).contains(&var) && ((bits >> (var - lo) & 1 == 1) == (l > 0))
    })
}

pub fn compile_ksat(f: &Cnf, delta: f64, max_split: usize) -> Result<KsatInstance, GadgetError> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(GadgetError::InvalidParameters(format!(
            "δ must lie in (0, 0.5), got {delta}"
        )));
    }
    if f.num_vars == 0 || f.num_vars >= 64 {
        return Err(GadgetError::InvalidParameters(
            "need 1 ≤ N < 64 variables".into(),
        ));
    }
    let split = ((delta * f.num_vars as f64).ceil() as usize).clamp(1, f.num_vars);
    if split >= 63 || 1usize << split > max_split {
        return Err(GadgetError::TooLarge(format!(
            "2^{split} partial assignments exceed the cap {max_split}"
        )));
    }
    let nu = 1usize << split;
    let mut t = MonotoneCircuit::unbounded();
    let one = t.add_gate(GateKind::One);
    let l: Vec<GateId> = f.clauses.iter().map(|_| t.add_gate(GateKind::Or)).collect();
    let r: Vec<GateId> = (0..nu).map(|_| t.add_gate(GateKind::Or)).collect();
    let g_star = t.add_gate(GateKind::And);
    t.set_output(g_star)?;
    for (ci, c) in f.clauses.iter().enumerate() {
        for (u, &ru) in r.iter().enumerate() {
            if !restricted_sat(c, 1, split + 1, u as u64) {
                t.insert_wire(l[ci], ru)?;
            }
        }
    }
    for &ru in &r {
        t.insert_wire(ru, g_star)?;
    }
    let m = f.clauses.len();
    let circuit = expand_degrees(
        &t,
        |g| if l.contains(&g) { 1 } else { 0 },
        |g| if g == one { m } else { 0 },
    )?;
    Ok(KsatInstance {
        formula: f.clone(),
        delta,
        split,
        template: t,
        circuit,
        one,
        l,
        r,
        g_star,
        stages: 0,
    })
}

impl KsatInstance {
    /// Clauses not satisfied by `v`, an assignment of `V \ U` (bit 0 =
    /// variable `|U| + 1`).
    pub fn stage_clauses(&self, v: u64) -> Vec<usize> {
        let lo = self.split + 1;
        let hi = self.formula.num_vars + 1;
        (0..self.l.len())
            .filter(|&c| !restricted_sat(&self.formula.clauses[c], lo, hi, v))
            .collect()
    }

    /// Circuit value of stage `v`; the stage wires are removed afterwards.
    pub fn stage_value(&mut self, v: u64) -> Result<bool, GadgetError> {
        let cs = self.stage_clauses(v);
        for &c in &cs {
            self.circuit.insert_wire(self.one, self.l[c])?;
        }
        let value = self.circuit.query_value();
        for &c in cs.iter().rev() {
            self.circuit.delete_wire(self.one, self.l[c])?;
        }
        Ok(value)
    }

    /// Satisfiable iff some stage reads circuit value 0.
    pub fn solve(&mut self) -> Result<bool, GadgetError> {
        self.stages = 0;
        let rest = self.formula.num_vars - self.split;
        for v in 0..1u64 << rest {
            self.stages += 1;
            if !self.stage_value(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub fn solve_ksat(inst: &mut KsatInstance) -> Result<bool, GadgetError> {
    inst.solve()
}
