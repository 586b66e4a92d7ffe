//! DynXor → dynamic circuit value.
//!
//! A ladder of Or pairs `(g_i, ḡ_i)` with `g_0 = 0` and `ḡ_0 = 1`. Index `i`
//! is wired straight (`g_{i-1} → g_i`, `ḡ_{i-1} → ḡ_i`) when `x_i = 0` and
//! crossed when `x_i = 1`, so `g_i` carries the prefix XOR. A query hangs
//! `g_i` on the output Or for one read.

use super::GadgetError;
use crate::circuit::{GateId, GateKind, MonotoneCircuit};

#[derive(Debug, Clone)]
pub struct DynXorInstance {
    pub x: Vec<bool>,
    pub circuit: MonotoneCircuit,
    /// `g[i]`, `gbar[i]` for `i` in `0..=n`.
    pub g: Vec<GateId>,
    pub gbar: Vec<GateId>,
    pub g_star: GateId,
}

pub fn compile_dynxor(x: &[bool]) -> Result<DynXorInstance, GadgetError> {
    if x.is_empty() {
        return Err(GadgetError::InvalidParameters("DynXor needs n ≥ 1".into()));
    }
    let mut c = MonotoneCircuit::new();
    let mut g = vec![c.add_gate(GateKind::Zero)];
    let mut gbar = vec![c.add_gate(GateKind::One)];
    for _ in x {
        g.push(c.add_gate(GateKind::Or));
        gbar.push(c.add_gate(GateKind::Or));
    }
    let g_star = c.add_gate(GateKind::Or);
    c.set_output(g_star)?;
    let mut inst = DynXorInstance {
        x: x.to_vec(),
        circuit: c,
        g,
        gbar,
        g_star,
    };
    for i in 1..=x.len() {
        for (a, b) in inst.rungs(i, x[i - 1]) {
            inst.circuit.insert_wire(a, b)?;
        }
    }
    Ok(inst)
}

impl DynXorInstance {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    fn rungs(&self, i: usize, bit: bool) -> [(GateId, GateId); 2] {
        let (p, pb) = (self.g[i - 1], self.gbar[i - 1]);
        if bit {
            [(pb, self.g[i]), (p, self.gbar[i])]
        } else {
            [(p, self.g[i]), (pb, self.gbar[i])]
        }
    }

    fn check(&self, i: usize) -> Result<(), GadgetError> {
        if i == 0 || i > self.n() {
            return Err(GadgetError::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Sets `x_i = bit` (1-based); a no-op when unchanged.
    pub fn update(&mut self, i: usize, bit: bool) -> Result<(), GadgetError> {
        self.check(i)?;
        if self.x[i - 1] == bit {
            return Ok(());
        }
        for (a, b) in self.rungs(i, !bit) {
            self.circuit.delete_wire(a, b)?;
        }
        for (a, b) in self.rungs(i, bit) {
            self.circuit.insert_wire(a, b)?;
        }
        self.x[i - 1] = bit;
        Ok(())
    }

    /// `x_1 ⊕ … ⊕ x_i` through the circuit.
    pub fn query(&mut self, i: usize) -> Result<bool, GadgetError> {
        self.check(i)?;
        self.circuit.insert_wire(self.g[i], self.g_star)?;
        let v = self.circuit.query_value();
        self.circuit.delete_wire(self.g[i], self.g_star)?;
        Ok(v)
    }
}

pub fn dynxor_update(inst: &mut DynXorInstance, i: usize, bit: bool) -> Result<(), GadgetError> {
    inst.update(i, bit)
}

pub fn dynxor_query(inst: &mut DynXorInstance, i: usize) -> Result<bool, GadgetError> {
    inst.query(i)
}

/// Parses a 0/1 string, ignoring whitespace.
pub fn read_bits(s: &str) -> Result<Vec<bool>, GadgetError> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(GadgetError::Parse {
                line: 1,
                msg: format!("unexpected {other:?}"),
            }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_zero_vector() {
        let inst = compile_dynxor(&[false; 3]).unwrap();
        let val = inst.circuit.evaluate().value;
        for i in 1..=3 {
            assert!(!val[inst.g[i]]);
            assert!(val[inst.gbar[i]]);
        }
    }

    #[test]
    fn single_one() {
        let mut inst = compile_dynxor(&[true]).unwrap();
        assert!(inst.query(1).unwrap());
        assert!(inst.query(0).is_err());
        assert!(inst.query(2).is_err());
    }

    #[test]
    fn flip_and_back_restores_wiring() {
        let mut inst = compile_dynxor(&read_bits("0110").unwrap()).unwrap();
        let before = inst.circuit.wires();
        inst.update(2, false).unwrap();
        assert_ne!(inst.circuit.wires(), before);
        inst.update(2, true).unwrap();
        inst.update(3, true).unwrap();
        assert_eq!(inst.circuit.wires(), before);
        assert!(!inst.query(3).unwrap());
        assert!(inst.query(2).unwrap());
    }
}
