use std::collections::HashMap;

use dyncore::circuit::{
    expand_degrees, random_circuit, random_wire_op, GateId, GateKind, MonotoneCircuit, WireOp,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recursive memoized evaluation straight from the gate definitions.
fn oracle_value(c: &MonotoneCircuit, g: GateId, memo: &mut HashMap<GateId, bool>) -> bool {
    if let Some(&v) = memo.get(&g) {
        return v;
    }
    let ins: Vec<GateId> = c.inputs(g).collect();
    let v = match c.kind(g) {
        GateKind::Zero => false,
        GateKind::One => true,
        GateKind::Or => ins.iter().any(|&i| oracle_value(c, i, memo)),
        GateKind::And => {
            // pad to two inputs with constant 0
            let mut vals: Vec<bool> = ins.iter().map(|&i| oracle_value(c, i, memo)).collect();
            while vals.len() < 2 {
                vals.push(false);
            }
            vals.into_iter().all(|x| x)
        }
    };
    memo.insert(g, v);
    v
}

fn oracle_circuit_value(c: &MonotoneCircuit) -> bool {
    oracle_value(c, c.output().unwrap(), &mut HashMap::new())
}

#[test]
fn random_traces_match_recursive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let mut c = random_circuit(&mut rng, 60);
        for _ in 0..50 {
            let op = random_wire_op(&mut rng, &c).unwrap();
            op.apply(&mut c).unwrap();
            c.validate().unwrap();
            let eval = c.evaluate();
            let mut memo = HashMap::new();
            for g in 0..c.size() {
                assert_eq!(eval.value[g], oracle_value(&c, g, &mut memo));
            }
            assert_eq!(c.query_value(), oracle_circuit_value(&c));
        }
    }
}

/// Template: one constant per input slot feeding gate `g`, and `fanout` Or
/// sinks fed by `g`. Checks every slot assignment.
fn check_expansion(kind: GateKind, fanin: usize, fanout: usize) {
    for mask in 0u32..(1 << fanin) {
        let mut t = MonotoneCircuit::unbounded();
        let consts: Vec<GateId> = (0..fanin)
            .map(|i| {
                t.add_gate(if mask >> i & 1 == 1 {
                    GateKind::One
                } else {
                    GateKind::Zero
                })
            })
            .collect();
        let g = t.add_gate(kind);
        let sinks: Vec<GateId> = (0..fanout).map(|_| t.add_gate(GateKind::Or)).collect();
        for &c in &consts {
            t.insert_wire(c, g).unwrap();
        }
        for &s in &sinks {
            t.insert_wire(g, s).unwrap();
        }
        let all = mask == (1 << fanin) - 1;
        let want = match kind {
            GateKind::And => fanin >= 2 && all,
            GateKind::Or => mask != 0,
            _ => unreachable!(),
        };
        assert_eq!(t.evaluate().value[g], want);

        let e = expand_degrees(&t, |x| t.in_degree(x), |x| t.out_degree(x)).unwrap();
        e.circuit.validate().unwrap();
        let slots = &e.map.gates[g];
        assert_eq!(slots.input_slots.len(), fanin);
        assert_eq!(slots.output_slots.len(), fanout);
        // input tree has fanin − 1 gates, output tree at most fanout
        let extra = e.circuit.size() - t.size();
        assert!(
            extra <= fanin.saturating_sub(2) + fanout,
            "{extra} extra gates"
        );
        let val = e.circuit.evaluate().value;
        assert_eq!(val[slots.root], want);
        for &o in &slots.output_slots {
            assert_eq!(val[o], want);
        }
        for &s in &sinks {
            assert_eq!(e.gate_value(s), want, "mask {mask:b}");
        }
    }
}

#[test]
fn and_gate_seven_in_five_out_expands_exactly() {
    check_expansion(GateKind::And, 7, 5);
}

#[test]
fn or_gate_seven_in_expands_exactly() {
    check_expansion(GateKind::Or, 7, 1);
}

#[test]
fn assorted_expansion_shapes() {
    for d in 1..=9 {
        check_expansion(GateKind::And, d, d % 4 + 1);
        check_expansion(GateKind::Or, d, 9 - d + 1);
    }
}

#[test]
fn constant_fanout_goes_through_or_tree() {
    let mut t = MonotoneCircuit::unbounded();
    let one = t.add_gate(GateKind::One);
    let sinks: Vec<_> = (0..6).map(|_| t.add_gate(GateKind::Or)).collect();
    for &s in &sinks {
        t.insert_wire(one, s).unwrap();
    }
    let e = expand_degrees(&t, |_| 1, |x| t.out_degree(x)).unwrap();
    assert!(e.circuit.out_degree(e.map.gates[one].root) <= 1);
    assert!(sinks.iter().all(|&s| e.gate_value(s)));
}

#[test]
fn expanded_circuit_routes_dynamic_wires() {
    // unbounded output Or with 10 slots, fed by One gates one at a time
    let mut t = MonotoneCircuit::unbounded();
    let ones: Vec<_> = (0..10).map(|_| t.add_gate(GateKind::One)).collect();
    let out = t.add_gate(GateKind::Or);
    t.set_output(out).unwrap();
    let mut e = expand_degrees(&t, |g| if g == out { 10 } else { 0 }, |_| 1).unwrap();
    assert!(!e.query_value());
    for &g in &ones {
        e.insert_wire(g, out).unwrap();
        assert!(e.query_value());
    }
    assert!(e.insert_wire(ones[0], out).is_err());
    for &g in &ones {
        e.delete_wire(g, out).unwrap();
    }
    assert!(!e.query_value());
    assert_eq!(e.circuit.num_wires(), e.circuit.size() - 1 - 10);
}

#[test]
fn text_format_parses_documented_example() {
    let text = "# two inputs into an And\ngate 0 ONE\ngate 1 ONE\ngate 2 AND\noutput 2\nwire 0 2\nwire 1 2\n";
    let mut c = MonotoneCircuit::read_text(text.as_bytes()).unwrap();
    assert!(c.query_value());
    WireOp::Delete(1, 2).apply(&mut c).unwrap();
    assert!(!c.query_value());
    let bad = "gate 0 ONE\ngate 1 AND\nwire 0 1\nwire 0 1\n";
    assert!(MonotoneCircuit::read_text(bad.as_bytes()).is_err());
}

proptest! {
    // flipping a Zero gate to One never lowers any gate value
    #[test]
    fn flipping_constant_up_is_monotone(seed in 0u64..10_000, size in 4usize..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(&mut rng, size);
        let before = c.evaluate().value;
        let zeros: Vec<_> = (0..c.size()).filter(|&g| c.kind(g) == GateKind::Zero).collect();
        prop_assume!(!zeros.is_empty());
        let mut text = c.to_text();
        let z = zeros[seed as usize % zeros.len()];
        text = text.replace(&format!("gate {z} ZERO"), &format!("gate {z} ONE"));
        let up = MonotoneCircuit::read_text(text.as_bytes()).unwrap().evaluate().value;
        for g in 0..c.size() {
            prop_assert!(!before[g] || up[g]);
        }
    }

    // adding a wire into an Or gate never lowers values
    #[test]
    fn wire_into_or_is_monotone(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = random_circuit(&mut rng, 40);
        let before = c.evaluate().value;
        let mut added = false;
        for b in 1..c.size() {
            if c.kind(b) != GateKind::Or { continue; }
            for a in 0..b {
                if c.insert_wire(a, b).is_ok() { added = true; break; }
            }
            if added { break; }
        }
        prop_assume!(added);
        let after = c.evaluate().value;
        for g in 0..c.size() {
            prop_assert!(!before[g] || after[g]);
        }
    }
}
