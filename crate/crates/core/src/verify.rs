//! Seeded verification suites. Every trial derives its own RNG from the
//! suite seed and the trial index, so a failure is reproducible alone; the
//! failing input is written to the failure directory.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{random_circuit, random_wire_op, WireOp};
use crate::gadgets::{
    compile_dynxor, compile_mcvp_to_approx_kcore, compile_mcvp_to_kcore, compile_mcvp_to_klcore,
    compile_mcvp_to_truss, verify_gadget_library, GadgetError, LibraryKind, ReductionArtifact,
};
use crate::trace::{circuit_trace, random_twocore_trace, replay_twocore};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Gadgets(LibraryKind),
    TwocoreFuzz,
    DynxorE2e,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "gadgets-kcore3",
        "gadgets-truss4",
        "gadgets-klcore",
        "gadgets-approx2",
        "twocore-fuzz",
        "dynxor-e2e",
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::Gadgets(LibraryKind::Approx(k)) => write!(f, "gadgets-approx{k}"),
            Suite::Gadgets(k) => write!(f, "gadgets-{k}"),
            Suite::TwocoreFuzz => f.write_str("twocore-fuzz"),
            Suite::DynxorE2e => f.write_str("dynxor-e2e"),
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "gadgets-kcore3" => Suite::Gadgets(LibraryKind::Kcore3),
            "gadgets-truss4" => Suite::Gadgets(LibraryKind::Truss4),
            "gadgets-klcore" => Suite::Gadgets(LibraryKind::KlCore),
            "twocore-fuzz" => Suite::TwocoreFuzz,
            "dynxor-e2e" => Suite::DynxorE2e,
            _ => match s
                .strip_prefix("gadgets-approx")
                .and_then(|k| k.parse().ok())
            {
                Some(k) if k >= 2 => Suite::Gadgets(LibraryKind::Approx(k)),
                _ => {
                    return Err(format!(
                        "unknown suite {s:?}; known: {}",
                        Suite::NAMES.join(", ")
                    ))
                }
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub message: String,
    /// Where the failing input was written, if it could be.
    pub reproducer: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failure: Option<Failure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "PASS {} seed={} trials={}",
                self.suite, self.seed, self.passed
            ),
            Some(fail) => {
                write!(
                    f,
                    "FAIL {} seed={} trial={}: {}",
                    self.suite, self.seed, fail.trial, fail.message
                )?;
                if let Some(p) = &fail.reproducer {
                    write!(f, " (input written to {})", p.display())?;
                }
                Ok(())
            }
        }
    }
}

/// A failing trial: message plus the text files that reproduce it.
type TrialError = (String, Vec<(&'static str, String)>);

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn compile_for(
    kind: LibraryKind,
    c: &crate::circuit::MonotoneCircuit,
) -> Result<ReductionArtifact, GadgetError> {
    match kind {
        LibraryKind::Kcore3 => compile_mcvp_to_kcore(c, 3),
        LibraryKind::Truss4 => compile_mcvp_to_truss(c, 4),
        LibraryKind::KlCore => compile_mcvp_to_klcore(c, 2, 0),
        LibraryKind::Approx(k) => compile_mcvp_to_approx_kcore(c, k),
    }
}

fn gadget_trial(kind: LibraryKind, rng: &mut ChaCha8Rng) -> Result<(), TrialError> {
    let size = rng.gen_range(2..=60);
    let mut c = random_circuit(rng, size);
    let start = c.to_text();
    let mut ops: Vec<WireOp> = Vec::new();
    let files = |ops: &[WireOp]| {
        vec![
            ("circuit.txt", start.clone()),
            ("trace.txt", circuit_trace(size, ops).to_text()),
        ]
    };
    let mut art = compile_for(kind, &c).map_err(|e| (e.to_string(), files(&ops)))?;
    for step in 0..=50 {
        if step > 0 {
            let op = random_wire_op(rng, &c).expect("circuits have wires to play with");
            op.apply(&mut c).map_err(|e| (e.to_string(), files(&ops)))?;
            ops.push(op);
            art.replay_wire_update(op)
                .map_err(|e| (e.to_string(), files(&ops)))?;
        }
        let want = c.query_value();
        if art.query() != want {
            return Err((
                format!(
                    "step {step}: target answers {} but the circuit value is {want}",
                    !want
                ),
                files(&ops),
            ));
        }
    }
    Ok(())
}

fn twocore_trial(rng: &mut ChaCha8Rng) -> Result<(), TrialError> {
    let n = rng.gen_range(2..=200);
    let t = random_twocore_trace(rng, n, 1000, 1.25, 0.3);
    let text = t.to_text();
    let fast = replay_twocore(&t, false)
        .map_err(|e| (e.to_string(), vec![("trace.txt", text.clone())]))?;
    let slow =
        replay_twocore(&t, true).map_err(|e| (e.to_string(), vec![("trace.txt", text.clone())]))?;
    match fast.iter().zip(&slow).position(|(a, b)| a != b) {
        None => Ok(()),
        Some(q) => Err((
            format!("query {q}: index says {}, oracle says {}", fast[q], slow[q]),
            vec![("trace.txt", text)],
        )),
    }
}

fn dynxor_trial(rng: &mut ChaCha8Rng) -> Result<(), TrialError> {
    let n = rng.gen_range(1..=256);
    let mut x: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let bits: String = x.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let mut log = String::new();
    let mut inst = compile_dynxor(&x).map_err(|e| (e.to_string(), vec![]))?;
    for _ in 0..500 {
        let i = rng.gen_range(1..=n);
        if rng.gen_bool(0.5) {
            let b = rng.gen_bool(0.5);
            log.push_str(&format!("set {i} {}\n", b as u8));
            inst.update(i, b).map_err(|e| (e.to_string(), vec![]))?;
            x[i - 1] = b;
        } else {
            log.push_str(&format!("query {i}\n"));
            let want = x[..i].iter().fold(false, |a, &b| a ^ b);
            let got = inst.query(i).map_err(|e| (e.to_string(), vec![]))?;
            if got != want {
                return Err((
                    format!("query {i}: circuit says {got}, prefix XOR is {want}"),
                    vec![("x.txt", bits), ("ops.txt", log)],
                ));
            }
        }
    }
    Ok(())
}

fn write_reproducer(
    dir: &Path,
    suite: Suite,
    seed: u64,
    trial: usize,
    files: &[(&str, String)],
) -> Option<PathBuf> {
    if files.is_empty() {
        return None;
    }
    let path = dir.join(format!("{suite}-seed{seed}-trial{trial}"));
    fs::create_dir_all(&path).ok()?;
    for (name, body) in files {
        fs::write(path.join(name), body).ok()?;
    }
    Some(path)
}

/// Runs `trials` trials and stops at the first failure.
pub fn run_suite(suite: Suite, seed: u64, trials: usize, failure_dir: &Path) -> VerifyReport {
    let mut report = VerifyReport {
        suite,
        seed,
        trials,
        passed: 0,
        failure: None,
    };
    if let Suite::Gadgets(kind) = suite {
        if let Err(e) = verify_gadget_library(kind) {
            report.failure = Some(Failure {
                trial: 0,
                message: e.to_string(),
                reproducer: None,
            });
            return report;
        }
    }
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let result = match suite {
            Suite::Gadgets(kind) => gadget_trial(kind, &mut rng),
            Suite::TwocoreFuzz => twocore_trial(&mut rng),
            Suite::DynxorE2e => dynxor_trial(&mut rng),
        };
        if let Err((message, files)) = result {
            let reproducer = write_reproducer(failure_dir, suite, seed, trial, &files);
            report.failure = Some(Failure {
                trial,
                message,
                reproducer,
            });
            return report;
        }
        report.passed += 1;
    }
    report
}
