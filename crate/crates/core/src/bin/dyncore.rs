use std::error::Error;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dyncore::bench::{run_bench, BenchConfig, BenchSubject};
use dyncore::circuit::MonotoneCircuit;
use dyncore::gadgets::{
    compile_ksat, compile_mcvp_to_approx_kcore, compile_mcvp_to_kcore, compile_mcvp_to_klcore,
    compile_mcvp_to_truss, compile_oumv, read_dimacs, read_matrix, write_bundle, write_ksat_bundle,
    OuMvMode, ReductionArtifact, DEFAULT_MAX_SPLIT,
};
use dyncore::graph::{
    kl_core, oracle_core_decomposition, oracle_truss_decomposition, static_core_decomposition,
    static_truss_decomposition, Digraph, Graph,
};
use dyncore::trace::{replay_twocore, TraceFile};
use dyncore::verify::{run_suite, Suite};

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "dyncore",
    version,
    about = "Dynamic core decomposition toolkit"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Answer from the definitional oracles instead of the fast algorithms.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Core value of every vertex of an edge list.
    Core { graph: PathBuf },
    /// Truss value of every edge of an edge list.
    Truss { graph: PathBuf },
    /// Vertices of the (k,l)-core of a directed edge list.
    Klcore {
        graph: PathBuf,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(short, default_value_t = 0)]
        l: usize,
    },
    /// Replays a twocore trace, printing 0/1 per query.
    Twocore { trace: PathBuf },
    /// Compiles a circuit, OuMv matrix or CNF into an on-disk bundle.
    Reduce(ReduceArgs),
    /// Runs a verification suite; exits nonzero on the first failure.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Where failing inputs are written.
        #[arg(long, default_value = "verify-failures")]
        failures: PathBuf,
    },
    /// Timing sweep over graph sizes.
    Bench {
        subject: String,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096, 8192, 16384])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 2000)]
        updates: usize,
        #[arg(long, default_value_t = 2000)]
        queries: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Circuit,
    Oumv,
    Ksat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetKind {
    Kcore,
    Approx,
    Truss,
    Klcore,
}

#[derive(Args)]
struct ReduceArgs {
    source: PathBuf,
    #[arg(long, value_enum, default_value_t = Source::Circuit)]
    from: Source,
    /// Graph target; a circuit source needs one, an OuMv matrix may take one.
    #[arg(long, value_enum)]
    target: Option<TargetKind>,
    #[arg(short, long)]
    k: Option<usize>,
    #[arg(short, long, default_value_t = 0)]
    l: usize,
    /// Split fraction for k-SAT.
    #[arg(long, default_value_t = 0.25)]
    delta: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_SPLIT)]
    max_split: usize,
    #[arg(short, long)]
    out: PathBuf,
}

fn open(path: &Path) -> Res<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).map_err(|e| format!("{}: {e}", path.display()))?,
    ))
}

fn compile(
    c: &MonotoneCircuit,
    target: TargetKind,
    k: Option<usize>,
    l: usize,
) -> Res<ReductionArtifact> {
    Ok(match target {
        TargetKind::Kcore => compile_mcvp_to_kcore(c, k.unwrap_or(3))?,
        TargetKind::Approx => compile_mcvp_to_approx_kcore(c, k.unwrap_or(2))?,
        TargetKind::Truss => compile_mcvp_to_truss(c, k.unwrap_or(4))?,
        TargetKind::Klcore => compile_mcvp_to_klcore(c, k.unwrap_or(2), l)?,
    })
}

fn reduce(a: &ReduceArgs, out: &mut impl Write) -> Res<()> {
    match a.from {
        Source::Circuit => {
            let c = MonotoneCircuit::read_text(open(&a.source)?)?;
            let target = a
                .target
                .ok_or("--target is required for a circuit source")?;
            let art = compile(&c, target, a.k, a.l)?;
            write_bundle(&a.out, &art, Some(&c))?;
            writeln!(
                out,
                "bundle {} vertices {} edges {}",
                a.out.display(),
                art.target.num_vertices(),
                art.target.num_edges()
            )?;
        }
        Source::Oumv => {
            let m = read_matrix(open(&a.source)?)?;
            let inst = compile_oumv(&m, OuMvMode::FullyDynamic)?;
            std::fs::create_dir_all(&a.out)?;
            let c = &inst.circuit.circuit;
            std::fs::write(a.out.join("circuit.txt"), c.to_text())?;
            writeln!(
                out,
                "circuit {} gates {}",
                a.out.join("circuit.txt").display(),
                c.size()
            )?;
            if let Some(target) = a.target {
                let art = compile(c, target, a.k, a.l)?;
                write_bundle(&a.out, &art, Some(c))?;
                writeln!(
                    out,
                    "bundle {} vertices {} edges {}",
                    a.out.display(),
                    art.target.num_vertices(),
                    art.target.num_edges()
                )?;
            }
        }
        Source::Ksat => {
            let f = read_dimacs(open(&a.source)?)?;
            let mut inst = compile_ksat(&f, a.delta, a.max_split)?;
            write_ksat_bundle(&a.out, &inst, a.max_split)?;
            let sat = inst.solve()?;
            writeln!(
                out,
                "bundle {} gates {} split {}",
                a.out.display(),
                inst.circuit.circuit.size(),
                inst.split
            )?;
            writeln!(out, "{}", if sat { "sat" } else { "unsat" })?;
        }
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Res<bool> {
    let json = cli.format == Format::Json;
    match &cli.cmd {
        Cmd::Core { graph } => {
            let g = Graph::read_edge_list(open(graph)?)?;
            let d = if cli.oracle {
                oracle_core_decomposition(&g)
            } else {
                static_core_decomposition(&g)
            };
            if json {
                writeln!(out, "{}", json!({ "core_value": d.core_value }))?;
            } else {
                for (u, k) in d.core_value.iter().enumerate() {
                    writeln!(out, "{u} {k}")?;
                }
            }
        }
        Cmd::Truss { graph } => {
            let g = Graph::read_edge_list(open(graph)?)?;
            let d = if cli.oracle {
                oracle_truss_decomposition(&g)
            } else {
                static_truss_decomposition(&g)
            };
            if json {
                let rows: Vec<_> = g
                    .edges()
                    .map(|(u, v)| [u, v, d.value(u, v).unwrap_or(2)])
                    .collect();
                writeln!(out, "{}", json!({ "truss_value": rows }))?;
            } else {
                for (u, v) in g.edges() {
                    writeln!(out, "{u} {v} {}", d.value(u, v).unwrap_or(2))?;
                }
            }
        }
        Cmd::Klcore { graph, k, l } => {
            let g = Digraph::read_edge_list(open(graph)?)?;
            let core = kl_core(&g, *k, *l);
            if json {
                writeln!(out, "{}", json!({ "k": k, "l": l, "core": core }))?;
            } else {
                for u in core {
                    writeln!(out, "{u}")?;
                }
            }
        }
        Cmd::Twocore { trace } => {
            let t = TraceFile::parse(open(trace)?)?;
            let answers = replay_twocore(&t, cli.oracle)?;
            if json {
                writeln!(out, "{}", json!({ "answers": answers }))?;
            } else {
                for a in answers {
                    writeln!(out, "{}", a as u8)?;
                }
            }
        }
        Cmd::Reduce(a) => reduce(a, out)?,
        Cmd::Verify {
            suite,
            trials,
            failures,
        } => {
            let suite: Suite = suite.parse()?;
            let r = run_suite(suite, cli.seed, *trials, failures);
            if json {
                let fail = r.failure.as_ref().map(|f| {
                    json!({ "trial": f.trial, "message": f.message, "reproducer": f.reproducer })
                });
                writeln!(
                    out,
                    "{}",
                    json!({ "suite": suite.to_string(), "seed": r.seed, "passed": r.passed, "failure": fail })
                )?;
            } else {
                writeln!(out, "{r}")?;
            }
            return Ok(r.ok());
        }
        Cmd::Bench {
            subject,
            sizes,
            reps,
            updates,
            queries,
        } => {
            let subject: BenchSubject = subject.parse()?;
            let cfg = BenchConfig {
                sizes: sizes.clone(),
                reps: *reps,
                updates: *updates,
                queries: *queries,
                seed: cli.seed,
                ..BenchConfig::default()
            };
            let r = run_bench(subject, &cfg);
            if json {
                writeln!(out, "{}", r.to_json())?;
            } else {
                write!(out, "{r}")?;
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
