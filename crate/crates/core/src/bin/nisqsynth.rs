use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nisqsynth::bench::{bench_architecture, bench_h_ratio, bench_sparseness, BenchConfig, BenchMode, BenchTable, GateProbs};
use nisqsynth::cnot::{expand_templates, pmh_synthesize, synthesize_constrained};
use nisqsynth::gf2::simulate_cnot_circuit;
use nisqsynth::graph::{builtin_architecture, Architecture, ARCHITECTURE_NAMES};
use nisqsynth::optimizer::cancel_pass;
use nisqsynth::phase::{extract_sum_over_paths, synthesize_cnot_rz, PhasePolynomial, SumOverPaths};
use nisqsynth::sim::{verify_equivalence, VerifyMode, DENSE_CAP};
use nisqsynth::universal::{route_segments, route_universal};
use nisqsynth::{BinaryMatrix, Circuit, ConnectivityGraph, Method, SynthesisReport};

#[derive(Parser)]
#[command(name = "nisqsynth", version, about = "Connectivity-aware circuit synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a CNOT circuit for a binary matrix.
    SynthCnot {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        target: Target,
        /// Use a synthesize-then-route baseline instead.
        #[arg(long, value_enum)]
        baseline: Option<Baseline>,
        #[command(flatten)]
        out: Output,
    },
    /// Synthesize a CNOT+Rz circuit from a circuit or a (phase, matrix) pair.
    SynthPhase {
        #[arg(long, conflicts_with_all = ["phase", "matrix"])]
        circuit: Option<PathBuf>,
        /// Lines `bitstring num/den`.
        #[arg(long, requires = "matrix")]
        phase: Option<PathBuf>,
        #[arg(long, requires = "phase")]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Route a {CNOT, H, S, T, S†, T†} circuit onto a device.
    Route {
        #[arg(long)]
        circuit: PathBuf,
        #[command(flatten)]
        target: Target,
        /// Largest register checked with dense unitaries; larger ones are
        /// checked block by block.
        #[arg(long, default_value_t = 6)]
        verify_n_max: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check two circuits for equivalence.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Unitary)]
        mode: Mode,
    },
    /// Run a benchmark suite.
    Bench {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Built-in architectures.
    Arch {
        #[command(subcommand)]
        action: ArchAction,
    },
}

#[derive(Args)]
struct Target {
    /// Graph file: `n m` then `m` lines `u v`.
    #[arg(long, conflicts_with = "arch", required_unless_present = "arch")]
    graph: Option<PathBuf>,
    /// Built-in architecture name.
    #[arg(long)]
    arch: Option<String>,
}

#[derive(Args)]
struct Output {
    /// Write the circuit here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Write a JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Skip the cancellation pass on the result.
    #[arg(long)]
    no_cleanup: bool,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the per-bucket summary as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    no_cleanup: bool,
}

#[derive(Subcommand)]
enum Suite {
    /// Random graphs of varying edge probability.
    Sparseness {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0")]
        buckets: Vec<f64>,
        #[arg(long, value_enum, default_value_t = BenchKind::Cnot)]
        mode: BenchKind,
        #[command(flatten)]
        common: Common,
    },
    /// A fixed device; sizes are gate counts of the generating circuits.
    Arch {
        #[arg(long)]
        arch: String,
        #[arg(long, value_delimiter = ',', default_value = "50,100,200,400,800")]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = BenchKind::Cnot)]
        mode: BenchKind,
        #[command(flatten)]
        common: Common,
    },
    /// Universal circuits with a varying share of Hadamards.
    HRatio {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1000)]
        gates: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,0.02,0.05,0.1,0.15,0.2")]
        p_h: Vec<f64>,
        #[arg(long, default_value_t = 6)]
        verify_n_max: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum ArchAction {
    List,
    /// Print a graph in the graph file format.
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Baseline {
    /// PMH with partitioning, then templates.
    Pmh,
    /// Plain Gaussian elimination, then templates.
    Templates,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Gf2,
    Unitary,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    Cnot,
    CnotRz,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<nisqsynth::Error> for Failure {
    fn from(e: nisqsynth::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(t: &Target) -> CliResult<ConnectivityGraph> {
    match (&t.graph, &t.arch) {
        (Some(path), _) => {
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(ConnectivityGraph::parse_text(&read(path)?)?.with_name(name))
        }
        (None, Some(name)) => Ok(builtin_architecture(name)?),
        (None, None) => Err(Failure::Input("give --graph or --arch".into())),
    }
}

fn load_circuit(path: &Path) -> CliResult<Circuit> {
    Ok(Circuit::parse(&read(path)?)?)
}

fn edge_check(c: &Circuit, g: &ConnectivityGraph) -> CliResult<()> {
    for gate in c.gates().iter().filter(|x| x.is_cnot()) {
        let ([u, v], _) = gate.wires();
        if !g.has_edge(u, v) {
            return Err(Failure::Verification(format!("{gate} is not on the graph")));
        }
    }
    Ok(())
}

fn tidy(c: Circuit, out: &Output) -> Circuit {
    if out.no_cleanup {
        c
    } else {
        cancel_pass(&c)
    }
}

fn emit(c: Circuit, mut report: SynthesisReport, out: &Output) -> CliResult<()> {
    report.recount(&c);
    if let Some(seed) = out.seed {
        report = report.with_seed(seed);
    }
    match &out.output {
        Some(path) => write(path, &c.emit())?,
        None => print!("{}", c.emit()),
    }
    if let Some(path) = &out.report {
        write(path, &report.to_json())?;
    }
    eprintln!(
        "{:?}: {} CNOT, {} gates, depth {}",
        report.method, report.counts.cnot, report.counts.total, report.depth
    );
    Ok(())
}

fn synth_cnot(matrix: &Path, target: &Target, baseline: Option<Baseline>, out: &Output) -> CliResult<()> {
    let a = BinaryMatrix::parse_text(&read(matrix)?)?;
    let g = load_graph(target)?;
    let start = Instant::now();
    let (c, report) = match baseline {
        None => synthesize_constrained(&a, &g)?,
        Some(b) => {
            let (partition, method) = match b {
                Baseline::Pmh => (true, Method::PmhTemplates),
                Baseline::Templates => (false, Method::Templates),
            };
            if a.dim() != g.node_count() {
                return Err(Failure::Input(format!("matrix is {0}x{0}, graph has {1} nodes", a.dim(), g.node_count())));
            }
            let c = expand_templates(&pmh_synthesize(&a, partition)?, &g)?;
            let r = SynthesisReport::new(method, g.name(), &c, start.elapsed());
            (c, r)
        }
    };
    let c = tidy(c, out);
    edge_check(&c, &g)?;
    if simulate_cnot_circuit(&c)? != a {
        return Err(Failure::Verification("output does not implement the matrix".into()));
    }
    emit(c, report, out)
}

fn synth_phase(
    circuit: Option<&Path>,
    phase: Option<&Path>,
    matrix: Option<&Path>,
    target: &Target,
    out: &Output,
) -> CliResult<()> {
    let g = load_graph(target)?;
    let s = match (circuit, phase, matrix) {
        (Some(c), _, _) => extract_sum_over_paths(&load_circuit(c)?)?,
        (None, Some(p), Some(m)) => {
            let linear = BinaryMatrix::parse_text(&read(m)?)?;
            let phase = PhasePolynomial::parse_text(linear.dim(), &read(p)?)?;
            SumOverPaths::new(phase, linear)?
        }
        _ => return Err(Failure::Input("give --circuit, or --phase with --matrix".into())),
    };
    let (c, report) = synthesize_cnot_rz(&s, &g)?;
    let c = tidy(c, out);
    edge_check(&c, &g)?;
    if extract_sum_over_paths(&c)? != s {
        return Err(Failure::Verification("output has a different sum-over-paths form".into()));
    }
    emit(c, report, out)
}

fn route(circuit: &Path, target: &Target, verify_n_max: usize, out: &Output) -> CliResult<()> {
    let input = load_circuit(circuit)?;
    let g = load_graph(target)?;
    let (c, report) = route_universal(&input, &g)?;
    let c = tidy(c, out);
    edge_check(&c, &g)?;
    if input.num_qubits() <= verify_n_max.min(DENSE_CAP) {
        let r = verify_equivalence(&input, &c, VerifyMode::Unitary)?;
        if !r.pass {
            return Err(Failure::Verification(format!("unitary deviation {:e}", r.deviation)));
        }
    } else {
        for seg in route_segments(&input, &g)? {
            let same = if seg.original.h_count() > 0 {
                seg.original == seg.routed
            } else {
                extract_sum_over_paths(&seg.original)? == extract_sum_over_paths(&seg.routed)?
            };
            if !same {
                return Err(Failure::Verification("a routed block differs from its original".into()));
            }
        }
    }
    emit(c, report, out)
}

fn verify(a: &Path, b: &Path, mode: Mode) -> CliResult<()> {
    let mode = match mode {
        Mode::Gf2 => VerifyMode::Gf2,
        Mode::Unitary => VerifyMode::Unitary,
    };
    let r = verify_equivalence(&load_circuit(a)?, &load_circuit(b)?, mode)?;
    println!("{}", serde_json::to_string(&r).expect("report serialises"));
    if r.pass {
        Ok(())
    } else {
        Err(Failure::Verification("circuits differ".into()))
    }
}

fn config(common: &Common) -> BenchConfig {
    BenchConfig {
        trials: common.trials,
        seed: common.seed,
        cleanup: !common.no_cleanup,
        ..BenchConfig::default()
    }
}

fn kind(k: BenchKind) -> BenchMode {
    match k {
        BenchKind::Cnot => BenchMode::Cnot,
        BenchKind::CnotRz => BenchMode::CnotRz,
    }
}

fn publish(table: &BenchTable, common: &Common) -> CliResult<()> {
    match &common.csv {
        Some(path) => write(path, &table.to_csv())?,
        None => print!("{}", table.to_csv()),
    }
    if let Some(path) = &common.report {
        write(path, &serde_json::to_string_pretty(&table.summary()).expect("summary serialises"))?;
    }
    if !table.excluded.is_empty() {
        eprintln!("{} trials excluded", table.excluded.len());
    }
    Ok(())
}

fn bench(suite: &Suite) -> CliResult<()> {
    match suite {
        Suite::Sparseness { n, buckets, mode, common } => {
            let cfg = BenchConfig { n: *n, ..config(common) };
            publish(&bench_sparseness(&cfg, buckets, kind(*mode))?, common)
        }
        Suite::Arch { arch, sizes, mode, common } => {
            let g = builtin_architecture(arch)?;
            publish(&bench_architecture(&config(common), &g, sizes, kind(*mode))?, common)
        }
        Suite::HRatio { target, gates, p_h, verify_n_max, common } => {
            let g = load_graph(target)?;
            let cfg = BenchConfig {
                n: g.node_count(),
                gate_count: *gates,
                gate_probs: GateProbs::with_h(0.0),
                verify_n_max: *verify_n_max,
                ..config(common)
            };
            publish(&bench_h_ratio(&cfg, &g, p_h)?, common)
        }
    }
}

fn arch(action: &ArchAction) -> CliResult<()> {
    match action {
        ArchAction::List => {
            for name in ARCHITECTURE_NAMES {
                match name.parse::<Architecture>() {
                    Ok(a) => {
                        let g = a.graph();
                        println!("{name}\t{} nodes, {} edges\t{}", g.node_count(), g.edge_count(), a.description().replace('\n', " "));
                    }
                    Err(_) => println!("{name}\tparametric"),
                }
            }
            Ok(())
        }
        ArchAction::Show { name } => {
            print!("{}", builtin_architecture(name)?.to_text());
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::SynthCnot { matrix, target, baseline, out } => synth_cnot(matrix, target, *baseline, out),
        Command::SynthPhase { circuit, phase, matrix, target, out } => {
            synth_phase(circuit.as_deref(), phase.as_deref(), matrix.as_deref(), target, out)
        }
        Command::Route { circuit, target, verify_n_max, out } => route(circuit, target, *verify_n_max, out),
        Command::Verify { a, b, mode } => verify(a, b, *mode),
        Command::Bench { suite } => bench(suite),
        Command::Arch { action } => arch(action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
