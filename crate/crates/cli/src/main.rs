use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use modlat::bounds::Bounds;
use modlat::enumeration::enumerate_submodules;
use modlat::error::Error;
use modlat::graph::{build_graph, invariant_report};
use modlat::harness::{self, Manifest};
use modlat::module::{Module, SubmoduleLattice};
use modlat::specfile::parse_spec;

const SCHEMA_VERSION: u32 = 1;

/// Submodule lattices of finite modules and their intersection graphs.
#[derive(Parser)]
#[command(name = "modlat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the submodules of a module, by composition length.
    Enumerate {
        spec: PathBuf,
        /// Also list every submodule with its canonical label.
        #[arg(long)]
        list: bool,
    },
    /// Write the intersection graph of proper nonzero submodules.
    Graph {
        spec: PathBuf,
        #[arg(long, default_value = "dot")]
        format: String,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute graph invariants and compare them with the closed forms, as JSON.
    Invariants { spec: PathBuf },
    /// Run the registered checks and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Small)]
        suite: Suite,
        /// Run only these check ids (repeatable).
        #[arg(long)]
        only: Vec<String>,
        /// Worker threads; all available cores by default.
        #[arg(long)]
        jobs: Option<usize>,
        /// Instance manifest to use instead of the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// List the registered check ids.
    Checks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Small,
    Full,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Small => "small",
            Suite::Full => "full",
        }
    }
}

enum Failure {
    Checks,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path, bounds: &Bounds) -> Result<SubmoduleLattice, Failure> {
    let spec = parse_spec(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(enumerate_submodules(&Module::new(spec, bounds)?)?)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn enumerate(lattice: &SubmoduleLattice, list: bool) -> String {
    let strata: Vec<String> = lattice.strata().iter().map(|s| s.len().to_string()).collect();
    let mut out = format!(
        "submodules: {}\ncomposition length: {}\nstrata: [{}]\n",
        lattice.len(),
        lattice.composition_length(),
        strata.join(", ")
    );
    if list {
        for i in 0..lattice.len() {
            writeln!(out, "{}\t{}", lattice.length(i), lattice.label(i)).unwrap();
        }
    }
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn graph_text(lattice: &SubmoduleLattice, format: &str) -> Result<String, Failure> {
    let ig = build_graph(lattice);
    let g = ig.graph();
    match format {
        "dot" => {
            let mut out = String::from("graph intersection {\n");
            for v in 0..g.vertex_count() {
                writeln!(out, "  v{v} [label={}];", dot_quote(ig.label(v))).unwrap();
            }
            for (a, b) in g.edges() {
                writeln!(out, "  v{a} -- v{b};").unwrap();
            }
            out.push_str("}\n");
            Ok(out)
        }
        "json" => {
            let vertices: Vec<_> = (0..g.vertex_count())
                .map(|v| json!({"id": v, "label": ig.label(v), "length": lattice.length(ig.member(v))}))
                .collect();
            let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(a, b)| [a, b]).collect();
            let doc = json!({"schema_version": SCHEMA_VERSION, "vertices": vertices, "edges": edges});
            Ok(serde_json::to_string_pretty(&doc).unwrap() + "\n")
        }
        other => Err(Failure::Usage(format!("unsupported format `{other}` (expected dot or json)"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let bounds = Bounds::from_env()?;
    match cli.command {
        Command::Enumerate { spec, list } => {
            print!("{}", enumerate(&load_lattice(&spec, &bounds)?, list));
        }
        Command::Graph { spec, format, output } => {
            // Reject the format before doing any work.
            if format != "dot" && format != "json" {
                return Err(Failure::Usage(format!("unsupported format `{format}` (expected dot or json)")));
            }
            let text = graph_text(&load_lattice(&spec, &bounds)?, &format)?;
            emit(&text, output.as_deref())?;
        }
        Command::Invariants { spec } => {
            let report = invariant_report(&load_lattice(&spec, &bounds)?, &bounds)?;
            let mut doc = serde_json::to_value(&report).unwrap();
            doc.as_object_mut()
                .unwrap()
                .insert("schema_version".into(), json!(SCHEMA_VERSION));
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Command::Verify {
            suite,
            only,
            jobs,
            manifest,
        } => {
            if let Some(n) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let m = match &manifest {
                Some(p) => Manifest::parse(&read(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
                None => Manifest::builtin(suite.name())?,
            };
            let report = harness::run_suite(suite.name(), &m, &only, &bounds)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if !report.success() {
                return Err(Failure::Checks);
            }
        }
        Command::Checks => {
            for id in harness::check_ids() {
                println!("{id}\t{}", harness::check_description(id).unwrap_or_default());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
