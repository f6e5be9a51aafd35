use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qgraph::io::{
    cmd_nodal, cmd_spectrum, cmd_sweep, cmd_verify, cmd_weylgap, cmd_zeta, parse_graph_file, CommandOptions, GraphFile,
    Suite,
};

/// Spectra, nodal counts and flux response of quantum graphs. Output is CSV.
#[derive(Parser)]
#[command(name = "qgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues up to --kmax: index,k,lambda,multiplicity.
    Spectrum(GraphArgs),
    /// The real secular function on the scan grid: k,zeta.
    Zeta(GraphArgs),
    /// Counting function minus Weyl's term: k,gap.
    Weylgap(GraphArgs),
    /// Nodal counts and surplus at zero flux.
    Nodal(GraphArgs),
    /// Lowest --bands eigenvalues over a flux grid.
    Sweep(GraphArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Largest k to solve for.
    #[arg(long = "kmax", default_value_t = 10.0)]
    k_max: f64,
    /// Scan step in k (default π/(20𝓛)).
    #[arg(long)]
    grid_step: Option<f64>,
    /// Root refinement tolerance in k.
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated cycle fluxes, overriding the file.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    flux: Option<Vec<f64>>,
    /// Number of bands for sweep.
    #[arg(long, default_value_t = 4)]
    bands: usize,
    /// Grid points per cycle for sweep.
    #[arg(long, default_value_t = 9)]
    points: usize,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 20_240_601)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph description file.
    graph: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of interlacing, isospectral, magnetic-nodal, oracles.
    #[arg(long)]
    suite: Suite,
    /// Graph for the interlacing and magnetic-nodal suites (default: the dihedral graph).
    graph: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

impl Common {
    fn options(&self) -> CommandOptions {
        CommandOptions {
            k_max: self.k_max,
            grid_step: self.grid_step,
            tol: self.tol,
            flux: self.flux.clone(),
            bands: self.bands,
            points: self.points,
            seed: self.seed,
        }
    }
}

fn load(path: &PathBuf) -> Result<GraphFile<f64>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    type Cmd = fn(&GraphFile<f64>, &CommandOptions) -> qgraph::Result<String>;
    let (args, cmd): (&GraphArgs, Cmd) = match &cli.command {
        Command::Spectrum(a) => (a, cmd_spectrum),
        Command::Zeta(a) => (a, cmd_zeta),
        Command::Weylgap(a) => (a, cmd_weylgap),
        Command::Nodal(a) => (a, cmd_nodal),
        Command::Sweep(a) => (a, cmd_sweep),
        Command::Verify(v) => {
            let file = v.graph.as_ref().map(load).transpose()?;
            let report = cmd_verify(v.suite, file.as_ref(), &v.common.options());
            emit(&v.common.out, &report.render())?;
            return Ok(report.passed());
        }
    };
    let file = load(&args.graph)?;
    let text = cmd(&file, &args.common.options()).map_err(|e| e.to_string())?;
    emit(&args.common.out, &text)?;
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
