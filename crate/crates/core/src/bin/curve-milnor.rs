use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use curve_milnor::frontend::{analyze, Flags, FrontendError};
use curve_milnor::graph::{serialize, Format};

#[derive(Parser)]
#[command(
    name = "curve-milnor",
    version,
    about = "Exact analysis of plane curve singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Verify {
    Jacobian,
    Arcs,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a germ and report its invariants.
    Analyze {
        /// Polynomial in x and y, e.g. "y^2 + x^3".
        polynomial: String,
        /// Write the JSON report here; "-" for stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the resolution graph in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Show the monodromy zeta function
        #[arg(long)]
        zeta: bool,
        /// Show the characteristic polynomial and Milnor number
        #[arg(long)]
        charpoly: bool,
        /// Show the spectrum
        #[arg(long)]
        spectrum: bool,
        /// Show the motivic Milnor fiber
        #[arg(long)]
        motivic: bool,
        /// Cross-check against brute-force oracles
        #[arg(long, value_enum)]
        verify: Option<Verify>,
        /// Prime for arc verification; repeatable.
        #[arg(long = "arc-prime")]
        arc_primes: Vec<u64>,
        /// Largest truncation level for arc verification (default 7)
        #[arg(long)]
        arc_nmax: Option<u32>,
        /// Largest degree of a coefficient field extension
        #[arg(long)]
        max_tower_degree: Option<usize>,
        /// Largest number of resolution floors
        #[arg(long)]
        max_depth: Option<usize>,
    },
}

fn fail(e: &FrontendError) -> ExitCode {
    eprintln!("error[{}]: {e}", e.code());
    ExitCode::from(e.exit_code() as u8)
}

fn write(path: &PathBuf, contents: &str) -> Result<(), ExitCode> {
    if path.as_os_str() == "-" {
        print!("{contents}");
        return Ok(());
    }
    std::fs::write(path, contents).map_err(|e| {
        eprintln!("error[E_IO]: {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let Command::Analyze {
        polynomial,
        json,
        dot,
        zeta,
        charpoly,
        spectrum,
        motivic,
        verify,
        arc_primes,
        arc_nmax,
        max_tower_degree,
        max_depth,
    } = Cli::parse().command;

    let mut flags = Flags::default();
    if zeta || charpoly || spectrum || motivic {
        flags.zeta = zeta;
        flags.charpoly = charpoly;
        flags.spectrum = spectrum;
        flags.motivic = motivic;
    }
    flags.verify_jacobian = matches!(verify, Some(Verify::Jacobian | Verify::All));
    flags.verify_arcs = matches!(verify, Some(Verify::Arcs | Verify::All));
    if !arc_primes.is_empty() {
        flags.arc_primes = arc_primes;
    }
    if let Some(n) = arc_nmax {
        flags.arc_nmax = n;
    }
    if let Some(d) = max_tower_degree {
        flags.resolve.max_tower_degree = d;
    }
    if let Some(k) = max_depth {
        flags.resolve.max_depth = k;
    }

    let report = match analyze(&polynomial, &flags) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if let Some(path) = &dot {
        let g = match curve_milnor::frontend::parse_curve(&polynomial)
            .and_then(|f| curve_milnor::frontend::annotated_graph(&f, &flags.resolve))
        {
            Ok(g) => g,
            Err(e) => return fail(&e),
        };
        if let Err(code) = write(path, &serialize(&g, Format::Dot)) {
            return code;
        }
    }
    match &json {
        Some(path) => {
            if let Err(code) = write(path, &report.to_json()) {
                return code;
            }
            if path.as_os_str() != "-" {
                print!("{}", report.to_text());
            }
        }
        None => print!("{}", report.to_text()),
    }
    ExitCode::SUCCESS
}
