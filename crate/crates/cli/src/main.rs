use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand};
use nilcx::kuranishi::DEFAULT_ORDER;
use nilcx_cli::alg::{self, AlgebraFile};
use nilcx_cli::commands::{self, Report};
use nilcx_cli::CliError;

/// Abelian complex structures on nilpotent Lie algebras: cohomology,
/// Kuranishi deformations and their classification, in exact arithmetic.
#[derive(Parser)]
#[command(name = "nilcx", version)]
struct Cli {
    /// Complex structure block to use (defaults to the first one in the file).
    #[arg(long, global = true)]
    structure: Option<String>,

    /// Print machine-readable JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Jacobi, nilpotency and every complex structure in the file.
    Validate { file: PathBuf },
    /// Ascending series and adapted frame.
    Series { file: PathBuf },
    /// Dolbeault cohomology of the holomorphic tangent complex in one degree.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Kuranishi series, obstructions and, with --at, the deformed structure.
    Kuranishi {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
        /// Comma-separated parameter values, e.g. 0,0,0,1/10,0.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Harmonic directions whose brackets with every (0,1)-form vanish.
    AbelianLocus { file: PathBuf },
    /// List built-in algebras, or print one as an .alg file.
    Catalog { name: Option<String> },
}

fn load(path: &Path) -> Result<AlgebraFile, CliError> {
    Ok(alg::parse_file(path)?)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let s = cli.structure.as_deref();
    match &cli.command {
        Command::Validate { file } => commands::validate(&load(file)?),
        Command::Series { file } => commands::series(&load(file)?, s),
        Command::Cohomology { file, degree } => commands::cohomology(&load(file)?, s, *degree),
        Command::Kuranishi { file, order, at } => {
            commands::kuranishi(&load(file)?, s, *order, at.as_deref())
        }
        Command::AbelianLocus { file } => commands::abelian_locus(&load(file)?, s),
        Command::Catalog { name } => commands::catalog(name.as_deref()),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.json));
            process::exit(report.code as i32);
        }
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(e.exit_code() as i32);
        }
    }
}
