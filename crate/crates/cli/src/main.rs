mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use schurpos::symfunc::transition::{export_cache, import_cache};
use schurpos::{Basis, Partition};

use commands::{CliError, Family, Target};
use report::{Output, Report};

#[derive(Parser)]
#[command(
    name = "schurpos",
    version,
    about = "Exact symmetric functions, k-Schur branching and Hopf checks"
)]
struct Cli {
    /// Report format: line-delimited JSON records or plain text.
    #[arg(long, value_enum, default_value = "json", global = true)]
    output: Output,
    /// Allow degrees above the desk-scale cap.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

fn partition_arg(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn basis_arg(s: &str) -> Result<Basis, String> {
    s.parse::<Basis>().map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Expand a basis element in a target basis.
    Expand {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated partition, `-` for the empty one.
        #[arg(long, value_parser = partition_arg, allow_hyphen_values = true)]
        index: Partition,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum)]
        basis: Target,
    },
    /// Coordinates of a k-Schur function in the (k+1)-Schur basis.
    Branch {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = partition_arg, allow_hyphen_values = true)]
        lambda: Partition,
    },
    /// Apply θ (h_i ↦ Q_i) to serialized symmetric functions.
    Theta {
        #[arg(long)]
        input: PathBuf,
        /// Output basis; defaults to the input basis.
        #[arg(long, value_parser = basis_arg)]
        basis: Option<Basis>,
    },
    /// Expand in odd one-row P-functions, if possible.
    Gamma {
        #[arg(long)]
        input: PathBuf,
        /// Largest generator index allowed.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Validate a Hopf presentation and map elements to QSym.
    Hopf {
        #[arg(long)]
        presentation: PathBuf,
        /// A basis label, or a product of labels joined by `*`. Repeatable.
        #[arg(long)]
        element: Vec<String>,
    },
    /// Run verification sweeps.
    Verify {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Expand { .. } => "expand",
            Command::Branch { .. } => "branch",
            Command::Theta { .. } => "theta",
            Command::Gamma { .. } => "gamma",
            Command::Hopf { .. } => "hopf",
            Command::Verify { .. } => "verify",
        }
    }
}

fn run(cli: &Cli, args: &[String]) -> Result<bool, CliError> {
    let stdout = std::io::stdout().lock();
    let mut r = Report::start(stdout, cli.output, cli.command.name(), args)?;
    let force = cli.force;
    let mut extra = None;
    match &cli.command {
        Command::Expand {
            family,
            index,
            k,
            basis,
        } => commands::expand(&mut r, *family, index, *k, *basis, force)?,
        Command::Branch { k, lambda } => commands::branch_cmd(&mut r, *k, lambda, force)?,
        Command::Theta { input, basis } => commands::theta_cmd(&mut r, input, *basis, force)?,
        Command::Gamma { input, bound } => commands::gamma_cmd(&mut r, input, *bound, force)?,
        Command::Hopf { presentation, element } => commands::hopf_cmd(&mut r, presentation, element, force)?,
        Command::Verify { suite, max_degree, k } => {
            extra = Some(commands::verify_cmd(&mut r, suite, *max_degree, *k, force)?)
        }
    }
    Ok(r.finish(extra)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cache = std::env::var_os("SCHURPOS_CACHE_DIR").map(PathBuf::from);
    if let Some(dir) = &cache {
        if let Err(e) = import_cache(dir) {
            eprintln!("warning: cache import from {}: {e}", dir.display());
        }
    }
    let code = match run(&cli, &args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    };
    if let Some(dir) = cache.as_deref() {
        save_cache(dir);
    }
    code
}

fn save_cache(dir: &Path) {
    if let Err(e) = export_cache(dir) {
        eprintln!("warning: cache export to {}: {e}", dir.display());
    }
}
