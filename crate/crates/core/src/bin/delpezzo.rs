use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use delpezzo::cli::{run_classify, run_sweep, run_tiger, Outcome};

#[derive(Parser)]
#[command(name = "delpezzo", version, about = "Cylinders and tigers on du Val del Pezzo surfaces")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide cylinder existence for a spec file.
    Classify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and check a tiger certificate.
    Tiger {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print every computation step to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Classify every valid spec and build every demanded certificate.
    Sweep {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (outcome, out): (Outcome, Option<PathBuf>) = match args.command {
        Command::Classify { spec, out } => (run_classify(&spec), out),
        Command::Tiger { spec, out, trace } => (run_tiger(&spec, trace), out),
        Command::Sweep { out } => (run_sweep(), out),
    };
    eprint!("{}", outcome.stderr);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.stdout) {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.stdout),
    }
    ExitCode::from(outcome.code as u8)
}
