use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use compat_lie::{parse, run, run_property, CliError, Command, Format, Mode, Report};

/// Exact computations for compatible Lie algebras given by structure
/// constants.
#[derive(Parser)]
#[command(name = "compat-lie", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Print residual vectors of failing checks in text output.
    #[arg(long, global = true)]
    witness: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Validate the brackets, the pair, the representation and kernel brackets.
    Check { file: PathBuf },
    /// Cohomology dimensions with coefficients in [rep] (adjoint if absent).
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
        /// Reduced complex: second differential on the kernel of the first.
        #[arg(long)]
        reduced: bool,
    },
    /// Check an infinitesimal deformation and/or a Nijenhuis operator.
    Deform {
        file: PathBuf,
        /// Cochain names `W1[,W2]` for the two components.
        #[arg(long)]
        omega: Option<String>,
        /// Operator name.
        #[arg(long)]
        nijenhuis: Option<String>,
    },
    /// Build the extension of the pair by the [rep] module with cochains
    /// `omega1`, `omega2`.
    Extend {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Operator name of a gauge map from the algebra to the module.
        #[arg(long)]
        xi: Option<String>,
    },
    /// Reduced cohomology with polynomial Lie-Poisson coefficients.
    Poisson {
        file: PathBuf,
        #[arg(long)]
        poly_degree: usize,
        #[arg(long)]
        max_degree: usize,
    },
    /// Randomized identity checks.
    Property {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn load(file: &PathBuf, cmd: Command) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(file)?;
    let doc = parse(&text)?;
    run(&cmd, &doc, cmd.echo(&file.display().to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match cli.command {
        Sub::Check { file } => load(&file, Command::Check),
        Sub::Cohomology { file, max_degree, reduced } => load(&file, Command::Cohomology { max_degree, reduced }),
        Sub::Deform { file, omega, nijenhuis } => load(&file, Command::Deform { omega, nijenhuis }),
        Sub::Extend { file, mode, xi } => load(&file, Command::Extend { mode, xi }),
        Sub::Poisson { file, poly_degree, max_degree } => load(&file, Command::Poisson { poly_degree, max_degree }),
        Sub::Property { seed, count } => run_property(seed, count),
    };
    match result {
        Ok(mut report) => {
            report.elapsed = Some(start.elapsed());
            print!("{}", report.render(cli.format, cli.witness));
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
