mod format;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::format::ParseError;
use latticeface::Error as MathError;

/// Exit codes: 0 success, 2 parse error, 3 mathematical inapplicability or
/// degeneracy.
const EXIT_PARSE: u8 = 2;
const EXIT_MATH: u8 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "latticeface",
    version,
    about = "Exact lattice-face polytope checks, transforms, and Ehrhart polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the lattice-face and projection-general-position predicates.
    Check { file: PathBuf },
    /// Transform the polytope into lattice-face position and write the image.
    Transform {
        file: PathBuf,
        /// Path for the transformed polytope file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Ehrhart coefficients via projection volumes.
    Ehrhart {
        file: PathBuf,
        /// Triangulation witness file.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Append the identity table checked for m = 1..=M.
        #[arg(long, value_name = "M")]
        verify: Option<u32>,
    },
    /// Count lattice points of the m-th dilate.
    Count {
        file: PathBuf,
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Euclidean volume.
    Volume { file: PathBuf },
    /// Count lattice points of the nonnegative part.
    Omega { file: PathBuf },
    /// Print a triangulation as vertex-index lists.
    Triangulate {
        file: PathBuf,
        /// Triangulation witness file.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Require every simplex to be lattice-face.
        #[arg(long = "lattice-face")]
        lattice_face: bool,
    },
}

pub enum CliError {
    Parse(ParseError),
    Math(MathError),
    Io(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        CliError::Math(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file } => output::cmd_check(file, cli.format),
        Command::Transform { file, output } => output::cmd_transform(file, output, cli.format),
        Command::Ehrhart {
            file,
            witness,
            verify,
        } => output::cmd_ehrhart(file, witness.as_deref(), *verify, cli.format),
        Command::Count { file, m } => output::cmd_count(file, *m, cli.format),
        Command::Volume { file } => output::cmd_volume(file, cli.format),
        Command::Omega { file } => output::cmd_omega(file, cli.format),
        Command::Triangulate {
            file,
            witness,
            lattice_face,
        } => output::cmd_triangulate(file, witness.as_deref(), *lattice_face, cli.format),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Parse(e)) => {
            eprintln!("parse error: line {}, column {}: {}", e.line, e.col, e.msg);
            ExitCode::from(EXIT_PARSE)
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_MATH)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::FAILURE
        }
    }
}
