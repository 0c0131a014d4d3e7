use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypmut::packing::RectKind;
use hypmut::pretzel::{CertificationMode, MutationKind};
use hypmut_cli::{cmd_certify, cmd_mutants, cmd_pack, cmd_thresholds, write_file, CliError, Outcome, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "hypmut",
    version,
    about = "Thresholds, cusp packings and mutant counts for pretzel knots"
)]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,

    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tube-radius, length and normalized-length thresholds for a surface.
    Thresholds {
        /// Absolute Euler characteristic of the surface.
        #[arg(long)]
        chi: f64,
    },
    /// Solve a cusp rectangle packing.
    Pack {
        #[arg(value_enum)]
        kind: PackKind,
        #[arg(long)]
        n: usize,
        /// Write an SVG picture of the packing.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// Write the JSON report to this file.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Certify a pretzel tuple.
    Certify {
        /// Comma-separated twist parameters.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Cusped)]
        mode: ModeArg,
    },
    /// Enumerate mutants of a pretzel tuple up to dihedral symmetry.
    Mutants {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = GeneratorArg::All)]
        generators: GeneratorArg,
        /// Lift the orbit size guard.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PackKind {
    Crossing,
    Knot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Cusped,
    Closed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeneratorArg {
    All,
    Unlinked,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (outcome, extra_json) = match &cli.command {
        Command::Thresholds { chi } => (cmd_thresholds(*chi)?, None),
        Command::Pack { kind, n, svg, json } => {
            let kind = match kind {
                PackKind::Crossing => RectKind::CrossingCircle,
                PackKind::Knot => RectKind::KnotCusp,
            };
            (cmd_pack(kind, *n, svg.as_deref())?, json.clone())
        }
        Command::Certify { q, mode } => {
            let mode = match mode {
                ModeArg::Cusped => CertificationMode::Cusped,
                ModeArg::Closed => CertificationMode::Closed,
            };
            (cmd_certify(q, mode)?, None)
        }
        Command::Mutants { q, generators, force } => {
            let kind = match generators {
                GeneratorArg::All => MutationKind::All,
                GeneratorArg::Unlinked => MutationKind::UnlinkedOnly,
            };
            (cmd_mutants(q, kind, *force)?, None)
        }
    };
    let json = outcome.document.to_json();
    for path in [cli.json_out.as_ref(), extra_json.as_ref()].into_iter().flatten() {
        write_file(path, &json)?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(outcome.document.to_json().as_bytes());
            if !cli.quiet {
                eprint!("{}", outcome.summary);
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            for line in e.details() {
                eprintln!("  {line}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
