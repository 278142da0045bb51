use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use relci::verdicts::Orientation;
use relci_cli::commands::{cmd_cones, cmd_contact, cmd_example, cmd_invariants, cmd_oracle, cmd_sweep, cmd_verdict, ContactFile};
use relci_cli::error::CliError;
use relci_cli::{CliResult, Instance, Report};

#[derive(Parser)]
#[command(name = "relci", version, about = "Exact invariants and verdicts for relative complete intersections")]
struct Cli {
    /// Compact JSON on stdout.
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON on stdout.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Instance file (JSON).
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    AsWritten,
    Swapped,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection numbers, pushforward and margin at one twist.
    #[command(disable_help_flag = true)]
    Invariants {
        #[command(flatten)]
        input: InputArg,
        #[arg(short = 'h', long = "h", default_value_t = 1, allow_negative_numbers = true)]
        h: i64,
        #[arg(long, action = ArgAction::Help)]
        help: Option<bool>,
    },
    /// Every theorem-level verdict for the instance.
    Verdict {
        #[command(flatten)]
        input: InputArg,
    },
    /// Nef, bridge and pseudo-effective cones in codimension c.
    Cones {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Margins for h = 1..=h_max and the stable-regime polynomial.
    Sweep {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "h-max", default_value_t = 12)]
        h_max: i64,
    },
    /// Cross-check closed forms against brute-force oracles (needs split).
    Oracle {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "h-max", default_value_t = 8)]
        h_max: i64,
    },
    /// Hilbert-Mumford test and intersection propagation.
    Contact {
        #[command(flatten)]
        input: InputArg,
    },
    /// Build and validate the split example family over P^1.
    Example {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum, default_value = "as-written")]
        orientation: OrientationArg,
    },
}

fn run(command: Command) -> CliResult<Report> {
    match command {
        Command::Invariants { input, h, .. } => cmd_invariants(&Instance::load(&input.input)?, h),
        Command::Verdict { input } => cmd_verdict(&Instance::load(&input.input)?),
        Command::Cones { input, c, svg } => cmd_cones(&Instance::load(&input.input)?, c, svg.as_deref()),
        Command::Sweep { input, h_max } => cmd_sweep(&Instance::load(&input.input)?, h_max),
        Command::Oracle { input, h_max } => cmd_oracle(&Instance::load(&input.input)?, h_max),
        Command::Contact { input } => {
            let text = std::fs::read_to_string(&input.input)
                .map_err(|source| CliError::Read { path: input.input.clone(), source })?;
            cmd_contact(&serde_json::from_str::<ContactFile>(&text)?)
        }
        Command::Example { a, r, c, m, orientation } => {
            let orientation = match orientation {
                OrientationArg::AsWritten => Orientation::AsWritten,
                OrientationArg::Swapped => Orientation::Swapped,
            };
            cmd_example(a, r, c, m, orientation)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.json || cli.pretty {
                println!("{}", report.to_json(cli.pretty));
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
