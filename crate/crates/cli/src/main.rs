use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use behavnet::RegularityMode;
use behavnet_cli::commands::{self, Direction, GraphFormat, GraphKind, Outcome};
use behavnet_cli::{parse_model, CliError, Model, Result};
use clap::{Parser, Subcommand, ValueEnum};

/// Structural analysis of linear networks given by polynomial kernel
/// representations.
#[derive(Parser)]
#[command(name = "behavnet", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Output cardinality, McMillan degree, incidence matrix and regularity.
    Analyze {
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Signal or system hypergraph, or the SVAR digraph.
    Graph {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Signal)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Dot)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert between an SVAR model and a network.
    Svar {
        model: PathBuf,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find the finest merge of components that makes the network regular.
    Merge {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::RegularFeedback)]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
        /// Write the merged network here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulate the interconnection; prints a trajectory CSV.
    Simulate {
        model: PathBuf,
        /// Input samples (CSV with one column per input).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Initial output window (CSV); computed if omitted.
        #[arg(long)]
        init: Option<PathBuf>,
        #[arg(long)]
        horizon: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check whether a trajectory CSV belongs to the behavior.
    Check {
        model: PathBuf,
        #[arg(long)]
        trajectory: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Signal,
    System,
    Svar,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    To,
    From,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Regular,
    #[value(name = "regular_feedback", alias = "regular-feedback")]
    RegularFeedback,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<Model> {
    parse_model(&read(path)?)
}

fn emit(outcome: Outcome, output: Option<&Path>) -> Result<u8> {
    match output {
        Some(path) => fs::write(path, &outcome.output).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?,
        None => print!("{}", outcome.output),
    }
    Ok(outcome.status)
}

fn run(args: Args) -> Result<u8> {
    match args.command {
        Command::Analyze { model, json } => emit(commands::analyze(&load(&model)?, json)?, None),
        Command::Graph {
            model,
            kind,
            format,
            output,
        } => {
            let kind = match kind {
                KindArg::Signal => GraphKind::Signal,
                KindArg::System => GraphKind::System,
                KindArg::Svar => GraphKind::Svar,
            };
            let format = match format {
                FormatArg::Dot => GraphFormat::Dot,
                FormatArg::Json => GraphFormat::Json,
            };
            emit(
                commands::graph(&load(&model)?, kind, format)?,
                output.as_deref(),
            )
        }
        Command::Svar {
            model,
            direction,
            output,
        } => {
            let direction = match direction {
                DirectionArg::To => Direction::To,
                DirectionArg::From => Direction::From,
            };
            emit(
                commands::svar(&load(&model)?, direction)?,
                output.as_deref(),
            )
        }
        Command::Merge {
            model,
            mode,
            json,
            output,
        } => {
            let mode = match mode {
                ModeArg::Regular => RegularityMode::Regular,
                ModeArg::RegularFeedback => RegularityMode::RegularFeedback,
            };
            let (report, merged) = commands::merge(&load(&model)?, mode, json)?;
            if let Some(path) = output {
                fs::write(&path, merged).map_err(|source| CliError::Io { path, source })?;
            }
            emit(report, None)
        }
        Command::Simulate {
            model,
            input,
            init,
            horizon,
            output,
        } => {
            let model = load(&model)?;
            let input = input.as_deref().map(read).transpose()?;
            let init = init.as_deref().map(read).transpose()?;
            let outcome =
                commands::simulate_cmd(&model, input.as_deref(), init.as_deref(), horizon)?;
            emit(outcome, output.as_deref())
        }
        Command::Check { model, trajectory } => {
            emit(commands::check(&load(&model)?, &read(&trajectory)?)?, None)
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
