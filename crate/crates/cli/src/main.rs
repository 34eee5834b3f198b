use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rps_conflict::{DepthSpec, Normalization, WeightScheme};
use rps_conflict_cli::commands::{
    parse_depth, parse_scheme, run_codec_command, run_conflict_command, run_sweep_command, Axis,
    Codec, SweepSpec, Vary,
};
use rps_conflict_cli::document::{parse_evidence, Evidence};
use rps_conflict_cli::{repro, CliError, Result};

#[derive(Parser)]
#[command(
    name = "rps-conflict",
    version,
    about = "Conflict between permutation mass functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conflict between two bodies of an evidence file.
    Conflict {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        measure: Measure,
        /// Decimals for printed numbers.
        #[arg(long)]
        precision: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Conflict along a p, depth or cardinality axis, as CSV.
    Sweep {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        measure: Measure,
        /// p, depth or cardinality.
        #[arg(long)]
        axis: String,
        /// Comma-separated list or start:stop:step.
        #[arg(long)]
        values: String,
        /// Record replaced by (w1 ... wc) on the cardinality axis, as body:index.
        #[arg(long)]
        vary: Option<String>,
        #[arg(long)]
        precision: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recompute a reference table from built-in bodies, as CSV.
    Repro {
        /// One of 2, 3, 4, 5, 6, 7.
        #[arg(long)]
        table: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Convert between sequences and (i, j) codes.
    Codec {
        #[command(subcommand)]
        direction: Direction,
        /// Frame size n for labels w1..wn.
        #[arg(long, short = 'n', global = true)]
        frame_size: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Direction {
    /// Print the (i, j) code of a sequence of labels or 1-based element numbers.
    Encode { elements: Vec<String> },
    /// Print the sequence with code (i, j).
    Decode { i: u64, j: u64 },
}

#[derive(Args)]
struct Input {
    /// JSON evidence file.
    #[arg(long)]
    evidence: PathBuf,
    #[arg(long)]
    body1: String,
    #[arg(long)]
    body2: String,
    /// Rescale bodies whose masses do not sum to one.
    #[arg(long)]
    renormalize: bool,
}

#[derive(Args)]
struct Measure {
    /// uniform, geometric or custom.
    #[arg(long, default_value = "uniform")]
    weights: String,
    /// Geometric persistence parameter in [0, 1).
    #[arg(long)]
    p: Option<f64>,
    /// Comma-separated depth weights for --weights custom.
    #[arg(long, value_delimiter = ',')]
    custom_weights: Option<Vec<f64>>,
    /// default, a positive integer, or unbounded.
    #[arg(long, default_value = "default")]
    depth: String,
}

impl Input {
    fn load(&self) -> Result<Evidence> {
        let text = fs::read_to_string(&self.evidence)?;
        let norm = if self.renormalize {
            Normalization::Renormalize
        } else {
            Normalization::Strict
        };
        parse_evidence(&text, norm)
    }
}

impl Measure {
    fn resolve(&self) -> Result<(WeightScheme, DepthSpec)> {
        let scheme = parse_scheme(&self.weights, self.p, self.custom_weights.as_deref())?;
        Ok((scheme, parse_depth(&self.depth)?))
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Conflict {
            input,
            measure,
            precision,
            output,
        } => {
            let evidence = input.load()?;
            let (scheme, depth) = measure.resolve()?;
            let text = run_conflict_command(
                &evidence,
                &input.body1,
                &input.body2,
                &scheme,
                depth,
                precision,
            )?;
            emit(output.as_ref(), &text)
        }
        Command::Sweep {
            input,
            measure,
            axis,
            values,
            vary,
            precision,
            output,
        } => {
            let evidence = input.load()?;
            let axis: Axis = axis.parse()?;
            let spec = SweepSpec::parse(axis, &values)?;
            let scheme = match axis {
                Axis::P => WeightScheme::Uniform,
                _ => parse_scheme(
                    &measure.weights,
                    measure.p,
                    measure.custom_weights.as_deref(),
                )?,
            };
            let depth = parse_depth(&measure.depth)?;
            let vary = vary.map(|v| v.parse::<Vary>()).transpose()?;
            let table = run_sweep_command(
                &evidence,
                &input.body1,
                &input.body2,
                &spec,
                &scheme,
                depth,
                vary.as_ref(),
            )?;
            emit(output.as_ref(), &table.to_csv(precision))
        }
        Command::Repro { table, output } => {
            let table = repro::table(table)?;
            emit(output.as_ref(), &table.to_csv(Some(4)))
        }
        Command::Codec {
            direction,
            frame_size,
        } => {
            let codec = match direction {
                Direction::Encode { elements } => {
                    if elements.is_empty() {
                        return Err(CliError::Usage("encode needs at least one element".into()));
                    }
                    Codec::Encode(elements)
                }
                Direction::Decode { i, j } => Codec::Decode { i, j },
            };
            let text = run_codec_command(&codec, frame_size)?;
            emit(None, &format!("{text}\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
