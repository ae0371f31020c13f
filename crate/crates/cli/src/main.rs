use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use fuzgeo_cli::{load_scene, run, CliError, Command, Format, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Action {
    Distance,
    MetricCurve,
    Hausdorff,
    Midset,
    Classify,
    Invariance,
    /// Every analysis listed under `analyses` in the scene.
    Run,
}

/// Fuzzy distances, closeness curves, Hausdorff values and midsets for the
/// point pairs of a JSON scene.
#[derive(Debug, Parser)]
#[command(name = "fuzgeo", version)]
struct Args {
    command: Action,
    /// Scene file (JSON).
    #[arg(long)]
    scene: PathBuf,
    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Number of uniformly spaced alpha levels.
    #[arg(long)]
    alpha_levels: Option<usize>,
    /// Grid cells per axis for midset and invariance sampling.
    #[arg(long)]
    resolution: Option<usize>,
    /// Comma-separated scales for metric-curve and invariance.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    t: Option<Vec<f64>>,
    /// Write only artifacts of this format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn execute(args: &Args) -> Result<(), CliError> {
    let scene = load_scene(&args.scene)?;
    let commands = match args.command {
        Action::Distance => vec![Command::Distance],
        Action::MetricCurve => vec![Command::MetricCurve],
        Action::Hausdorff => vec![Command::Hausdorff],
        Action::Midset => vec![Command::Midset],
        Action::Classify => vec![Command::Classify],
        Action::Invariance => vec![Command::Invariance],
        Action::Run if scene.analyses.is_empty() => {
            return Err(CliError::Validation("scene lists no analyses to run".into()));
        }
        Action::Run => scene.analyses.clone(),
    };
    let options = Options {
        alpha_levels: args.alpha_levels,
        resolution: args.resolution,
        t: args.t.clone(),
        format: args.format,
    };
    for command in commands {
        for path in run(command, &scene, &options, &args.out)? {
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fuzgeo: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
