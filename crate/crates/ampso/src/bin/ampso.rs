//! Command-line front end: design, eval, sweep and circles subcommands over
//! the ampso library. Exit codes: 0 success (design: feasible result),
//! 1 input error, 2 design completed but infeasible.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use ampso::design::{self, DesignSpec};
use ampso::network::DesignVector;
use ampso::report;
use ampso::touchstone::DeviceData;
use ampso::units::db_from_linear;

#[derive(Parser)]
#[command(
    name = "ampso",
    version,
    about = "Low-noise amplifier design by particle swarm"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a full swarm design against a device file.
    Design(DesignArgs),
    /// Evaluate a fixed design (four lengths) at one frequency.
    Eval(EvalArgs),
    /// Sweep a fixed design across frequency, emitting CSV.
    Sweep(SweepArgs),
    /// Export a constant-noise-figure circle as CSV, optionally flagging
    /// overlay points inside/outside.
    Circles(CirclesArgs),
}

#[derive(Args)]
struct DeviceArgs {
    /// Two-port device file (.s2p).
    #[arg(long)]
    device: PathBuf,
    /// Frequency in hertz.
    #[arg(long)]
    freq: f64,
}

#[derive(Args)]
struct DesignArgs {
    #[command(flatten)]
    device: DeviceArgs,
    /// Gain target in dB.
    #[arg(long, default_value_t = 20.0)]
    gain_db: f64,
    /// Noise-figure ceiling in dB.
    #[arg(long, default_value_t = 1.0)]
    nf_max_db: f64,
    #[arg(long, default_value_t = 15)]
    particles: usize,
    #[arg(long, default_value_t = 3000)]
    iters: usize,
    /// RNG seed; falls back to $AMPSO_SEED, then 1.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the run report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-iteration trace CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct LengthArgs {
    /// Series line length, source side (suffix: deg or lam).
    #[arg(long)]
    d1: String,
    /// Shunt stub length, source side.
    #[arg(long)]
    l1: String,
    /// Series line length, load side.
    #[arg(long)]
    d2: String,
    /// Shunt stub length, load side.
    #[arg(long)]
    l2: String,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    device: DeviceArgs,
    #[command(flatten)]
    lengths: LengthArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    device: DeviceArgs,
    #[command(flatten)]
    lengths: LengthArgs,
    /// Sweep start frequency in hertz.
    #[arg(long)]
    from: f64,
    /// Sweep end frequency in hertz.
    #[arg(long)]
    to: f64,
    /// Number of sweep points (at least 2).
    #[arg(long)]
    points: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CirclesArgs {
    #[command(flatten)]
    device: DeviceArgs,
    /// Noise-figure target in dB.
    #[arg(long)]
    nf_db: f64,
    /// Boundary samples, uniform in angle.
    #[arg(long, default_value_t = 360)]
    samples: usize,
    /// Reflection coefficients to overlay, as mag,angle_deg (repeatable).
    #[arg(long)]
    overlay: Vec<String>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage text; keep the exit-code contract
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Design(args) => cmd_design(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Circles(args) => cmd_circles(args),
    };
    match result {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn load_device(path: &PathBuf) -> Result<DeviceData, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let mut device = DeviceData::parse(&text)?;
    if device.name.is_empty() {
        if let Some(stem) = path.file_stem() {
            device.name = stem.to_string_lossy().into_owned();
        }
    }
    Ok(device)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, InputError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(report::SEED_ENV_VAR) {
        Ok(value) => value
            .parse()
            .map_err(|_| InputError(format!("invalid {} value '{value}'", report::SEED_ENV_VAR))),
        Err(_) => Ok(1),
    }
}

fn emit(out: Option<&PathBuf>, contents: &str) -> Result<(), InputError> {
    match out {
        Some(path) => report::write_atomic(path, contents)
            .map_err(|e| InputError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_design(args: DesignArgs) -> Result<ExitCode, InputError> {
    let device = load_device(&args.device.device)?;
    let mut spec = DesignSpec::new(device, args.device.freq);
    spec.targets.gain_target_db = args.gain_db;
    spec.targets.nf_max_db = args.nf_max_db;
    spec.swarm.n_particles = args.particles;
    spec.swarm.max_iterations = args.iters;
    spec.swarm.seed = resolve_seed(args.seed)?;

    let started = Instant::now();
    let result = design::design_amplifier(&spec)?;
    let elapsed = started.elapsed();

    emit(
        args.out.as_ref(),
        &report::render_run_report(&spec, &result, Some(elapsed)),
    )?;
    if let Some(trace_path) = &args.trace {
        emit(Some(trace_path), &report::trace_csv(&result.trace))?;
    }
    Ok(if result.feasible {
        ExitCode::from(0)
    } else {
        ExitCode::from(2)
    })
}

fn parse_lengths(lengths: &LengthArgs) -> Result<DesignVector, InputError> {
    Ok(DesignVector::new(
        report::parse_length_flag(&lengths.d1)?,
        report::parse_length_flag(&lengths.l1)?,
        report::parse_length_flag(&lengths.d2)?,
        report::parse_length_flag(&lengths.l2)?,
    ))
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, InputError> {
    let device = load_device(&args.device.device)?;
    let spec = DesignSpec::new(device, args.device.freq);
    let v = parse_lengths(&args.lengths)?;
    let metrics = design::evaluate_fixed(&spec, &v)?;
    print!("{}", report::render_eval_report(&metrics));
    Ok(ExitCode::from(0))
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, InputError> {
    if args.points < 2 {
        return Err(InputError("--points must be at least 2".into()));
    }
    if args.from.is_nan() || args.to.is_nan() || args.from >= args.to {
        return Err(InputError("--from must be below --to".into()));
    }
    let device = load_device(&args.device.device)?;
    let spec = DesignSpec::new(device, args.device.freq);
    let v = parse_lengths(&args.lengths)?;
    let step = (args.to - args.from) / (args.points - 1) as f64;
    let freqs: Vec<f64> = (0..args.points)
        .map(|i| {
            if i + 1 == args.points {
                args.to
            } else {
                args.from + step * i as f64
            }
        })
        .collect();
    let points = design::sweep(&spec, &v, &freqs)?;
    emit(args.out.as_ref(), &report::sweep_csv(&points))?;
    Ok(ExitCode::from(0))
}

fn cmd_circles(args: CirclesArgs) -> Result<ExitCode, InputError> {
    if args.samples == 0 {
        return Err(InputError("--samples must be at least 1".into()));
    }
    let device = load_device(&args.device.device)?;
    let (_, noise) = device.at(args.device.freq)?;
    let circle = ampso::amplifier::noise_circle(&noise, args.nf_db, device.reference_impedance)
        .map_err(|e| {
            InputError(format!(
                "{e} (device Fmin here is {:.4} dB)",
                db_from_linear(noise.f_min)
            ))
        })?;
    let overlays = args
        .overlay
        .iter()
        .map(|o| report::parse_overlay_flag(o))
        .collect::<Result<Vec<_>, _>>()?;
    emit(
        args.out.as_ref(),
        &report::circles_csv(&circle, args.samples, &overlays),
    )?;
    Ok(ExitCode::from(0))
}
