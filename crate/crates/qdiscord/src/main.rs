//! Thin command-line front end over the qdiscord library: single-state
//! queries (`discord`, `commutator`), ensemble dumps (`sample`), channel
//! trajectories (`evolve`), and the Monte Carlo experiment runners
//! (`experiment <name>`).
//!
//! Exit codes: 0 on success, 1 on validation errors, 2 on I/O errors.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;

use qdiscord::channels::{
    make_channel, run_trajectory_with, spectral_decompose, ChannelDescriptor, TrajectoryOptions,
    DEFAULT_CROSSING_THRESHOLD,
};
use qdiscord::discord::{commutator_criterion, discord, in_c0, OptimizerConfig, DEFAULT_C0_TOL};
use qdiscord::experiments::{run_any, ExperimentConfig, ExperimentKind};
use qdiscord::sampling::{
    random_mixed_state, random_pure_state, random_zero_discord, SeededSampler, PRNG_IDENTIFIER,
};
use qdiscord::states::DensityMatrix;
use qdiscord::Result;

fn long_version() -> String {
    format!("{}\nPRNG: {}", qdiscord::VERSION, PRNG_IDENTIFIER)
}

#[derive(Parser)]
#[command(
    name = "qdiscord",
    about = "Quantum discord, zero-discord geometry, and Markovian channel dynamics",
    version = long_version()
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the discord of a state loaded from a JSON file.
    Discord {
        /// State file: { "dim_a": …, "dim_b": …, "matrix": [[[re, im], …], …] }
        #[arg(long)]
        state: String,
        /// Optimizer restarts.
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the full result (including the optimal measurement) as JSON.
        #[arg(long)]
        out: Option<String>,
    },
    /// Frobenius norm of [ρ, ρ_A⊗1_B] for a state file.
    Commutator {
        #[arg(long)]
        state: String,
        /// C₀ membership tolerance.
        #[arg(long, default_value_t = DEFAULT_C0_TOL)]
        tol: f64,
    },
    /// Dump an ensemble of random states as JSON lines (header line first).
    Sample {
        #[arg(long, value_enum)]
        kind: SampleKind,
        /// Subsystem dimensions, e.g. 2x2 or 3x2.
        #[arg(long, value_parser = parse_dims)]
        dims: (usize, usize),
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Rank for mixed-state sampling (defaults to full rank).
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: String,
    },
    /// Iterate a channel from an initial state and report C₀ crossings.
    Evolve {
        #[arg(long)]
        state: String,
        /// Channel descriptor JSON: { "kind": …, "params": …, "dims": … }.
        #[arg(long)]
        channel: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// Commutator-norm threshold for crossing detection.
        #[arg(long, default_value_t = DEFAULT_CROSSING_THRESHOLD)]
        threshold: f64,
        /// Evaluate discord at every step (slow).
        #[arg(long, default_value_t = false)]
        discord: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the trajectory as CSV (step,commutator_norm,discord,in_c0).
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a Monte Carlo experiment and write a JSON report.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    /// Which experiment to run.
    #[arg(value_enum)]
    name: ExperimentName,
    /// Base config JSON; explicit flags below override its fields.
    #[arg(long)]
    config: Option<String>,
    #[arg(long, value_parser = parse_dims)]
    dims: Option<(usize, usize)>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Channel descriptor JSON file (trajectory experiment).
    #[arg(long)]
    channel: Option<String>,
    /// Steps per trajectory.
    #[arg(long)]
    steps: Option<usize>,
    /// Report destination.
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
    /// Inject this state file into every trial instead of sampling.
    #[arg(long)]
    state: Option<String>,
    /// Evaluate full discord per trial where supported.
    #[arg(long, default_value_t = false)]
    evaluate_discord: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    Pure,
    Mixed,
    ZeroDiscord,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    MeasureZero,
    Perturbation,
    Convexity,
    Trajectory,
    DiscordSingle,
}

impl From<ExperimentName> for ExperimentKind {
    fn from(name: ExperimentName) -> Self {
        match name {
            ExperimentName::MeasureZero => ExperimentKind::MeasureZero,
            ExperimentName::Perturbation => ExperimentKind::Perturbation,
            ExperimentName::Convexity => ExperimentKind::Convexity,
            ExperimentName::Trajectory => ExperimentKind::Trajectory,
            ExperimentName::DiscordSingle => ExperimentKind::DiscordSingle,
        }
    }
}

fn parse_dims(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected DAxDB (e.g. 2x2), got '{s}'"))?;
    let da = a.trim().parse().map_err(|_| format!("bad dimension '{a}'"))?;
    let db = b.trim().parse().map_err(|_| format!("bad dimension '{b}'"))?;
    Ok((da, db))
}

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => match run(cli) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            let kind = e.kind();
            // help/version are not errors; anything else is a usage problem
            let _ = e.print();
            if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                0
            } else {
                1
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Discord { state, restarts, seed, out } => {
            let rho = DensityMatrix::load(&state)?;
            let cfg = OptimizerConfig { restarts, seed, ..Default::default() };
            let res = discord(&rho, &cfg)?;
            println!("I = {:.6}", res.mutual_information);
            println!("J = {:.6}", res.classical_correlations);
            println!("D = {:.6}", res.discord);
            println!(
                "converged = {} (restarts used: {})",
                res.converged, res.optimizer_restarts_used
            );
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&res)?)?;
            }
            Ok(())
        }
        Command::Commutator { state, tol } => {
            let rho = DensityMatrix::load(&state)?;
            let norm = commutator_criterion(&rho);
            println!("commutator_norm = {norm:.6e}");
            println!("in_c0 (tol {tol:.1e}) = {}", in_c0(&rho, tol));
            Ok(())
        }
        Command::Sample { kind, dims, count, rank, seed, out } => {
            let mut sampler = SeededSampler::new(seed);
            let d = dims.0 * dims.1;
            let rank = rank.unwrap_or(d);
            let mut file = std::io::BufWriter::new(std::fs::File::create(&out)?);
            let kind_name = match kind {
                SampleKind::Pure => "pure",
                SampleKind::Mixed => "mixed",
                SampleKind::ZeroDiscord => "zero_discord",
            };
            let header = serde_json::json!({
                "seed": seed,
                "kind": kind_name,
                "dims": [dims.0, dims.1],
                "count": count,
                "rank": rank,
                "prng": PRNG_IDENTIFIER,
                "library_version": qdiscord::VERSION,
            });
            writeln!(file, "{header}")?;
            for _ in 0..count {
                let state = match kind {
                    SampleKind::Pure => random_pure_state(dims, &mut sampler)?,
                    SampleKind::Mixed => random_mixed_state(dims, rank, &mut sampler)?,
                    SampleKind::ZeroDiscord => {
                        random_zero_discord(dims.0, dims.1, &mut sampler)?
                    }
                };
                writeln!(file, "{}", state.to_json())?;
            }
            file.flush()?;
            println!("wrote {count} {kind_name} states to {out}");
            Ok(())
        }
        Command::Evolve { state, channel, steps, threshold, discord, seed, out } => {
            let rho0 = DensityMatrix::load(&state)?;
            let descriptor = ChannelDescriptor::from_json(&std::fs::read_to_string(&channel)?)?;
            let ch = make_channel(&descriptor)?;
            let sd = spectral_decompose(&ch)?;
            let opts = TrajectoryOptions {
                record_states: false,
                evaluate_discord: discord
                    .then(|| OptimizerConfig { seed, ..Default::default() }),
            };
            let traj = run_trajectory_with(&ch, &rho0, steps, threshold, &opts)?;
            println!("channel = {} on dims {:?}", descriptor.kind.as_str(), descriptor.dims);
            println!(
                "distinct eigenvalues = {}, crossing bound = {}",
                sd.n_distinct(),
                sd.crossing_bound()
            );
            println!("initial norm = {:.6e}", traj.commutator_norms()[0]);
            println!("final norm = {:.6e}", traj.commutator_norms().last().unwrap());
            println!("transversal crossings = {}", traj.transversal_crossings());
            println!("ends below threshold = {}", traj.ends_below_threshold());
            if let Some(path) = out {
                traj.write_csv(&path)?;
                println!("trajectory written to {path}");
            }
            Ok(())
        }
        Command::Experiment(args) => {
            let mut cfg = match &args.config {
                Some(path) => ExperimentConfig::from_json(&std::fs::read_to_string(path)?)?,
                None => ExperimentConfig::new(
                    args.name.into(),
                    args.dims.unwrap_or((2, 2)),
                    args.trials.unwrap_or(1000),
                    args.seed.unwrap_or(0),
                ),
            };
            cfg.experiment = args.name.into();
            if let Some(dims) = args.dims {
                cfg.dims = dims;
            }
            if let Some(trials) = args.trials {
                cfg.trials = trials;
            }
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(path) = &args.channel {
                cfg.channel =
                    Some(ChannelDescriptor::from_json(&std::fs::read_to_string(path)?)?);
            }
            if let Some(steps) = args.steps {
                cfg.steps = Some(steps);
            }
            if let Some(out) = &args.out {
                cfg.output_path = Some(out.clone());
            }
            if let Some(workers) = args.workers {
                cfg.workers = workers;
            }
            if let Some(state) = &args.state {
                cfg.state_path = Some(state.clone());
            }
            if args.evaluate_discord {
                cfg.evaluate_discord = true;
            }
            let report = run_any(&cfg)?;
            match &cfg.output_path {
                Some(path) => println!("report written to {path}"),
                None => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            if let Some(aggregates) = report.get("aggregates") {
                println!(
                    "aggregates: {}",
                    serde_json::to_string(aggregates).unwrap_or_default()
                );
            }
            Ok(())
        }
    }
}
