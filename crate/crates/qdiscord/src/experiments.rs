//! Deterministic Monte Carlo experiment runners.
//!
//! Four studies probe the geometry and dynamics of the zero-discord set, all
//! driven by one [`ExperimentConfig`] and emitting JSON [`ExperimentReport`]s:
//!
//! - **measure-zero** — sample Hilbert-Schmidt random states and count how
//!   many land in C₀ (none do, in practice: the set has measure zero).
//! - **perturbation** — kick random zero-discord states by `(1−η)ρ + ησ`
//!   across a log grid of η and record how many escape C₀ (all of them:
//!   the set is nowhere dense).
//! - **convexity** — mix pairs of zero-discord states; incompatible-basis
//!   pairs typically leave C₀ while same-basis pairs never do.
//! - **trajectory** — iterate a channel from random initial states and check
//!   the observed transversal C₀ crossings against the spectral bound.
//!
//! Plus **discord-single**, a plain discord evaluation over sampled (or
//! injected) states for small trial counts.
//!
//! Reproducibility: trial `i` draws from the child sampler `seed.child(i)`,
//! so per-trial records are independent of worker count and execution order;
//! records are collected and aggregated in trial order. Identical configs and
//! seeds give byte-identical reports modulo the wall-clock field. Discord
//! evaluation inside large sweeps is opt-in: the commutator norm is the cheap
//! certificate (roughly a thousand times cheaper than the optimizer) and a
//! positive norm already certifies positive discord.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::time::Instant;

use crate::channels::{
    make_channel, run_trajectory, spectral_decompose, steady_state, ChannelDescriptor,
};
use crate::discord::{commutator_criterion, discord, in_c0, pinch, OptimizerConfig};
use crate::linalg;
use crate::sampling::{
    perturb, random_mixed_state, random_zero_discord, SeededSampler, PRNG_IDENTIFIER,
};
use crate::states::DensityMatrix;
use crate::{Error, Result};

/// Environment variable consulted for the default worker count when the
/// config leaves `workers` at 0.
pub const WORKERS_ENV: &str = "QDISCORD_WORKERS";

/// Perturbation strengths swept by the perturbation experiment.
pub const PERTURBATION_ETAS: [f64; 6] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    MeasureZero,
    Perturbation,
    Convexity,
    Trajectory,
    DiscordSingle,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::MeasureZero => "measure_zero",
            ExperimentKind::Perturbation => "perturbation",
            ExperimentKind::Convexity => "convexity",
            ExperimentKind::Trajectory => "trajectory",
            ExperimentKind::DiscordSingle => "discord_single",
        }
    }
}

/// Decision thresholds shared by the experiments.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Thresholds {
    /// Commutator norm below this counts as membership in C₀.
    pub c0_tol: f64,
    /// Discord below this counts as zero discord.
    pub discord_tol: f64,
    /// Trajectory crossing / perturbation escape threshold on the norm.
    pub crossing_tol: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { c0_tol: 1e-10, discord_tol: 1e-6, crossing_tol: 1e-8 }
    }
}

/// Full description of one experiment run; echoed verbatim into the report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    /// Subsystem dimensions (d_A, d_B).
    pub dims: (usize, usize),
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub thresholds: Thresholds,
    /// Channel under study; required by the trajectory experiment.
    #[serde(default)]
    pub channel: Option<ChannelDescriptor>,
    /// Steps per trajectory (default 10⁴).
    #[serde(default)]
    pub steps: Option<usize>,
    /// Where the JSON report goes; in-memory only when absent.
    #[serde(default)]
    pub output_path: Option<String>,
    /// Worker threads; 0 means the `QDISCORD_WORKERS` variable or all cores.
    #[serde(default)]
    pub workers: usize,
    /// Evaluate full discord per trial (expensive; see module docs).
    #[serde(default)]
    pub evaluate_discord: bool,
    /// Use this state file for every trial instead of sampling.
    #[serde(default)]
    pub state_path: Option<String>,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind, dims: (usize, usize), trials: usize, seed: u64) -> Self {
        Self {
            experiment,
            dims,
            trials,
            seed,
            thresholds: Thresholds::default(),
            channel: None,
            steps: None,
            output_path: None,
            workers: 0,
            evaluate_discord: false,
            state_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.dims.0 < 2 || self.dims.1 < 2 {
            return Err(Error::InvalidConfig(format!(
                "dims {:?} must both be at least 2",
                self.dims
            )));
        }
        let t = &self.thresholds;
        if t.c0_tol <= 0.0 || t.discord_tol <= 0.0 || t.crossing_tol <= 0.0 {
            return Err(Error::InvalidConfig("thresholds must be positive".into()));
        }
        if matches!(self.experiment, ExperimentKind::Trajectory) && self.channel.is_none() {
            return Err(Error::InvalidConfig(
                "trajectory experiment needs a channel descriptor".into(),
            ));
        }
        if let Some(steps) = self.steps {
            if steps < 1 {
                return Err(Error::InvalidConfig("steps must be at least 1".into()));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }
}

/// A finished experiment: config echo, per-trial records, aggregates, and
/// provenance (library version, PRNG identifier, wall clock).
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport<R, A> {
    pub config: ExperimentConfig,
    pub records: Vec<R>,
    pub aggregates: A,
    pub wall_clock_seconds: f64,
    pub library_version: String,
    pub prng: String,
}

impl<R: Serialize, A: Serialize> ExperimentReport<R, A> {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_json_pretty())?)
    }
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    let n = if workers > 0 {
        workers
    } else {
        std::env::var(WORKERS_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(0)
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))
}

/// Create (and truncate) the output file up front so an unwritable path
/// fails before any sampling starts.
fn prepare_output(cfg: &ExperimentConfig) -> Result<()> {
    if let Some(path) = &cfg.output_path {
        std::fs::File::create(path)?;
    }
    Ok(())
}

fn finish<R: Serialize, A: Serialize>(
    cfg: &ExperimentConfig,
    records: Vec<R>,
    aggregates: A,
    started: Instant,
) -> Result<ExperimentReport<R, A>> {
    let report = ExperimentReport {
        config: cfg.clone(),
        records,
        aggregates,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        library_version: crate::VERSION.to_string(),
        prng: PRNG_IDENTIFIER.to_string(),
    };
    if let Some(path) = &cfg.output_path {
        report.write(path)?;
    }
    Ok(report)
}

fn run_trials<R: Send>(
    pool: &rayon::ThreadPool,
    trials: usize,
    f: impl Fn(usize) -> Result<R> + Sync,
) -> Result<Vec<R>> {
    pool.install(|| (0..trials).into_par_iter().map(|i| f(i)).collect())
}

fn expect_kind(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<()> {
    if cfg.experiment != kind {
        return Err(Error::InvalidConfig(format!(
            "config names experiment '{}' but '{}' was invoked",
            cfg.experiment.as_str(),
            kind.as_str()
        )));
    }
    Ok(())
}

fn load_injected_state(cfg: &ExperimentConfig) -> Result<Option<DensityMatrix>> {
    match &cfg.state_path {
        Some(path) => {
            let state = DensityMatrix::load(path)?;
            if (state.dim_a(), state.dim_b()) != cfg.dims {
                return Err(Error::InvalidConfig(format!(
                    "injected state dims ({}, {}) do not match config dims {:?}",
                    state.dim_a(),
                    state.dim_b(),
                    cfg.dims
                )));
            }
            Ok(Some(state))
        }
        None => Ok(None),
    }
}

fn mean(values: impl Iterator<Item = f64>, count: usize) -> f64 {
    if count == 0 {
        return 0.0;
    }
    values.sum::<f64>() / count as f64
}

// ---------------------------------------------------------------------------
// measure-zero

#[derive(Debug, Clone, Serialize)]
pub struct MeasureZeroRecord {
    pub trial: usize,
    pub commutator_norm: f64,
    pub in_c0: bool,
    pub discord: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscordStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureZeroAggregates {
    pub fraction_in_c0: f64,
    pub min_norm: f64,
    pub max_norm: f64,
    pub mean_norm: f64,
    pub discord: Option<DiscordStats>,
}

/// Sample Hilbert-Schmidt random states and measure the fraction inside C₀.
pub fn run_measure_zero(
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport<MeasureZeroRecord, MeasureZeroAggregates>> {
    expect_kind(cfg, ExperimentKind::MeasureZero)?;
    cfg.validate()?;
    prepare_output(cfg)?;
    let injected = load_injected_state(cfg)?;
    let started = Instant::now();
    let root = SeededSampler::new(cfg.seed);
    let pool = build_pool(cfg.workers)?;
    let d = cfg.dims.0 * cfg.dims.1;

    let records = run_trials(&pool, cfg.trials, |trial| {
        let mut sampler = root.child(trial as u64);
        let state = match &injected {
            Some(s) => s.clone(),
            None => random_mixed_state(cfg.dims, d, &mut sampler)?,
        };
        let norm = commutator_criterion(&state);
        let discord_value = if cfg.evaluate_discord {
            let opt = OptimizerConfig { seed: sampler.master_seed(), ..Default::default() };
            Some(discord(&state, &opt)?.discord)
        } else {
            None
        };
        Ok(MeasureZeroRecord {
            trial,
            commutator_norm: norm,
            in_c0: norm < cfg.thresholds.c0_tol,
            discord: discord_value,
        })
    })?;

    let n = records.len();
    let in_c0_count = records.iter().filter(|r| r.in_c0).count();
    let discord_stats = if cfg.evaluate_discord {
        let values: Vec<f64> = records.iter().filter_map(|r| r.discord).collect();
        Some(DiscordStats {
            min: values.iter().cloned().fold(f64::INFINITY, f64::min),
            max: values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            mean: mean(values.iter().cloned(), values.len()),
        })
    } else {
        None
    };
    let aggregates = MeasureZeroAggregates {
        fraction_in_c0: in_c0_count as f64 / n as f64,
        min_norm: records.iter().map(|r| r.commutator_norm).fold(f64::INFINITY, f64::min),
        max_norm: records.iter().map(|r| r.commutator_norm).fold(f64::NEG_INFINITY, f64::max),
        mean_norm: mean(records.iter().map(|r| r.commutator_norm), n),
        discord: discord_stats,
    };
    finish(cfg, records, aggregates, started)
}

// ---------------------------------------------------------------------------
// perturbation

#[derive(Debug, Clone, Serialize)]
pub struct PerturbationRecord {
    pub trial: usize,
    /// Commutator norm of the unperturbed zero-discord state (η = 0 control).
    pub base_norm: f64,
    /// One norm per entry of [`PERTURBATION_ETAS`].
    pub perturbed_norms: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaSummary {
    pub eta: f64,
    /// Fraction of trials with norm above the crossing threshold.
    pub escape_fraction: f64,
    pub min_norm: f64,
    pub mean_norm: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbationAggregates {
    /// Escape fraction of the η = 0 control arm (zero when sampling works).
    pub control_escape_fraction: f64,
    pub per_eta: Vec<EtaSummary>,
}

/// Perturb random zero-discord states across a log grid of strengths and
/// measure the escape fraction from C₀ at each strength.
pub fn run_perturbation(
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport<PerturbationRecord, PerturbationAggregates>> {
    expect_kind(cfg, ExperimentKind::Perturbation)?;
    cfg.validate()?;
    prepare_output(cfg)?;
    let started = Instant::now();
    let root = SeededSampler::new(cfg.seed);
    let pool = build_pool(cfg.workers)?;

    let records = run_trials(&pool, cfg.trials, |trial| {
        let mut sampler = root.child(trial as u64);
        let rho = random_zero_discord(cfg.dims.0, cfg.dims.1, &mut sampler)?;
        let base_norm = commutator_criterion(&rho);
        let perturbed_norms = PERTURBATION_ETAS
            .iter()
            .map(|&eta| Ok(commutator_criterion(&perturb(&rho, eta, &mut sampler)?)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(PerturbationRecord { trial, base_norm, perturbed_norms })
    })?;

    let n = records.len();
    let tol = cfg.thresholds.crossing_tol;
    let per_eta = PERTURBATION_ETAS
        .iter()
        .enumerate()
        .map(|(k, &eta)| {
            let norms = records.iter().map(|r| r.perturbed_norms[k]);
            EtaSummary {
                eta,
                escape_fraction: records
                    .iter()
                    .filter(|r| r.perturbed_norms[k] > tol)
                    .count() as f64
                    / n as f64,
                min_norm: norms.clone().fold(f64::INFINITY, f64::min),
                mean_norm: mean(norms, n),
            }
        })
        .collect();
    let aggregates = PerturbationAggregates {
        control_escape_fraction: records.iter().filter(|r| r.base_norm > tol).count() as f64
            / n as f64,
        per_eta,
    };
    finish(cfg, records, aggregates, started)
}

// ---------------------------------------------------------------------------
// convexity

#[derive(Debug, Clone, Serialize)]
pub struct ConvexityRecord {
    pub trial: usize,
    /// Commutator norm of the 1:1 mixture of two independent-basis
    /// zero-discord states.
    pub mixed_norm: f64,
    pub left_c0: bool,
    /// Same-basis control mixture: commutator norm and block-diagonality
    /// residual in the shared basis.
    pub control_norm: f64,
    pub control_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvexityAggregates {
    pub leave_fraction: f64,
    pub control_leave_fraction: f64,
    pub control_max_residual: f64,
}

/// Mix pairs of zero-discord states at weight 1/2: incompatible bases
/// typically leave C₀, a shared basis never does.
pub fn run_convexity(
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport<ConvexityRecord, ConvexityAggregates>> {
    expect_kind(cfg, ExperimentKind::Convexity)?;
    cfg.validate()?;
    prepare_output(cfg)?;
    let started = Instant::now();
    let root = SeededSampler::new(cfg.seed);
    let pool = build_pool(cfg.workers)?;
    let (da, db) = cfg.dims;

    let records = run_trials(&pool, cfg.trials, |trial| {
        let mut sampler = root.child(trial as u64);
        // independent bases
        let rho1 = random_zero_discord(da, db, &mut sampler)?;
        let rho2 = random_zero_discord(da, db, &mut sampler)?;
        let mixed = DensityMatrix::new(
            da,
            db,
            (rho1.matrix() + rho2.matrix()).mapv(|z| z * 0.5),
        )?;
        let mixed_norm = commutator_criterion(&mixed);

        // shared-basis control arm
        let basis = crate::discord::ProjectiveMeasurement::from_unitary(
            &crate::sampling::random_unitary(da, &mut sampler)?,
        )?;
        let make = |sampler: &mut SeededSampler| -> Result<DensityMatrix> {
            let p = crate::sampling::random_simplex(da, sampler);
            let sigmas: Vec<_> = (0..da)
                .map(|_| {
                    random_mixed_state((1, db), db, sampler).map(|s| s.matrix().clone())
                })
                .collect::<Result<_>>()?;
            crate::discord::make_zero_discord(&p, &basis, &sigmas)
        };
        let c1 = make(&mut sampler)?;
        let c2 = make(&mut sampler)?;
        let control = DensityMatrix::new(
            da,
            db,
            (c1.matrix() + c2.matrix()).mapv(|z| z * 0.5),
        )?;
        let control_norm = commutator_criterion(&control);
        let pinched = pinch(&control, &basis)?;
        let control_residual =
            linalg::frobenius_norm(&(control.matrix() - pinched.matrix()));
        Ok(ConvexityRecord {
            trial,
            mixed_norm,
            left_c0: mixed_norm > cfg.thresholds.c0_tol,
            control_norm,
            control_residual,
        })
    })?;

    let n = records.len();
    let aggregates = ConvexityAggregates {
        leave_fraction: records.iter().filter(|r| r.left_c0).count() as f64 / n as f64,
        control_leave_fraction: records
            .iter()
            .filter(|r| r.control_norm > cfg.thresholds.c0_tol)
            .count() as f64
            / n as f64,
        control_max_residual: records
            .iter()
            .map(|r| r.control_residual)
            .fold(f64::NEG_INFINITY, f64::max),
    };
    finish(cfg, records, aggregates, started)
}

// ---------------------------------------------------------------------------
// trajectory

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryRecord {
    pub trial: usize,
    pub initial_norm: f64,
    pub transversal_crossings: usize,
    /// All maximal below-threshold runs, as inclusive step intervals.
    pub below_threshold_runs: Vec<(usize, usize)>,
    pub final_norm: f64,
    pub ends_below_threshold: bool,
    pub violates_bound: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryAggregates {
    pub crossing_bound: usize,
    pub n_distinct_eigenvalues: usize,
    /// Distinct pairwise eigenvalue products, with a flag when the count
    /// disagrees with d̃(d̃−1)/2 (see the channel module docs).
    pub distinct_product_count: usize,
    pub product_count_mismatch: bool,
    pub max_observed_crossings: usize,
    pub bound_violations: usize,
    /// None when the channel has no unique steady state.
    pub steady_state_in_c0: Option<bool>,
    /// Fraction of trajectories that end below the crossing threshold.
    pub captured_fraction: f64,
}

/// Iterate the configured channel from random initial states and check the
/// observed transversal crossings against the spectral bound.
pub fn run_trajectory_study(
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport<TrajectoryRecord, TrajectoryAggregates>> {
    expect_kind(cfg, ExperimentKind::Trajectory)?;
    cfg.validate()?;
    prepare_output(cfg)?;
    let descriptor = cfg.channel.as_ref().expect("validated above");
    if descriptor.dims != cfg.dims {
        return Err(Error::InvalidConfig(format!(
            "channel dims {:?} do not match experiment dims {:?}",
            descriptor.dims, cfg.dims
        )));
    }
    let started = Instant::now();
    let channel = make_channel(descriptor)?;
    let sd = spectral_decompose(&channel)?;
    let bound = sd.crossing_bound();
    let steady_in_c0 = match steady_state(&sd) {
        Ok(ss) => Some(in_c0(&ss, cfg.thresholds.c0_tol)),
        Err(Error::NonUniqueSteadyState { .. }) | Err(Error::NoDecoherence) => None,
        Err(e) => return Err(e),
    };
    let steps = cfg.steps.unwrap_or(10_000);
    let root = SeededSampler::new(cfg.seed);
    let pool = build_pool(cfg.workers)?;
    let d = cfg.dims.0 * cfg.dims.1;

    let records = run_trials(&pool, cfg.trials, |trial| {
        let mut sampler = root.child(trial as u64);
        let rho0 = random_mixed_state(cfg.dims, d, &mut sampler)?;
        let traj = run_trajectory(&channel, &rho0, steps, cfg.thresholds.crossing_tol)?;
        let crossings = traj.transversal_crossings();
        Ok(TrajectoryRecord {
            trial,
            initial_norm: traj.commutator_norms()[0],
            transversal_crossings: crossings,
            below_threshold_runs: traj.crossings().to_vec(),
            final_norm: *traj.commutator_norms().last().unwrap(),
            ends_below_threshold: traj.ends_below_threshold(),
            violates_bound: crossings > bound,
        })
    })?;

    let n = records.len();
    let products = sd.distinct_product_count();
    let formula_count = sd.n_distinct() * (sd.n_distinct().saturating_sub(1)) / 2;
    let aggregates = TrajectoryAggregates {
        crossing_bound: bound,
        n_distinct_eigenvalues: sd.n_distinct(),
        distinct_product_count: products,
        product_count_mismatch: products != formula_count,
        max_observed_crossings: records
            .iter()
            .map(|r| r.transversal_crossings)
            .max()
            .unwrap_or(0),
        bound_violations: records.iter().filter(|r| r.violates_bound).count(),
        steady_state_in_c0: steady_in_c0,
        captured_fraction: records.iter().filter(|r| r.ends_below_threshold).count() as f64
            / n as f64,
    };
    // echo the resolved step count rather than a silent default
    let mut echoed = cfg.clone();
    echoed.steps = Some(steps);
    finish(&echoed, records, aggregates, started)
}

// ---------------------------------------------------------------------------
// discord-single

#[derive(Debug, Clone, Serialize)]
pub struct DiscordRecord {
    pub trial: usize,
    pub mutual_information: f64,
    pub classical_correlations: f64,
    pub discord: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscordAggregates {
    pub min_discord: f64,
    pub max_discord: f64,
    pub mean_discord: f64,
    pub all_converged: bool,
}

/// Full discord evaluation over sampled (or injected) states.
pub fn run_discord_single(
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport<DiscordRecord, DiscordAggregates>> {
    expect_kind(cfg, ExperimentKind::DiscordSingle)?;
    cfg.validate()?;
    prepare_output(cfg)?;
    let injected = load_injected_state(cfg)?;
    let started = Instant::now();
    let root = SeededSampler::new(cfg.seed);
    let pool = build_pool(cfg.workers)?;
    let d = cfg.dims.0 * cfg.dims.1;

    let records = run_trials(&pool, cfg.trials, |trial| {
        let mut sampler = root.child(trial as u64);
        let state = match &injected {
            Some(s) => s.clone(),
            None => random_mixed_state(cfg.dims, d, &mut sampler)?,
        };
        let opt = OptimizerConfig { seed: sampler.master_seed(), ..Default::default() };
        let res = discord(&state, &opt)?;
        Ok(DiscordRecord {
            trial,
            mutual_information: res.mutual_information,
            classical_correlations: res.classical_correlations,
            discord: res.discord,
            converged: res.converged,
        })
    })?;

    let n = records.len();
    let aggregates = DiscordAggregates {
        min_discord: records.iter().map(|r| r.discord).fold(f64::INFINITY, f64::min),
        max_discord: records.iter().map(|r| r.discord).fold(f64::NEG_INFINITY, f64::max),
        mean_discord: mean(records.iter().map(|r| r.discord), n),
        all_converged: records.iter().all(|r| r.converged),
    };
    finish(cfg, records, aggregates, started)
}

/// Dispatch on the configured experiment kind; the report comes back as a
/// generic JSON value.
pub fn run_any(cfg: &ExperimentConfig) -> Result<serde_json::Value> {
    Ok(match cfg.experiment {
        ExperimentKind::MeasureZero => serde_json::to_value(run_measure_zero(cfg)?)?,
        ExperimentKind::Perturbation => serde_json::to_value(run_perturbation(cfg)?)?,
        ExperimentKind::Convexity => serde_json::to_value(run_convexity(cfg)?)?,
        ExperimentKind::Trajectory => serde_json::to_value(run_trajectory_study(cfg)?)?,
        ExperimentKind::DiscordSingle => serde_json::to_value(run_discord_single(cfg)?)?,
    })
}
