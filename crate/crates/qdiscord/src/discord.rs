//! Quantum discord and membership tests for the zero-discord geometry.
//!
//! Discord is the gap between total and classical correlations,
//!
//! ```text
//! D(ρ) = I(ρ) − J(ρ),   J(ρ) = S(ρ_B) − min_{Π} Σ_j p_j S(ρ_B|j),
//! ```
//!
//! with the minimum taken over rank-1 projective measurements `{Π_j}` on
//! subsystem A. The measurement always acts on A here; to measure on B, swap
//! the subsystems explicitly ([`crate::states::DensityMatrix::swap_subsystems`]).
//! The measurement optimizer is a seeded multi-start Nelder-Mead over the
//! `d_A²−1` real parameters of a basis-defining unitary `U = exp(iH)`;
//! restricting to projective measurements means the computed discord is exact
//! for the projective definition and an upper bound for the POVM variant.
//!
//! Zero-discord states are exactly the block-diagonal (classical-quantum)
//! states `ρ = Σ_j p_j Π_j ⊗ σ_j` (the set Ω₀). Every such state commutes
//! with `ρ_A ⊗ 1_B`, which motivates the cheap necessary criterion
//! `‖[ρ, ρ_A⊗1_B]‖_F = 0` defining the superset C₀: a strictly positive
//! commutator norm certifies positive discord, while the Bell state shows the
//! converse fails (it sits in C₀ with a full bit of discord).

use ndarray::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bloch::generator_basis;
use crate::linalg::{self, C64};
use crate::simplex::{self, SimplexOptions};
use crate::states::{
    entropy_from_eigenvalues, mutual_information, von_neumann_entropy, DensityMatrix,
};
use crate::{Error, Result};

/// Default tolerance on the commutator Frobenius norm for C₀ membership.
pub const DEFAULT_C0_TOL: f64 = 1e-10;

/// Measurement outcomes with probability below this contribute nothing to
/// conditional entropies.
pub const OUTCOME_PROBABILITY_CUTOFF: f64 = 1e-14;

/// Projector-set invariants are enforced to this tolerance.
pub const MEASUREMENT_TOL: f64 = 1e-10;

/// Eigenvalue gaps of ρ_A below this count as degenerate, switching the Ω₀
/// residual to its optimization fallback.
pub const DEGENERACY_GAP: f64 = 1e-8;

/// A complete set of rank-1 orthogonal projectors on H_A.
#[derive(Debug, Clone)]
pub struct ProjectiveMeasurement {
    dim: usize,
    projectors: Vec<Array2<C64>>,
}

impl ProjectiveMeasurement {
    /// Measurement in the basis given by the columns of a unitary.
    pub fn from_unitary(u: &Array2<C64>) -> Result<Self> {
        let d = u.nrows();
        if u.ncols() != d || d == 0 {
            return Err(Error::DimensionMismatch("basis matrix must be square".into()));
        }
        let gram = linalg::dagger(u).dot(u);
        let defect = linalg::max_abs_diff(&gram, &linalg::eye(d));
        if defect > MEASUREMENT_TOL {
            return Err(Error::InvalidMeasurement(format!(
                "basis matrix is not unitary (‖U†U − 1‖_max = {defect:.3e})"
            )));
        }
        let projectors = (0..d)
            .map(|j| {
                let col = u.column(j);
                Array2::from_shape_fn((d, d), |(r, c)| col[r] * col[c].conj())
            })
            .collect();
        Ok(Self { dim: d, projectors })
    }

    /// The computational (standard) basis measurement.
    pub fn computational(dim: usize) -> Self {
        let projectors = (0..dim)
            .map(|j| {
                let mut p = Array2::zeros((dim, dim));
                p[(j, j)] = C64::new(1.0, 0.0);
                p
            })
            .collect();
        Self { dim, projectors }
    }

    /// Validate and wrap an explicit projector set.
    pub fn from_projectors(projectors: Vec<Array2<C64>>) -> Result<Self> {
        let dim = projectors.len();
        let m = Self { dim, projectors };
        m.validate()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projectors(&self) -> &[Array2<C64>] {
        &self.projectors
    }

    /// Check Π_j² = Π_j, Π_jΠ_k = 0, ΣΠ_j = 1, Tr Π_j = 1.
    pub fn validate(&self) -> Result<()> {
        if self.projectors.len() != self.dim {
            return Err(Error::InvalidMeasurement(format!(
                "{} projectors for dimension {}",
                self.projectors.len(),
                self.dim
            )));
        }
        let mut sum: Array2<C64> = Array2::zeros((self.dim, self.dim));
        for (j, p) in self.projectors.iter().enumerate() {
            if p.dim() != (self.dim, self.dim) {
                return Err(Error::DimensionMismatch(format!("projector {j} has wrong shape")));
            }
            let idem = linalg::max_abs_diff(&p.dot(p), p);
            if idem > MEASUREMENT_TOL {
                return Err(Error::InvalidMeasurement(format!(
                    "projector {j} not idempotent ({idem:.3e})"
                )));
            }
            let tr = linalg::trace(p);
            if (tr.re - 1.0).abs() > MEASUREMENT_TOL || tr.im.abs() > MEASUREMENT_TOL {
                return Err(Error::InvalidMeasurement(format!(
                    "projector {j} is not rank 1 (trace {tr})"
                )));
            }
            for (k, q) in self.projectors.iter().enumerate() {
                if j != k {
                    let cross = linalg::frobenius_norm(&p.dot(q));
                    if cross > MEASUREMENT_TOL {
                        return Err(Error::InvalidMeasurement(format!(
                            "projectors {j},{k} not orthogonal ({cross:.3e})"
                        )));
                    }
                }
            }
            sum = sum + p;
        }
        let complete = linalg::max_abs_diff(&sum, &linalg::eye(self.dim));
        if complete > MEASUREMENT_TOL {
            return Err(Error::InvalidMeasurement(format!(
                "projectors do not resolve the identity ({complete:.3e})"
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MeasurementRecord {
    dim: usize,
    projectors: Vec<Vec<Vec<[f64; 2]>>>,
}

impl Serialize for ProjectiveMeasurement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MeasurementRecord {
            dim: self.dim,
            projectors: self.projectors.iter().map(crate::states::matrix_to_rows).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjectiveMeasurement {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let rec = MeasurementRecord::deserialize(deserializer)?;
        let projectors: Result<Vec<_>> =
            rec.projectors.iter().map(|p| crate::states::rows_to_matrix(p)).collect();
        let m = ProjectiveMeasurement {
            dim: rec.dim,
            projectors: projectors.map_err(serde::de::Error::custom)?,
        };
        m.validate().map_err(serde::de::Error::custom)?;
        Ok(m)
    }
}

/// Multi-start settings for the measurement optimizer.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    /// Number of Nelder-Mead restarts; the first starts from the
    /// computational basis, the rest from seeded random parameter points.
    pub restarts: usize,
    /// Convergence tolerance on the objective, in bits.
    pub tol: f64,
    pub max_iters: usize,
    /// Master seed for the restart initial points.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { restarts: 20, tol: 1e-8, max_iters: 400, seed: 0 }
    }
}

/// Outcome of a discord evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct DiscordResult {
    /// I(ρ) in bits.
    pub mutual_information: f64,
    /// J(ρ) in bits, from the best measurement found.
    pub classical_correlations: f64,
    /// D(ρ) = I − J in bits, clamped to zero within −1e-9.
    pub discord: f64,
    pub optimal_measurement: ProjectiveMeasurement,
    pub optimizer_restarts_used: usize,
    /// False when no restart met the objective tolerance; the values are
    /// then still the best upper bound found, not an exception.
    pub converged: bool,
}

/// Average post-measurement entropy of B: `Σ_j p_j S(ρ_B|j)` with
/// `p_j = Tr[ρ (Π_j⊗1)]` and `ρ_B|j = Tr_A[(Π_j⊗1) ρ] / p_j`.
pub fn conditional_entropy(rho: &DensityMatrix, m: &ProjectiveMeasurement) -> Result<f64> {
    if m.dim() != rho.dim_a() {
        return Err(Error::DimensionMismatch(format!(
            "measurement dimension {} does not match d_A = {}",
            m.dim(),
            rho.dim_a()
        )));
    }
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let mat = rho.matrix();
    let mut total = 0.0;
    let mut sigma: Array2<C64> = Array2::zeros((db, db));
    for proj in m.projectors() {
        // σ_j[b,b'] = Σ_{a,a'} Π_j[a',a] ρ[(a,b),(a',b')]  (unnormalized)
        sigma.fill(C64::new(0.0, 0.0));
        for a in 0..da {
            for a2 in 0..da {
                let w = proj[(a2, a)];
                if w.norm_sqr() == 0.0 {
                    continue;
                }
                for b in 0..db {
                    for b2 in 0..db {
                        sigma[(b, b2)] += w * mat[(a * db + b, a2 * db + b2)];
                    }
                }
            }
        }
        let p = linalg::trace(&sigma).re;
        if p < OUTCOME_PROBABILITY_CUTOFF {
            continue;
        }
        let normalized = sigma.mapv(|z| z / p);
        let eigs = linalg::hermitian_eigenvalues(&linalg::hermitize(&normalized))?;
        total += p * entropy_from_eigenvalues(&eigs)?;
    }
    Ok(total)
}

struct MinimizedConditional {
    value: f64,
    measurement: ProjectiveMeasurement,
    restarts_used: usize,
    converged: bool,
}

/// Measurement basis from optimizer parameters: columns of `exp(i Σ x_p γ_p)`.
fn measurement_from_params(x: &[f64], dim: usize) -> Result<ProjectiveMeasurement> {
    let basis = generator_basis(dim)?;
    let mut h: Array2<C64> = Array2::zeros((dim, dim));
    for (xp, g) in x.iter().zip(basis.generators()) {
        if *xp != 0.0 {
            h = h + g.mapv(|z| z * *xp);
        }
    }
    let u = linalg::expi_hermitian(&h)?;
    ProjectiveMeasurement::from_unitary(&u)
}

fn minimize_conditional_entropy(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<MinimizedConditional> {
    let da = rho.dim_a();
    let nparams = da * da - 1;
    let opts = SimplexOptions { tol: cfg.tol, max_iters: cfg.max_iters, ..Default::default() };

    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    let restarts = cfg.restarts.max(1);
    for r in 0..restarts {
        let x0 = if r == 0 {
            vec![0.0; nparams]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            (0..nparams).map(|_| rng.random_range(-1.5..1.5)).collect()
        };
        let objective = |x: &[f64]| match measurement_from_params(x, da)
            .and_then(|m| conditional_entropy(rho, &m))
        {
            Ok(v) => v,
            Err(_) => f64::INFINITY,
        };
        let res = simplex::minimize(objective, &x0, &opts);
        // deterministic tie-break: strict improvement keeps the lowest index
        if best.as_ref().is_none_or(|(v, _, _)| res.value < *v) {
            best = Some((res.value, res.x, res.converged));
        }
    }
    let (value, x, converged) = best.expect("at least one restart");
    Ok(MinimizedConditional {
        value,
        measurement: measurement_from_params(&x, da)?,
        restarts_used: restarts,
        converged,
    })
}

/// Classical correlations `J(ρ) = S(ρ_B) − min_Π Σ_j p_j S(ρ_B|j)` and the
/// optimal measurement found.
pub fn classical_correlations(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<(f64, ProjectiveMeasurement)> {
    let min = minimize_conditional_entropy(rho, cfg)?;
    let sb = von_neumann_entropy(&rho.reduced_b())?;
    Ok(((sb - min.value).max(0.0), min.measurement))
}

/// Quantum discord `D(ρ) = I(ρ) − J(ρ)`, measuring on subsystem A.
pub fn discord(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<DiscordResult> {
    let i = mutual_information(rho)?;
    let min = minimize_conditional_entropy(rho, cfg)?;
    let sb = von_neumann_entropy(&rho.reduced_b())?;
    let mut j = (sb - min.value).max(0.0);
    let d = i - j;
    if d < -1e-9 {
        return Err(Error::NumericalInconsistency(format!(
            "discord {d:.3e} below -1e-9: J exceeds I beyond floating error"
        )));
    }
    if d < 0.0 {
        // J overshot I by floating error only; pin D to exactly I − J = 0
        j = i;
    }
    Ok(DiscordResult {
        mutual_information: i,
        classical_correlations: j,
        discord: i - j,
        optimal_measurement: min.measurement,
        optimizer_restarts_used: min.restarts_used,
        converged: min.converged,
    })
}

/// Frobenius norm of `[ρ, ρ_A ⊗ 1_B]`.
///
/// Zero is necessary for zero discord; a strictly positive value certifies
/// positive discord.
pub fn commutator_criterion(rho: &DensityMatrix) -> f64 {
    let ra_full = linalg::kron(&rho.reduced_a(), &linalg::eye(rho.dim_b()));
    linalg::frobenius_norm(&linalg::commutator(rho.matrix(), &ra_full))
}

/// Membership in `C₀ = {ρ : [ρ, ρ_A⊗1_B] = 0}` at the given tolerance
/// (use [`DEFAULT_C0_TOL`] for the documented default).
pub fn in_c0(rho: &DensityMatrix, tol: f64) -> bool {
    commutator_criterion(rho) <= tol
}

/// Result of the Ω₀ membership probe.
#[derive(Debug, Clone, Serialize)]
pub struct Omega0Result {
    /// `min_Π ‖ρ − Σ_j (Π_j⊗1) ρ (Π_j⊗1)‖_F`, or the best upper bound found.
    pub residual: f64,
    pub best_basis: ProjectiveMeasurement,
    /// False when the optimization fallback ran out of restarts without
    /// meeting tolerance; the residual is still a valid upper bound.
    pub converged: bool,
    /// True when ρ_A had (near-)degenerate eigenvalues and the optimizer ran.
    pub used_optimizer: bool,
}

/// `ρ ↦ Σ_j (Π_j⊗1) ρ (Π_j⊗1)`, the dephasing of ρ in the measured basis.
pub fn pinch(rho: &DensityMatrix, m: &ProjectiveMeasurement) -> Result<DensityMatrix> {
    if m.dim() != rho.dim_a() {
        return Err(Error::DimensionMismatch(format!(
            "measurement dimension {} does not match d_A = {}",
            m.dim(),
            rho.dim_a()
        )));
    }
    let id_b = linalg::eye(rho.dim_b());
    let d = rho.dim();
    let mut out: Array2<C64> = Array2::zeros((d, d));
    for p in m.projectors() {
        let full = linalg::kron(p, &id_b);
        out = out + full.dot(rho.matrix()).dot(&full);
    }
    Ok(DensityMatrix::unchecked(rho.dim_a(), rho.dim_b(), out))
}

fn pinch_residual(rho: &DensityMatrix, m: &ProjectiveMeasurement) -> Result<f64> {
    let pinched = pinch(rho, m)?;
    Ok(linalg::frobenius_norm(&(rho.matrix() - pinched.matrix())))
}

/// Distance of ρ from invariance under some von Neumann measurement on A:
/// zero exactly for the block-diagonal states of Ω₀.
///
/// The eigenbasis of ρ_A is the exact minimizer when ρ_A is nondegenerate;
/// near-degenerate spectra fall back to multi-start optimization over bases
/// and keep the better of the two candidates.
pub fn omega0_residual(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<Omega0Result> {
    let ra = rho.reduced_a();
    let (eigs, vecs) = linalg::hermitian_eigen(&ra)?;
    let eigen_candidate = ProjectiveMeasurement::from_unitary(&vecs)?;
    let eigen_residual = pinch_residual(rho, &eigen_candidate)?;

    let degenerate = eigs.windows(2).any(|w| (w[1] - w[0]).abs() < DEGENERACY_GAP);
    if !degenerate {
        return Ok(Omega0Result {
            residual: eigen_residual,
            best_basis: eigen_candidate,
            converged: true,
            used_optimizer: false,
        });
    }

    let da = rho.dim_a();
    let nparams = da * da - 1;
    let opts = SimplexOptions { tol: cfg.tol, max_iters: cfg.max_iters, ..Default::default() };
    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    for r in 0..cfg.restarts.max(1) {
        let x0 = if r == 0 {
            vec![0.0; nparams]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            (0..nparams).map(|_| rng.random_range(-1.5..1.5)).collect()
        };
        let objective = |x: &[f64]| match measurement_from_params(x, da)
            .and_then(|m| pinch_residual(rho, &m))
        {
            Ok(v) => v,
            Err(_) => f64::INFINITY,
        };
        let res = simplex::minimize(objective, &x0, &opts);
        if best.as_ref().is_none_or(|(v, _, _)| res.value < *v) {
            best = Some((res.value, res.x, res.converged));
        }
    }
    let (value, x, converged) = best.expect("at least one restart");
    if value < eigen_residual {
        Ok(Omega0Result {
            residual: value,
            best_basis: measurement_from_params(&x, da)?,
            converged,
            used_optimizer: true,
        })
    } else {
        Ok(Omega0Result {
            residual: eigen_residual,
            best_basis: eigen_candidate,
            converged,
            used_optimizer: true,
        })
    }
}

/// Build the block-diagonal zero-discord state `ρ = Σ_j p_j Π_j ⊗ σ_j`.
pub fn make_zero_discord(
    p: &[f64],
    basis: &ProjectiveMeasurement,
    sigmas: &[Array2<C64>],
) -> Result<DensityMatrix> {
    let da = basis.dim();
    if p.len() != da || sigmas.len() != da {
        return Err(Error::DimensionMismatch(format!(
            "need {da} probabilities and conditional states, got {} and {}",
            p.len(),
            sigmas.len()
        )));
    }
    if p.iter().any(|&x| x < -1e-12) {
        return Err(Error::InvalidProbabilities("negative entry".into()));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidProbabilities(format!("sum {total} differs from 1")));
    }
    let db = sigmas[0].nrows();
    let mut out: Array2<C64> = Array2::zeros((da * db, da * db));
    for ((&pj, proj), sigma) in p.iter().zip(basis.projectors()).zip(sigmas) {
        if sigma.dim() != (db, db) {
            return Err(Error::DimensionMismatch(
                "conditional states must share one dimension".into(),
            ));
        }
        linalg::check_state(sigma, crate::states::STATE_TOL)?;
        if pj > 0.0 {
            out = out + linalg::kron(proj, sigma).mapv(|z| z * pj);
        }
    }
    Ok(DensityMatrix::unchecked(da, db, out))
}
