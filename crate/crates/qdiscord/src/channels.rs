//! CPTP channels, their spectral decomposition, and discrete Markovian
//! trajectories through the singular set C₀.
//!
//! A channel is a Kraus set `{K_α}` with `Σ K_α†K_α = 1`, cached alongside
//! its superoperator in the column-stacking convention, where
//! `ρ ↦ Σ K ρ K†` becomes `vec(ρ) ↦ Σ (conj(K) ⊗ K) vec(ρ)`.
//!
//! Diagonalizable superoperators decompose as `Λ = Σ λ_i |μ_i)(ν_i|` with
//! biorthogonal left/right eigenoperators under the Hilbert-Schmidt inner
//! product, `(ν_i|μ_j) = δ_ij`. Iterating the channel n times raises the
//! eigenvalues to the n-th power, `Λⁿ = Σ λ_iⁿ |μ_i)(ν_i|`, which is what
//! makes the dynamics of the commutator norm `‖[ρ_t, (ρ_t)_A⊗1]‖` tractable:
//! a trajectory can pass through C₀ transversally at most
//! `d̃(d̃−1)/2 − 1` times, where `d̃` is the number of distinct eigenvalues.
//!
//! Crossing detection is threshold-based (exact zeros are measure-zero in
//! floating point): a maximal run of consecutive below-threshold steps counts
//! as one crossing, and only runs bracketed on both sides by above-threshold
//! steps are transversal crossings — a final run that persists to the last
//! step is asymptotic capture by a steady state inside C₀, not a crossing.

use ndarray::prelude::*;
use ndarray_linalg::SVD;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

use crate::discord::{discord, OptimizerConfig};
use crate::linalg::{self, C64};
use crate::states::{partial_trace_matrix, DensityMatrix, Subsystem};
use crate::{Error, Result};

/// Channel invariants (trace preservation, Choi positivity) are enforced to
/// this tolerance.
pub const CHANNEL_TOL: f64 = 1e-10;

/// Eigenvalues closer than this are the same distinct value when counting
/// `d̃` for the crossing bound.
pub const EIGENVALUE_CLUSTER_TOL: f64 = 1e-8;

/// Default commutator-norm threshold for crossing detection.
pub const DEFAULT_CROSSING_THRESHOLD: f64 = 1e-8;

/// Eigenvector-matrix condition numbers above this reject the map as
/// (numerically) defective.
const CONDITION_LIMIT: f64 = 1e12;

/// Built-in channel families. Local kinds act on subsystem A tensored with
/// the identity on B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    /// `ρ ↦ (1−p) ρ + p 1/d` on the whole composite space.
    GlobalDepolarizing,
    /// Depolarizing on A alone: `ρ_A ↦ (1−p) ρ_A + p 1/d_A`.
    LocalDepolarizing,
    /// Phase damping on A; for a qubit the Kraus pair `{√(1−q) 1, √q σ_z}`.
    LocalDephasing,
    /// Qubit amplitude damping on A with decay probability γ.
    AmplitudeDamping,
}

impl ChannelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChannelKind::GlobalDepolarizing => "global_depolarizing",
            ChannelKind::LocalDepolarizing => "local_depolarizing",
            ChannelKind::LocalDephasing => "local_dephasing",
            ChannelKind::AmplitudeDamping => "amplitude_damping",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Mixing/damping probability in [0, 1].
    pub strength: f64,
}

/// Serializable channel description: `{ "kind": …, "params": { "strength": … },
/// "dims": [d_A, d_B] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelDescriptor {
    pub kind: ChannelKind,
    pub params: ChannelParams,
    pub dims: (usize, usize),
}

impl ChannelDescriptor {
    pub fn new(kind: ChannelKind, strength: f64, dims: (usize, usize)) -> Self {
        Self { kind, params: ChannelParams { strength }, dims }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serialization cannot fail")
    }
}

/// A completely-positive trace-preserving map on the composite space,
/// stored as a Kraus set with its superoperator cached.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    dims: (usize, usize),
    kraus: Vec<Array2<C64>>,
    superop: Array2<C64>,
}

impl QuantumChannel {
    /// Validate a Kraus set (trace preservation and Choi positivity at
    /// [`CHANNEL_TOL`]) and cache its superoperator.
    pub fn from_kraus(dims: (usize, usize), kraus: Vec<Array2<C64>>) -> Result<Self> {
        let d = dims.0 * dims.1;
        if d < 2 {
            return Err(Error::InvalidDimension(format!("total dimension {d} < 2")));
        }
        if kraus.is_empty() {
            return Err(Error::InvalidParameter("empty Kraus set".into()));
        }
        for (i, k) in kraus.iter().enumerate() {
            if k.dim() != (d, d) {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator {i} is {}×{}, expected {d}×{d}",
                    k.nrows(),
                    k.ncols()
                )));
            }
        }
        // Σ K†K = 1
        let mut tp: Array2<C64> = Array2::zeros((d, d));
        for k in &kraus {
            tp = tp + linalg::dagger(k).dot(k);
        }
        let tp_defect = linalg::max_abs_diff(&tp, &linalg::eye(d));
        if tp_defect > CHANNEL_TOL {
            return Err(Error::InvalidParameter(format!(
                "Kraus set is not trace preserving (‖ΣK†K − 1‖_max = {tp_defect:.3e})"
            )));
        }
        let mut superop: Array2<C64> = Array2::zeros((d * d, d * d));
        for k in &kraus {
            superop = superop + linalg::kron(&k.mapv(|z| z.conj()), k);
        }
        let ch = Self { dims, kraus, superop };
        // Choi positivity, computed from the superoperator
        let choi = linalg::hermitize(&ch.choi());
        let eigs = linalg::hermitian_eigenvalues(&choi)?;
        let min = eigs.first().copied().unwrap_or(0.0);
        if min < -CHANNEL_TOL {
            return Err(Error::NotAState {
                reason: "Choi matrix has a negative eigenvalue: map not completely positive"
                    .into(),
                min_eigenvalue: min,
            });
        }
        Ok(ch)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// Total Hilbert dimension `d = d_A · d_B`.
    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    pub fn kraus(&self) -> &[Array2<C64>] {
        &self.kraus
    }

    /// The `d²×d²` superoperator in the column-stacking convention.
    pub fn superop(&self) -> &Array2<C64> {
        &self.superop
    }

    /// Apply the channel once to an operator.
    pub fn apply(&self, m: &Array2<C64>) -> Array2<C64> {
        let v = self.superop.dot(&linalg::vec_cs(m));
        linalg::unvec_cs(&v.view(), self.dim())
    }

    /// Choi matrix, by reshuffling the superoperator:
    /// `J[(j,i),(l,k)] = S[(k,i),(l,j)]`.
    pub fn choi(&self) -> Array2<C64> {
        let d = self.dim();
        Array2::from_shape_fn((d * d, d * d), |(row, col)| {
            let (j, i) = (row / d, row % d);
            let (l, k) = (col / d, col % d);
            self.superop[(k * d + i, l * d + j)]
        })
    }
}

fn weyl_unitaries(n: usize) -> Vec<Array2<C64>> {
    let omega = 2.0 * std::f64::consts::PI / n as f64;
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            // W_{ab} = X^a Z^b,  (X^a Z^b)|j⟩ = ω^{bj} |j+a mod n⟩
            let mut w = Array2::zeros((n, n));
            for j in 0..n {
                w[((j + a) % n, j)] = C64::from_polar(1.0, omega * (b * j) as f64);
            }
            out.push(w);
        }
    }
    out
}

/// Build one of the built-in channel families on `H_A ⊗ H_B`.
pub fn make_channel(desc: &ChannelDescriptor) -> Result<QuantumChannel> {
    let (da, db) = desc.dims;
    let p = desc.params.strength;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "channel strength {p} outside [0, 1]"
        )));
    }
    if da < 2 || db < 1 {
        return Err(Error::InvalidDimension(format!(
            "channel dims ({da}, {db}) unsupported"
        )));
    }
    let d = da * db;
    let id_b = linalg::eye(db);
    let kraus: Vec<Array2<C64>> = match desc.kind {
        ChannelKind::GlobalDepolarizing => {
            // ρ ↦ (1−p)ρ + (p/d²) Σ_W WρW† = (1−p)ρ + p·1/d
            let mut ks = vec![linalg::eye(d).mapv(|z| z * (1.0 - p + p / (d * d) as f64).sqrt())];
            let scale = p.sqrt() / d as f64;
            for w in weyl_unitaries(d).into_iter().skip(1) {
                ks.push(w.mapv(|z| z * scale));
            }
            ks
        }
        ChannelKind::LocalDepolarizing => {
            let mut ks =
                vec![linalg::eye(d).mapv(|z| z * (1.0 - p + p / (da * da) as f64).sqrt())];
            let scale = p.sqrt() / da as f64;
            for w in weyl_unitaries(da).into_iter().skip(1) {
                ks.push(linalg::kron(&w, &id_b).mapv(|z| z * scale));
            }
            ks
        }
        ChannelKind::LocalDephasing => {
            // {√(1−q) 1} ∪ {√(q/(d_A−1)) Z^k}; for a qubit exactly
            // {√(1−q) 1, √q σ_z}
            let omega = 2.0 * std::f64::consts::PI / da as f64;
            let mut ks = vec![linalg::eye(d).mapv(|z| z * (1.0 - p).sqrt())];
            let scale = (p / (da - 1) as f64).sqrt();
            for k in 1..da {
                let mut z = Array2::zeros((da, da));
                for j in 0..da {
                    z[(j, j)] = C64::from_polar(1.0, omega * (k * j) as f64);
                }
                ks.push(linalg::kron(&z, &id_b).mapv(|v| v * scale));
            }
            ks
        }
        ChannelKind::AmplitudeDamping => {
            if da != 2 {
                return Err(Error::InvalidDimension(format!(
                    "amplitude damping is defined here for qubit A only, got d_A = {da}"
                )));
            }
            let k0 = array![
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                [C64::new(0.0, 0.0), C64::new((1.0 - p).sqrt(), 0.0)]
            ];
            let k1 = array![
                [C64::new(0.0, 0.0), C64::new(p.sqrt(), 0.0)],
                [C64::new(0.0, 0.0), C64::new(0.0, 0.0)]
            ];
            vec![linalg::kron(&k0, &id_b), linalg::kron(&k1, &id_b)]
        }
    };
    QuantumChannel::from_kraus(desc.dims, kraus)
}

/// A channel that mixes toward a fixed target state:
/// `ρ ↦ (1−p) ρ + p Tr[ρ]·ρ*`.
///
/// Its spectrum is `{1, 1−p}` with a unique steady state `ρ*`, handy for
/// studying dynamics whose steady state lies outside C₀.
pub fn replacement_channel(target: &DensityMatrix, p: f64) -> Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("mixing {p} outside [0, 1]")));
    }
    let d = target.dim();
    let mut kraus = vec![linalg::eye(d).mapv(|z| z * (1.0 - p).sqrt())];
    let (eigs, vecs) = linalg::hermitian_eigen(target.matrix())?;
    for (idx, &lam) in eigs.iter().enumerate() {
        if lam <= 1e-14 {
            continue;
        }
        let col = vecs.column(idx);
        // K_{idx,j} = √(p λ) |v_idx⟩⟨j|
        let scale = (p * lam).sqrt();
        for j in 0..d {
            let mut k = Array2::zeros((d, d));
            for r in 0..d {
                k[(r, j)] = col[r] * scale;
            }
            kraus.push(k);
        }
    }
    QuantumChannel::from_kraus((target.dim_a(), target.dim_b()), kraus)
}

/// Spectral form `Λ = Σ λ_i |μ_i)(ν_i|` of a diagonalizable channel.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dims: (usize, usize),
    eigenvalues: Vec<C64>,
    right_ops: Vec<Array2<C64>>,
    left_ops: Vec<Array2<C64>>,
    n_distinct: usize,
    diagonalizable: bool,
    unitary: bool,
    condition_number: f64,
}

fn cluster_count(values: &[C64], tol: f64) -> usize {
    let mut reps: Vec<C64> = Vec::new();
    for &v in values {
        if !reps.iter().any(|r| (r - v).norm() <= tol) {
            reps.push(v);
        }
    }
    reps.len()
}

fn cluster_representatives(values: &[C64], tol: f64) -> Vec<C64> {
    let mut reps: Vec<C64> = Vec::new();
    for &v in values {
        if !reps.iter().any(|r| (r - v).norm() <= tol) {
            reps.push(v);
        }
    }
    reps
}

impl SpectralDecomposition {
    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    /// Right eigenoperators `|μ_i)`.
    pub fn right_ops(&self) -> &[Array2<C64>] {
        &self.right_ops
    }

    /// Left eigenoperators `(ν_i|`, normalized so `(ν_i|μ_j) = δ_ij`.
    pub fn left_ops(&self) -> &[Array2<C64>] {
        &self.left_ops
    }

    /// Number of distinct eigenvalues `d̃` under tolerance clustering.
    pub fn n_distinct(&self) -> usize {
        self.n_distinct
    }

    pub fn diagonalizable(&self) -> bool {
        self.diagonalizable
    }

    /// True when every eigenvalue has unit modulus (unitary evolution, no
    /// decoherence); such maps have no meaningful steady state.
    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn condition_number(&self) -> f64 {
        self.condition_number
    }

    /// Upper bound `d̃(d̃−1)/2 − 1` on the number of transversal C₀
    /// crossings, floored at zero.
    pub fn crossing_bound(&self) -> usize {
        crossing_bound_for(self.n_distinct)
    }

    /// Number of distinct pairwise eigenvalue products `λ_i λ_j` (over
    /// unordered pairs, including i = j), tolerance-clustered.
    ///
    /// The crossing argument runs on these products; their count can differ
    /// from `d̃(d̃−1)/2` for special spectra, so reports carry both numbers
    /// and a mismatch flag rather than resolving the discrepancy.
    pub fn distinct_product_count(&self) -> usize {
        let reps = cluster_representatives(&self.eigenvalues, EIGENVALUE_CLUSTER_TOL);
        let mut products = Vec::new();
        for (a, &x) in reps.iter().enumerate() {
            for &y in reps.iter().skip(a) {
                products.push(x * y);
            }
        }
        cluster_count(&products, EIGENVALUE_CLUSTER_TOL)
    }
}

/// `d̃(d̃−1)/2 − 1`, floored at zero.
pub fn crossing_bound_for(n_distinct: usize) -> usize {
    (n_distinct * n_distinct.saturating_sub(1) / 2).saturating_sub(1)
}

/// Diagonalize a channel into biorthogonal eigenoperator pairs.
///
/// Fails with [`Error::UnsupportedMap`] when the eigenvector matrix is too
/// ill-conditioned to trust (defective superoperator).
pub fn spectral_decompose(ch: &QuantumChannel) -> Result<SpectralDecomposition> {
    let d = ch.dim();
    let (eigenvalues, v) = linalg::general_eigen(ch.superop())?;

    let (_, singulars, _) = ch.superop().svd(false, false)?;
    let _ = singulars; // spectrum of S itself is not the diagnostic we need
    let (_, sv, _) = v.svd(false, false)?;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition_number = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !condition_number.is_finite() || condition_number > CONDITION_LIMIT {
        return Err(Error::UnsupportedMap {
            diagnostic: format!("eigenvector matrix condition number {condition_number:.3e}"),
        });
    }
    let vinv = linalg::inverse(&v)?;

    let max_mod = eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max_mod > 1.0 + CHANNEL_TOL || (max_mod - 1.0).abs() > CHANNEL_TOL {
        return Err(Error::NumericalInconsistency(format!(
            "largest eigenvalue modulus {max_mod} differs from 1: not a CPTP spectrum"
        )));
    }
    let unitary = eigenvalues.iter().all(|z| z.norm() > 1.0 - CHANNEL_TOL);

    let right_ops: Vec<Array2<C64>> =
        (0..d * d).map(|i| linalg::unvec_cs(&v.column(i), d)).collect();
    // (ν_i|ρ) = Tr[ν_i†ρ] must equal row i of V⁻¹ applied to vec(ρ),
    // so vec(ν_i) is the conjugated row
    let left_ops: Vec<Array2<C64>> = (0..d * d)
        .map(|i| {
            let row = vinv.row(i).mapv(|z| z.conj());
            linalg::unvec_cs(&row.view(), d)
        })
        .collect();

    let n_distinct = cluster_count(&eigenvalues, EIGENVALUE_CLUSTER_TOL);
    Ok(SpectralDecomposition {
        dims: ch.dims(),
        eigenvalues,
        right_ops,
        left_ops,
        n_distinct,
        diagonalizable: true,
        unitary,
        condition_number,
    })
}

/// Apply the channel `n` times.
pub fn evolve(ch: &QuantumChannel, rho: &DensityMatrix, n: usize) -> Result<DensityMatrix> {
    if (rho.dim_a(), rho.dim_b()) != ch.dims() {
        return Err(Error::DimensionMismatch(format!(
            "state dims ({}, {}) do not match channel dims {:?}",
            rho.dim_a(),
            rho.dim_b(),
            ch.dims()
        )));
    }
    let d = ch.dim();
    let mut v = linalg::vec_cs(rho.matrix());
    for _ in 0..n {
        v = ch.superop().dot(&v);
    }
    Ok(DensityMatrix::unchecked(rho.dim_a(), rho.dim_b(), linalg::unvec_cs(&v.view(), d)))
}

/// Evolve through the spectral form: `ρ_t = Σ_i ρ_i λ_iⁿ |μ_i)` with
/// `ρ_i = (ν_i|ρ)`.
pub fn evolve_spectral(
    sd: &SpectralDecomposition,
    rho: &DensityMatrix,
    n: usize,
) -> Result<DensityMatrix> {
    if (rho.dim_a(), rho.dim_b()) != sd.dims() {
        return Err(Error::DimensionMismatch(format!(
            "state dims ({}, {}) do not match channel dims {:?}",
            rho.dim_a(),
            rho.dim_b(),
            sd.dims()
        )));
    }
    let d = sd.dim();
    let mut out: Array2<C64> = Array2::zeros((d, d));
    for ((lam, mu), nu) in sd.eigenvalues.iter().zip(&sd.right_ops).zip(&sd.left_ops) {
        let coeff = linalg::hs_inner(nu, rho.matrix());
        if coeff.norm() == 0.0 {
            continue;
        }
        let lam_n = lam.powu(n as u32);
        out = out + mu.mapv(|z| z * coeff * lam_n);
    }
    Ok(DensityMatrix::unchecked(rho.dim_a(), rho.dim_b(), out))
}

/// The unique unit-trace fixed point of the channel.
///
/// Errors on unitary spectra (no decoherence) and when the eigenvalue-1
/// space is degenerate.
pub fn steady_state(sd: &SpectralDecomposition) -> Result<DensityMatrix> {
    if sd.unitary {
        return Err(Error::NoDecoherence);
    }
    let fixed: Vec<usize> = (0..sd.eigenvalues.len())
        .filter(|&i| (sd.eigenvalues[i] - C64::new(1.0, 0.0)).norm() <= EIGENVALUE_CLUSTER_TOL)
        .collect();
    match fixed.len() {
        0 => Err(Error::NumericalInconsistency(
            "no eigenvalue-1 eigenoperator found in a trace-preserving map".into(),
        )),
        1 => {
            let mu = &sd.right_ops[fixed[0]];
            let herm = linalg::hermitize(mu);
            let tr = linalg::trace(&herm).re;
            if tr.abs() < 1e-12 {
                return Err(Error::NumericalInconsistency(
                    "steady-state candidate is traceless".into(),
                ));
            }
            DensityMatrix::new(sd.dims.0, sd.dims.1, herm.mapv(|z| z / tr))
        }
        multiplicity => Err(Error::NonUniqueSteadyState { multiplicity }),
    }
}

/// The infinite-time limit of a specific initial state: the projection of ρ
/// onto the eigenvalue-1 eigenspace. Agrees with [`steady_state`] whenever
/// that one exists.
pub fn asymptotic_state(sd: &SpectralDecomposition, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if sd.unitary {
        return Err(Error::NoDecoherence);
    }
    let d = sd.dim();
    let mut out: Array2<C64> = Array2::zeros((d, d));
    for ((lam, mu), nu) in sd.eigenvalues.iter().zip(&sd.right_ops).zip(&sd.left_ops) {
        if (lam - C64::new(1.0, 0.0)).norm() <= EIGENVALUE_CLUSTER_TOL {
            let coeff = linalg::hs_inner(nu, rho.matrix());
            out = out + mu.mapv(|z| z * coeff);
        }
    }
    DensityMatrix::new(sd.dims.0, sd.dims.1, linalg::hermitize(&out))
}

/// Optional per-step work for [`run_trajectory_with`].
#[derive(Debug, Clone, Default)]
pub struct TrajectoryOptions {
    /// Keep every evolved state in the trajectory (memory grows with n_max).
    pub record_states: bool,
    /// Evaluate discord at every step with the given optimizer settings.
    /// Roughly a thousand times more expensive than the commutator norm.
    pub evaluate_discord: Option<OptimizerConfig>,
}

/// A discrete evolution record: step indices, commutator norms, optional
/// states and discord values, and the below-threshold runs.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<usize>,
    states: Vec<DensityMatrix>,
    commutator_norms: Vec<f64>,
    discord_values: Option<Vec<f64>>,
    crossings: Vec<(usize, usize)>,
    threshold: f64,
}

impl Trajectory {
    pub fn times(&self) -> &[usize] {
        &self.times
    }

    /// Evolved states; empty unless `record_states` was requested.
    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn commutator_norms(&self) -> &[f64] {
        &self.commutator_norms
    }

    pub fn discord_values(&self) -> Option<&[f64]> {
        self.discord_values.as_deref()
    }

    /// Maximal runs of consecutive steps with commutator norm below the
    /// threshold, as inclusive `(enter, exit)` step intervals.
    pub fn crossings(&self) -> &[(usize, usize)] {
        &self.crossings
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Below-threshold runs bracketed on both sides by above-threshold
    /// steps: the transversal passes through C₀ that the spectral bound
    /// counts. A run touching step 0 is an initial condition inside C₀; a
    /// run reaching the final step is asymptotic capture.
    pub fn transversal_crossings(&self) -> usize {
        let last = self.times.len().saturating_sub(1);
        self.crossings.iter().filter(|(enter, exit)| *enter > 0 && *exit < last).count()
    }

    /// True when the trajectory ends below threshold (captured by a steady
    /// state in or near C₀).
    pub fn ends_below_threshold(&self) -> bool {
        self.commutator_norms.last().is_some_and(|&n| n < self.threshold)
    }

    /// Write `step,commutator_norm,discord,in_c0` rows; the discord column
    /// is empty when it was not evaluated.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(file, "step,commutator_norm,discord,in_c0")?;
        for (idx, (&step, &norm)) in self.times.iter().zip(&self.commutator_norms).enumerate() {
            let discord = self
                .discord_values
                .as_ref()
                .map(|v| format!("{:.12e}", v[idx]))
                .unwrap_or_default();
            writeln!(
                file,
                "{step},{norm:.12e},{discord},{}",
                norm < self.threshold
            )?;
        }
        Ok(())
    }
}

fn commutator_norm_of(m: &Array2<C64>, da: usize, db: usize) -> f64 {
    let ra = partial_trace_matrix(m, da, db, Subsystem::A);
    let ra_full = linalg::kron(&ra, &linalg::eye(db));
    linalg::frobenius_norm(&linalg::commutator(m, &ra_full))
}

fn below_threshold_runs(norms: &[f64], threshold: f64) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut current: Option<usize> = None;
    for (i, &n) in norms.iter().enumerate() {
        if n < threshold {
            current.get_or_insert(i);
        } else if let Some(start) = current.take() {
            runs.push((start, i - 1));
        }
    }
    if let Some(start) = current {
        runs.push((start, norms.len() - 1));
    }
    runs
}

/// Iterate the channel `n_max` times from `rho0`, recording the commutator
/// norm at every step (including step 0) and the below-threshold runs.
pub fn run_trajectory(
    ch: &QuantumChannel,
    rho0: &DensityMatrix,
    n_max: usize,
    c0_threshold: f64,
) -> Result<Trajectory> {
    run_trajectory_with(ch, rho0, n_max, c0_threshold, &TrajectoryOptions::default())
}

pub fn run_trajectory_with(
    ch: &QuantumChannel,
    rho0: &DensityMatrix,
    n_max: usize,
    c0_threshold: f64,
    opts: &TrajectoryOptions,
) -> Result<Trajectory> {
    if (rho0.dim_a(), rho0.dim_b()) != ch.dims() {
        return Err(Error::DimensionMismatch(format!(
            "state dims ({}, {}) do not match channel dims {:?}",
            rho0.dim_a(),
            rho0.dim_b(),
            ch.dims()
        )));
    }
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    if c0_threshold <= 0.0 {
        return Err(Error::InvalidParameter("crossing threshold must be positive".into()));
    }
    let (da, db) = ch.dims();
    let d = ch.dim();
    let steps = n_max + 1;
    let mut times = Vec::with_capacity(steps);
    let mut norms = Vec::with_capacity(steps);
    let mut states = Vec::new();
    let mut discords = opts.evaluate_discord.as_ref().map(|_| Vec::with_capacity(steps));

    let mut v = linalg::vec_cs(rho0.matrix());
    for step in 0..steps {
        let m = linalg::unvec_cs(&v.view(), d);
        times.push(step);
        norms.push(commutator_norm_of(&m, da, db));
        if opts.record_states || discords.is_some() {
            let state = DensityMatrix::unchecked(da, db, m);
            if let (Some(values), Some(cfg)) = (discords.as_mut(), opts.evaluate_discord.as_ref())
            {
                values.push(discord(&state, cfg)?.discord);
            }
            if opts.record_states {
                states.push(state);
            }
        }
        if step < n_max {
            v = ch.superop().dot(&v);
        }
    }
    let crossings = below_threshold_runs(&norms, c0_threshold);
    Ok(Trajectory {
        times,
        states,
        commutator_norms: norms,
        discord_values: discords,
        crossings,
        threshold: c0_threshold,
    })
}
