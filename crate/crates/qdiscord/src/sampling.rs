//! Seeded random ensembles of states, unitaries, and perturbations.
//!
//! Reproducibility contract: every public sampling operation consumes exactly
//! one draw index from a [`SeededSampler`], and identical
//! `(master_seed, counter)` pairs produce bit-identical output on every run
//! and platform. Draw `k` of master seed `m` reads the ChaCha8 stream
//! `(seed = m, stream = k)`; parallel trials derive disjoint child samplers
//! with a splitmix64 mix of the master seed (see [`SeededSampler::child`] and
//! [`PRNG_IDENTIFIER`]).
//!
//! "Random state" means Hilbert-Schmidt measure: `ρ = GG†/Tr[GG†]` for a
//! complex Ginibre matrix `G` (full rank unless asked otherwise). Haar
//! unitaries come from QR of a Ginibre matrix with the usual phase fix, and
//! probability simplices from normalized exponentials.

use ndarray::prelude::*;
use ndarray_linalg::QR;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::discord::{make_zero_discord, ProjectiveMeasurement};
use crate::linalg::{self, C64};
use crate::states::{maximally_mixed, DensityMatrix};
use crate::{Error, Result};

/// Pinned PRNG scheme, echoed in reports and `--version` output.
pub const PRNG_IDENTIFIER: &str =
    "ChaCha8(seed=master, stream=draw-counter) + splitmix64 child-seed derivation";

/// Counter-based deterministic sampler.
///
/// A value type: cloning forks the draw counter, `child(i)` derives an
/// independent sampler for parallel trial `i`.
#[derive(Debug, Clone)]
pub struct SeededSampler {
    master_seed: u64,
    counter: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl SeededSampler {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed, counter: 0 }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Index of the next draw.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Independent sampler for parallel trial `index`.
    pub fn child(&self, index: u64) -> Self {
        Self {
            master_seed: splitmix64(self.master_seed ^ index.wrapping_add(1)),
            counter: 0,
        }
    }

    fn next_rng(&mut self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.counter);
        self.counter += 1;
        rng
    }
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Array2<C64> {
    Array2::from_shape_simple_fn((rows, cols), || complex_gaussian(rng))
}

/// `GG†/Tr[GG†]` for a `d×rank` Ginibre block: the induced Hilbert-Schmidt
/// measure at the given rank.
fn hs_density(d: usize, rank: usize, rng: &mut ChaCha8Rng) -> Array2<C64> {
    let g = ginibre(d, rank, rng);
    let m = g.dot(&linalg::dagger(&g));
    let tr = linalg::trace(&m).re;
    linalg::hermitize(&m.mapv(|z| z / tr))
}

fn haar_unitary(d: usize, rng: &mut ChaCha8Rng) -> Result<Array2<C64>> {
    let g = ginibre(d, d, rng);
    let (q, r) = g.qr()?;
    let mut u = q;
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..d {
            u[(i, j)] *= phase;
        }
    }
    Ok(u)
}

/// Haar-random pure state `|ψ⟩⟨ψ|` on `H_A ⊗ H_B`.
pub fn random_pure_state(dims: (usize, usize), s: &mut SeededSampler) -> Result<DensityMatrix> {
    let d = dims.0 * dims.1;
    if d < 2 {
        return Err(Error::InvalidDimension(format!("total dimension {d} < 2")));
    }
    let mut rng = s.next_rng();
    let psi = Array1::from_shape_simple_fn(d, || complex_gaussian(&mut rng));
    DensityMatrix::from_pure(dims.0, dims.1, &psi)
}

/// Hilbert-Schmidt random mixed state of the given rank (`rank = d` samples
/// the full-measure induced distribution on states).
pub fn random_mixed_state(
    dims: (usize, usize),
    rank: usize,
    s: &mut SeededSampler,
) -> Result<DensityMatrix> {
    let d = dims.0 * dims.1;
    if d < 2 {
        return Err(Error::InvalidDimension(format!("total dimension {d} < 2")));
    }
    if rank == 0 || rank > d {
        return Err(Error::InvalidParameter(format!("rank {rank} outside 1..={d}")));
    }
    let mut rng = s.next_rng();
    Ok(DensityMatrix::unchecked(dims.0, dims.1, hs_density(d, rank, &mut rng)))
}

/// Haar-random unitary via QR of a Ginibre matrix with the phase correction
/// `U = Q·diag(R_jj/|R_jj|)`.
pub fn random_unitary(d: usize, s: &mut SeededSampler) -> Result<Array2<C64>> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!("unitary dimension {d} < 2")));
    }
    let mut rng = s.next_rng();
    haar_unitary(d, &mut rng)
}

/// Flat Dirichlet draw on the probability simplex via normalized
/// exponentials.
pub fn random_simplex(n: usize, s: &mut SeededSampler) -> Vec<f64> {
    let mut rng = s.next_rng();
    flat_simplex(n, &mut rng)
}

fn flat_simplex(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| x / total).collect()
}

/// Random zero-discord state `Σ_j p_j Π_j ⊗ σ_j` with a Haar-random basis,
/// flat simplex weights, and independent Hilbert-Schmidt conditionals.
pub fn random_zero_discord(
    dim_a: usize,
    dim_b: usize,
    s: &mut SeededSampler,
) -> Result<DensityMatrix> {
    if dim_a < 2 || dim_b < 2 {
        return Err(Error::InvalidDimension(format!(
            "zero-discord sampling needs dims ≥ 2, got ({dim_a}, {dim_b})"
        )));
    }
    // one counter tick for the whole draw
    let mut rng = s.next_rng();
    let basis = ProjectiveMeasurement::from_unitary(&haar_unitary(dim_a, &mut rng)?)?;
    let p = flat_simplex(dim_a, &mut rng);
    let sigmas: Vec<Array2<C64>> =
        (0..dim_a).map(|_| hs_density(dim_b, dim_b, &mut rng)).collect();
    make_zero_discord(&p, &basis, &sigmas)
}

/// Convex perturbation `(1−η) ρ + η σ` with `σ` an independent full-rank
/// Hilbert-Schmidt state on the same dimensions.
pub fn perturb(rho: &DensityMatrix, eta: f64, s: &mut SeededSampler) -> Result<DensityMatrix> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::InvalidParameter(format!("η = {eta} outside (0, 1]")));
    }
    let d = rho.dim();
    let mut rng = s.next_rng();
    let sigma = hs_density(d, d, &mut rng);
    let m = rho.matrix() * C64::new(1.0 - eta, 0.0) + sigma.mapv(|z| z * eta);
    Ok(DensityMatrix::unchecked(rho.dim_a(), rho.dim_b(), m))
}

/// Global white noise: `(1−λ) ρ + λ 1/d`.
///
/// Zero-discord states stay zero-discord along the whole segment, and the
/// commutator norm scales exactly as `(1−λ)²` by bilinearity.
pub fn depolarize_toward_identity(rho: &DensityMatrix, lam: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lam) {
        return Err(Error::InvalidParameter(format!("λ = {lam} outside [0, 1]")));
    }
    let mixed = maximally_mixed(rho.dim_a(), rho.dim_b());
    let m = rho.matrix() * C64::new(1.0 - lam, 0.0) + mixed.matrix() * C64::new(lam, 0.0);
    Ok(DensityMatrix::unchecked(rho.dim_a(), rho.dim_b(), m))
}
