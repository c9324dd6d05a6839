//! Bipartite density matrices and the elementary operations on them.
//!
//! A [`DensityMatrix`] is a dense complex matrix on `H_A ⊗ H_B` together with
//! the two subsystem dimensions. The composite basis ordering is row-major
//! over `(a, b)` index pairs (A-major Kronecker convention), shared by every
//! module in the crate. States are immutable values; every operation returns
//! a fresh state.
//!
//! Entropies are base-2 throughout: a maximally mixed qubit has entropy 1 bit
//! and the Bell state has mutual information 2 bits.

use ndarray::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::linalg::{self, C64};
use crate::{Error, Result};

/// Tolerance for the density-matrix invariants (Hermiticity, unit trace,
/// positive semidefiniteness).
pub const STATE_TOL: f64 = 1e-10;

/// Eigenvalues below this threshold contribute `0 · log 0 = 0` to entropies.
pub const ENTROPY_EIGENVALUE_CLIP: f64 = 1e-12;

/// Which subsystem a partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// A bipartite quantum state ρ on `H_A ⊗ H_B`.
///
/// Invariants, enforced at construction within [`STATE_TOL`]:
/// Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: Array2<C64>,
}

impl DensityMatrix {
    /// Validate and wrap a matrix as a state on `H_A ⊗ H_B`.
    pub fn new(dim_a: usize, dim_b: usize, matrix: Array2<C64>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidDimension(format!(
                "subsystem dimensions must be positive, got ({dim_a}, {dim_b})"
            )));
        }
        let d = dim_a * dim_b;
        if matrix.dim() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "expected {d}×{d} matrix for dims ({dim_a}, {dim_b}), got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        linalg::check_state(&matrix, STATE_TOL)?;
        Ok(Self { dim_a, dim_b, matrix })
    }

    /// Wrap a matrix known to be a valid state (outputs of operations that
    /// preserve the invariants). Hermitizes to kill floating-point drift.
    pub(crate) fn unchecked(dim_a: usize, dim_b: usize, matrix: Array2<C64>) -> Self {
        debug_assert_eq!(matrix.dim(), (dim_a * dim_b, dim_a * dim_b));
        let matrix = linalg::hermitize(&matrix);
        Self { dim_a, dim_b, matrix }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension `d = d_A · d_B`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    /// Reduced state on A, `Tr_B ρ`.
    pub fn reduced_a(&self) -> Array2<C64> {
        partial_trace(self, Subsystem::A)
    }

    /// Reduced state on B, `Tr_A ρ`.
    pub fn reduced_b(&self) -> Array2<C64> {
        partial_trace(self, Subsystem::B)
    }

    /// The same state with the roles of A and B exchanged.
    ///
    /// Discord is asymmetric; measuring on B is expressed as measuring on A
    /// of the swapped state.
    pub fn swap_subsystems(&self) -> DensityMatrix {
        let (da, db) = (self.dim_a, self.dim_b);
        let d = da * db;
        let mut out = Array2::zeros((d, d));
        for a in 0..da {
            for b in 0..db {
                for a2 in 0..da {
                    for b2 in 0..db {
                        out[(b * da + a, b2 * da + a2)] = self.matrix[(a * db + b, a2 * db + b2)];
                    }
                }
            }
        }
        DensityMatrix { dim_a: db, dim_b: da, matrix: out }
    }

    /// Pure state ρ = |ψ⟩⟨ψ| from a ket on the composite space.
    /// The ket is normalized before the outer product.
    pub fn from_pure(dim_a: usize, dim_b: usize, psi: &Array1<C64>) -> Result<Self> {
        let d = dim_a * dim_b;
        if psi.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "ket length {} does not match dims ({dim_a}, {dim_b})",
                psi.len()
            )));
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter("zero ket".into()));
        }
        let mut matrix = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                matrix[(i, j)] = psi[i] * psi[j].conj() / (norm * norm);
            }
        }
        Ok(Self { dim_a, dim_b, matrix })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serialization cannot fail")
    }

    /// Parse and validate a state from the JSON schema
    /// `{ "dim_a": int, "dim_b": int, "matrix": [[[re, im], …], …] }`.
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_json())?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Wire format: row-major matrix of `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct StateRecord {
    dim_a: usize,
    dim_b: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

pub(crate) fn matrix_to_rows(m: &Array2<C64>) -> Vec<Vec<[f64; 2]>> {
    m.rows().into_iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub(crate) fn rows_to_matrix(rows: &[Vec<[f64; 2]>]) -> Result<Array2<C64>> {
    let n = rows.len();
    let mut m = Array2::zeros((n, n));
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix row {i} has length {}, expected {n}",
                row.len()
            )));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            m[(i, j)] = C64::new(re, im);
        }
    }
    Ok(m)
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StateRecord {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            matrix: matrix_to_rows(&self.matrix),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = StateRecord::deserialize(deserializer)?;
        let matrix = rows_to_matrix(&rec.matrix).map_err(serde::de::Error::custom)?;
        DensityMatrix::new(rec.dim_a, rec.dim_b, matrix).map_err(serde::de::Error::custom)
    }
}

/// Tensor product of two states, ρ_A ⊗ ρ_B.
///
/// Both inputs must be valid density matrices at their own dimensions.
pub fn tensor_product(rho_a: &Array2<C64>, rho_b: &Array2<C64>) -> Result<DensityMatrix> {
    let da = rho_a.nrows();
    let db = rho_b.nrows();
    if da == 0 || db == 0 {
        return Err(Error::InvalidDimension("factors must be nonempty".into()));
    }
    linalg::check_state(rho_a, STATE_TOL)?;
    linalg::check_state(rho_b, STATE_TOL)?;
    Ok(DensityMatrix::unchecked(da, db, linalg::kron(rho_a, rho_b)))
}

/// Partial trace over the complementary subsystem.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Array2<C64> {
    partial_trace_matrix(&rho.matrix, rho.dim_a, rho.dim_b, keep)
}

pub(crate) fn partial_trace_matrix(
    m: &Array2<C64>,
    da: usize,
    db: usize,
    keep: Subsystem,
) -> Array2<C64> {
    match keep {
        Subsystem::A => {
            let mut out = Array2::zeros((da, da));
            for a in 0..da {
                for a2 in 0..da {
                    let mut s = C64::new(0.0, 0.0);
                    for b in 0..db {
                        s += m[(a * db + b, a2 * db + b)];
                    }
                    out[(a, a2)] = s;
                }
            }
            out
        }
        Subsystem::B => {
            let mut out = Array2::zeros((db, db));
            for b in 0..db {
                for b2 in 0..db {
                    let mut s = C64::new(0.0, 0.0);
                    for a in 0..da {
                        s += m[(a * db + b, a * db + b2)];
                    }
                    out[(b, b2)] = s;
                }
            }
            out
        }
    }
}

/// Von Neumann entropy `S(ρ) = −Tr[ρ log₂ ρ]` in bits.
///
/// Eigenvalues below [`ENTROPY_EIGENVALUE_CLIP`] contribute zero; an
/// eigenvalue below `−1e-10` means the input is not a state.
pub fn von_neumann_entropy(rho: &Array2<C64>) -> Result<f64> {
    let eigs = linalg::hermitian_eigenvalues(&linalg::hermitize(rho))?;
    entropy_from_eigenvalues(&eigs)
}

pub(crate) fn entropy_from_eigenvalues(eigs: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &p in eigs {
        if p < -STATE_TOL {
            return Err(Error::NotAState {
                reason: "negative eigenvalue in entropy input".into(),
                min_eigenvalue: p,
            });
        }
        if p > ENTROPY_EIGENVALUE_CLIP {
            s -= p * p.log2();
        }
    }
    Ok(s)
}

/// Quantum mutual information `I(ρ) = S(ρ_A) + S(ρ_B) − S(ρ)` in bits.
///
/// Clamped to zero when negative by floating error (within `1e-9`); a larger
/// negative value is reported as a numerical inconsistency.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let sa = von_neumann_entropy(&rho.reduced_a())?;
    let sb = von_neumann_entropy(&rho.reduced_b())?;
    let s = von_neumann_entropy(&rho.matrix)?;
    let i = sa + sb - s;
    if i < -1e-9 {
        return Err(Error::NumericalInconsistency(format!(
            "mutual information {i:.3e} below -1e-9"
        )));
    }
    Ok(i.max(0.0))
}

/// The maximally mixed state `1/d` on `H_A ⊗ H_B`.
pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> DensityMatrix {
    let d = dim_a * dim_b;
    let m = Array2::from_diag_elem(d, C64::new(1.0 / d as f64, 0.0));
    DensityMatrix { dim_a, dim_b, matrix: m }
}

/// The Bell state `|Φ⁺⟩ = (|00⟩ + |11⟩)/√2` as a two-qubit density matrix.
pub fn bell_phi_plus() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = array![C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)];
    DensityMatrix::from_pure(2, 2, &psi).expect("Bell ket is well-formed")
}

/// Two-qubit Werner state `p |Ψ⁻⟩⟨Ψ⁻| + (1−p) 1/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("Werner weight {p} outside [0, 1]")));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = array![C64::new(0.0, 0.0), C64::new(s, 0.0), C64::new(-s, 0.0), C64::new(0.0, 0.0)];
    let singlet = DensityMatrix::from_pure(2, 2, &psi)?;
    let mut m = singlet.matrix * C64::new(p, 0.0);
    for i in 0..4 {
        m[(i, i)] += C64::new((1.0 - p) / 4.0, 0.0);
    }
    Ok(DensityMatrix { dim_a: 2, dim_b: 2, matrix: m })
}
