//! Small dense complex-matrix helpers shared by the other modules.
//!
//! Everything here is plain `ndarray` over `Complex64` with LAPACK behind the
//! eigensolvers. Matrices are tiny (≤ ~100×100 for superoperators), so none
//! of this tries to be clever about allocation.

use ndarray::prelude::*;
use ndarray_linalg::{Eig, Eigh, Inverse, UPLO};
use num_complex::Complex64;

use crate::{Error, Result};

pub(crate) type C64 = Complex64;

pub(crate) fn eye(d: usize) -> Array2<C64> {
    Array2::eye(d)
}

/// Kronecker product, row-major (A-major) index convention:
/// `(A ⊗ B)[(i1,i2),(j1,j2)] = A[i1,j1] B[i2,j2]` with composite index
/// `i1 * nrows(B) + i2`.
pub(crate) fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i1 in 0..ar {
        for j1 in 0..ac {
            let aij = a[(i1, j1)];
            for i2 in 0..br {
                for j2 in 0..bc {
                    out[(i1 * br + i2, j1 * bc + j2)] = aij * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Conjugate transpose.
pub(crate) fn dagger(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

pub(crate) fn commutator(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    a.dot(b) - b.dot(a)
}

pub(crate) fn trace(a: &Array2<C64>) -> C64 {
    a.diag().sum()
}

pub(crate) fn frobenius_norm(a: &Array2<C64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest elementwise deviation from Hermiticity, `max |A − A†|`.
pub(crate) fn hermiticity_defect(a: &Array2<C64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Symmetrize to an exactly Hermitian matrix, `(A + A†)/2`.
pub(crate) fn hermitize(a: &Array2<C64>) -> Array2<C64> {
    (a + &dagger(a)).mapv(|z| z * 0.5)
}

/// Eigenvalues of a Hermitian matrix, ascending. The 2×2 case is closed-form
/// because it sits on the hot path of the measurement optimizer.
pub(crate) fn hermitian_eigenvalues(a: &Array2<C64>) -> Result<Vec<f64>> {
    match a.nrows() {
        1 => Ok(vec![a[(0, 0)].re]),
        2 => {
            let m = 0.5 * (a[(0, 0)].re + a[(1, 1)].re);
            let half_gap = 0.5 * (a[(0, 0)].re - a[(1, 1)].re);
            let r = (half_gap * half_gap + a[(0, 1)].norm_sqr()).sqrt();
            Ok(vec![m - r, m + r])
        }
        _ => {
            let (vals, _) = a.eigh(UPLO::Lower)?;
            Ok(vals.to_vec())
        }
    }
}

/// Full Hermitian eigendecomposition (ascending eigenvalues, eigenvectors as
/// unitary columns).
///
/// ndarray-linalg 0.18 hands back the conjugate of the LAPACK eigenvector
/// matrix for complex Hermitian input; undo that so `A v_k = λ_k v_k` holds
/// for the columns.
pub(crate) fn hermitian_eigen(a: &Array2<C64>) -> Result<(Vec<f64>, Array2<C64>)> {
    let (vals, vecs) = a.eigh(UPLO::Lower)?;
    Ok((vals.to_vec(), vecs.mapv(|z| z.conj())))
}

/// General complex eigendecomposition: eigenvalues and right eigenvectors.
pub(crate) fn general_eigen(a: &Array2<C64>) -> Result<(Vec<C64>, Array2<C64>)> {
    let (vals, vecs) = a.eig()?;
    Ok((vals.to_vec(), vecs))
}

pub(crate) fn inverse(a: &Array2<C64>) -> Result<Array2<C64>> {
    Ok(a.inv()?)
}

/// Unitary `exp(iH)` for Hermitian `H`, via eigendecomposition.
pub(crate) fn expi_hermitian(h: &Array2<C64>) -> Result<Array2<C64>> {
    let (vals, vecs) = hermitian_eigen(h)?;
    let d = h.nrows();
    let mut out = Array2::zeros((d, d));
    for (k, &lam) in vals.iter().enumerate() {
        let phase = C64::from_polar(1.0, lam);
        let col = vecs.column(k);
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] += phase * col[i] * col[j].conj();
            }
        }
    }
    Ok(out)
}

/// Column-stacking vectorization: `vec(ρ)[j·d + i] = ρ[i,j]`.
pub(crate) fn vec_cs(a: &Array2<C64>) -> Array1<C64> {
    let (r, c) = a.dim();
    Array1::from_shape_fn(r * c, |k| a[(k % r, k / r)])
}

/// Inverse of [`vec_cs`] for square matrices.
pub(crate) fn unvec_cs(v: &ArrayView1<C64>, d: usize) -> Array2<C64> {
    Array2::from_shape_fn((d, d), |(i, j)| v[j * d + i])
}

/// Hilbert-Schmidt inner product `(X|Y) = Tr[X† Y]`.
pub(crate) fn hs_inner(x: &Array2<C64>, y: &Array2<C64>) -> C64 {
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Validate Hermiticity, unit trace and positivity at the given tolerance.
/// Returns the ascending eigenvalues so callers can reuse them.
pub(crate) fn check_state(matrix: &Array2<C64>, tol: f64) -> Result<Vec<f64>> {
    if matrix.nrows() != matrix.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "state matrix must be square, got {}×{}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let defect = hermiticity_defect(matrix);
    if defect > tol {
        return Err(Error::NotAState {
            reason: format!("Hermiticity defect {defect:.3e} exceeds {tol:.1e}"),
            min_eigenvalue: f64::NAN,
        });
    }
    let tr = trace(matrix);
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return Err(Error::NotAState {
            reason: format!("trace {tr} deviates from 1 beyond {tol:.1e}"),
            min_eigenvalue: f64::NAN,
        });
    }
    let herm = hermitize(matrix);
    let eigs = hermitian_eigenvalues(&herm)?;
    let min = eigs.first().copied().unwrap_or(0.0);
    if min < -tol {
        return Err(Error::NotAState {
            reason: format!("negative eigenvalue beyond {tol:.1e}"),
            min_eigenvalue: min,
        });
    }
    Ok(eigs)
}
