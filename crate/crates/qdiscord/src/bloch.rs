//! SU(d) generator bases, structure constants, and Bloch coefficients of
//! bipartite states.
//!
//! The generator basis is the generalized Gell-Mann set: traceless Hermitian
//! matrices normalized to `Tr[γ_i γ_j] = 2δ_ij`, ordered symmetric
//! off-diagonal, antisymmetric off-diagonal, then diagonal. For d = 2 this is
//! (σ_x, σ_y, σ_z).
//!
//! A bipartite state expands as
//!
//! ```text
//! ρ = (1/(d_A d_B)) [ 1 + Σ_i τ_i^A γ_i^A⊗1 + Σ_j τ_j^B 1⊗γ_j^B + Σ_hk β_hk γ_h^A⊗γ_k^B ]
//! ```
//!
//! with the coefficient scaling fixed so that the reduced state reads
//! `ρ_A = (1/d_A)[1 + Σ_i τ_i^A γ_i^A]` verbatim; equivalently
//! `τ_i^A = (d_A/2)·Tr[ρ (γ_i^A⊗1)]` and `β_hk = (d_A d_B/4)·Tr[ρ (γ_h^A⊗γ_k^B)]`.
//! Under this scaling `Tr ρ² = 1/(d_A d_B) + (2/(d_A² d_B))Σ(τ^A)² +
//! (2/(d_A d_B²))Σ(τ^B)² + (4/(d_A² d_B²))Σβ²`.
//!
//! In these coordinates the commutator with the reduced state is algebraic:
//!
//! ```text
//! [ρ, ρ_A⊗1_B] = (2i/(d_A² d_B)) Σ_{m,k} c_mk γ_m^A⊗γ_k^B,
//! c_mk = Σ_{h,l} β_hk τ_l^A f_hlm,
//! ```
//!
//! so `ρ` commutes with `ρ_A⊗1_B` exactly when all the sums
//! `Σ_{h,l} β_hk τ_l^A f_hlm` vanish.

use ndarray::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use crate::linalg::{self, C64};
use crate::states::DensityMatrix;
use crate::{Error, Result};

/// Imaginary residues in structure constants above this are an error.
const F_IMAG_TOL: f64 = 1e-12;

/// Bloch coefficients must be real to this tolerance.
const COEFF_IMAG_TOL: f64 = 1e-10;

/// The `d²−1` generalized Gell-Mann generators of SU(d).
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<Array2<C64>>,
}

impl GeneratorBasis {
    fn build(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(format!(
                "generator basis needs d ≥ 2, got {dim}"
            )));
        }
        let mut generators = Vec::with_capacity(dim * dim - 1);
        let i = C64::new(0.0, 1.0);
        // symmetric off-diagonal: E_jk + E_kj
        for j in 0..dim {
            for k in (j + 1)..dim {
                let mut g = Array2::zeros((dim, dim));
                g[(j, k)] = C64::new(1.0, 0.0);
                g[(k, j)] = C64::new(1.0, 0.0);
                generators.push(g);
            }
        }
        // antisymmetric off-diagonal: −i(E_jk − E_kj)
        for j in 0..dim {
            for k in (j + 1)..dim {
                let mut g = Array2::zeros((dim, dim));
                g[(j, k)] = -i;
                g[(k, j)] = i;
                generators.push(g);
            }
        }
        // diagonal: √(2/(l(l+1))) diag(1, …, 1, −l, 0, …, 0)
        for l in 1..dim {
            let scale = (2.0 / (l as f64 * (l + 1) as f64)).sqrt();
            let mut g = Array2::zeros((dim, dim));
            for m in 0..l {
                g[(m, m)] = C64::new(scale, 0.0);
            }
            g[(l, l)] = C64::new(-scale * l as f64, 0.0);
            generators.push(g);
        }
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d²−1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Array2<C64>] {
        &self.generators
    }
}

/// The rank-3 tensor `f_ijk` with `[γ_i, γ_j] = 2i Σ_k f_ijk γ_k`,
/// stored dense; size `(d²−1)³`, fine for d ≤ 8.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    tensor: Array3<f64>,
}

impl StructureConstants {
    fn build(basis: &GeneratorBasis) -> Result<Self> {
        let n = basis.len();
        let g = basis.generators();
        let mut tensor = Array3::zeros((n, n, n));
        for i in 0..n {
            for j in (i + 1)..n {
                let comm = linalg::commutator(&g[i], &g[j]);
                for (k, gk) in g.iter().enumerate() {
                    // f_ijk = Tr([γ_i, γ_j] γ_k) / (4i)
                    let z = linalg::trace(&comm.dot(gk)) / C64::new(0.0, 4.0);
                    if z.im.abs() > F_IMAG_TOL {
                        return Err(Error::NumericalInconsistency(format!(
                            "structure constant ({i},{j},{k}) has imaginary residue {:.3e}",
                            z.im
                        )));
                    }
                    tensor[(i, j, k)] = z.re;
                    tensor[(j, i, k)] = -z.re;
                }
            }
        }
        Ok(Self { dim: basis.dim(), tensor })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.tensor[(i, j, k)]
    }

    pub fn tensor(&self) -> &Array3<f64> {
        &self.tensor
    }
}

static BASIS_CACHE: LazyLock<RwLock<HashMap<usize, Arc<GeneratorBasis>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));
static CONSTANTS_CACHE: LazyLock<RwLock<HashMap<usize, Arc<StructureConstants>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// The SU(d) generator basis, cached per dimension.
pub fn generator_basis(dim: usize) -> Result<Arc<GeneratorBasis>> {
    if let Some(b) = BASIS_CACHE.read().unwrap().get(&dim) {
        return Ok(Arc::clone(b));
    }
    let built = Arc::new(GeneratorBasis::build(dim)?);
    let mut cache = BASIS_CACHE.write().unwrap();
    Ok(Arc::clone(cache.entry(dim).or_insert(built)))
}

/// Structure constants of SU(d), cached per dimension.
pub fn structure_constants(dim: usize) -> Result<Arc<StructureConstants>> {
    if let Some(f) = CONSTANTS_CACHE.read().unwrap().get(&dim) {
        return Ok(Arc::clone(f));
    }
    let basis = generator_basis(dim)?;
    let built = Arc::new(StructureConstants::build(&basis)?);
    let mut cache = CONSTANTS_CACHE.write().unwrap();
    Ok(Arc::clone(cache.entry(dim).or_insert(built)))
}

/// Real coefficients (τ^A, τ^B, β) of a bipartite state in the product
/// generator basis.
#[derive(Debug, Clone)]
pub struct BlochRepresentation {
    dim_a: usize,
    dim_b: usize,
    tau_a: Array1<f64>,
    tau_b: Array1<f64>,
    beta: Array2<f64>,
}

impl BlochRepresentation {
    pub fn new(
        dim_a: usize,
        dim_b: usize,
        tau_a: Array1<f64>,
        tau_b: Array1<f64>,
        beta: Array2<f64>,
    ) -> Result<Self> {
        let (na, nb) = (dim_a * dim_a - 1, dim_b * dim_b - 1);
        if tau_a.len() != na || tau_b.len() != nb || beta.dim() != (na, nb) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient shapes ({}, {}, {:?}) do not match dims ({dim_a}, {dim_b})",
                tau_a.len(),
                tau_b.len(),
                beta.dim()
            )));
        }
        Ok(Self { dim_a, dim_b, tau_a, tau_b, beta })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn tau_a(&self) -> &Array1<f64> {
        &self.tau_a
    }

    pub fn tau_b(&self) -> &Array1<f64> {
        &self.tau_b
    }

    pub fn beta(&self) -> &Array2<f64> {
        &self.beta
    }
}

/// Wire format: flat real arrays with dims metadata (β row-major).
#[derive(Serialize, Deserialize)]
struct BlochRecord {
    dim_a: usize,
    dim_b: usize,
    tau_a: Vec<f64>,
    tau_b: Vec<f64>,
    beta: Vec<f64>,
}

impl Serialize for BlochRepresentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BlochRecord {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            tau_a: self.tau_a.to_vec(),
            tau_b: self.tau_b.to_vec(),
            beta: self.beta.iter().cloned().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlochRepresentation {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let rec = BlochRecord::deserialize(deserializer)?;
        let (na, nb) = (rec.dim_a * rec.dim_a - 1, rec.dim_b * rec.dim_b - 1);
        let beta = Array2::from_shape_vec((na, nb), rec.beta)
            .map_err(|e| serde::de::Error::custom(format!("beta shape: {e}")))?;
        BlochRepresentation::new(
            rec.dim_a,
            rec.dim_b,
            Array1::from_vec(rec.tau_a),
            Array1::from_vec(rec.tau_b),
            beta,
        )
        .map_err(serde::de::Error::custom)
    }
}

fn real_coefficient(z: C64, what: &str) -> Result<f64> {
    if z.im.abs() > COEFF_IMAG_TOL {
        return Err(Error::NumericalInconsistency(format!(
            "{what} has imaginary part {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// Expand a state in the product generator basis.
pub fn to_bloch(rho: &DensityMatrix) -> Result<BlochRepresentation> {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let basis_a = generator_basis(da)?;
    let basis_b = generator_basis(db)?;
    let (na, nb) = (basis_a.len(), basis_b.len());

    // τ_i^A = (d_A/2)·Tr[ρ_A γ_i],  likewise for B
    let ra = rho.reduced_a();
    let rb = rho.reduced_b();
    let mut tau_a = Array1::zeros(na);
    for (i, g) in basis_a.generators().iter().enumerate() {
        tau_a[i] = real_coefficient(
            linalg::trace(&ra.dot(g)) * (da as f64 / 2.0),
            &format!("τ^A[{i}]"),
        )?;
    }
    let mut tau_b = Array1::zeros(nb);
    for (j, g) in basis_b.generators().iter().enumerate() {
        tau_b[j] = real_coefficient(
            linalg::trace(&rb.dot(g)) * (db as f64 / 2.0),
            &format!("τ^B[{j}]"),
        )?;
    }

    // β_hk = (d_A d_B/4)·Tr[ρ (γ_h⊗γ_k)], contracted without building kron
    let m = rho.matrix();
    let scale = (da * db) as f64 / 4.0;
    let mut beta = Array2::zeros((na, nb));
    for (h, ga) in basis_a.generators().iter().enumerate() {
        for (k, gb) in basis_b.generators().iter().enumerate() {
            let mut z = C64::new(0.0, 0.0);
            for a in 0..da {
                for a2 in 0..da {
                    let x = ga[(a2, a)];
                    if x.norm_sqr() == 0.0 {
                        continue;
                    }
                    for b in 0..db {
                        for b2 in 0..db {
                            z += m[(a * db + b, a2 * db + b2)] * x * gb[(b2, b)];
                        }
                    }
                }
            }
            beta[(h, k)] = real_coefficient(z * scale, &format!("β[{h},{k}]"))?;
        }
    }
    BlochRepresentation::new(da, db, tau_a, tau_b, beta)
}

/// Rebuild the state from its Bloch coefficients.
///
/// Hermiticity and unit trace hold by construction for real coefficients;
/// positivity does not, so the result is validated and a failure reports the
/// offending minimum eigenvalue.
pub fn from_bloch(b: &BlochRepresentation) -> Result<DensityMatrix> {
    let (da, db) = (b.dim_a, b.dim_b);
    let basis_a = generator_basis(da)?;
    let basis_b = generator_basis(db)?;
    let d = da * db;
    let mut m: Array2<C64> = linalg::eye(d);
    let id_a = linalg::eye(da);
    let id_b = linalg::eye(db);
    for (i, g) in basis_a.generators().iter().enumerate() {
        if b.tau_a[i] != 0.0 {
            m = m + linalg::kron(g, &id_b).mapv(|z| z * b.tau_a[i]);
        }
    }
    for (j, g) in basis_b.generators().iter().enumerate() {
        if b.tau_b[j] != 0.0 {
            m = m + linalg::kron(&id_a, g).mapv(|z| z * b.tau_b[j]);
        }
    }
    for (h, ga) in basis_a.generators().iter().enumerate() {
        for (k, gb) in basis_b.generators().iter().enumerate() {
            if b.beta[(h, k)] != 0.0 {
                m = m + linalg::kron(ga, gb).mapv(|z| z * b.beta[(h, k)]);
            }
        }
    }
    m.mapv_inplace(|z| z / (d as f64));
    DensityMatrix::new(da, db, m)
}

/// The coefficient array `c_mk = Σ_{h,l} β_hk τ_l^A f_hlm` of the commutator
/// `[ρ, ρ_A⊗1_B]` in the product generator basis (see the module docs for
/// the `2i/(d_A² d_B)` prefactor).
pub fn commutator_coefficients(b: &BlochRepresentation) -> Result<Array2<f64>> {
    let f = structure_constants(b.dim_a)?;
    let na = b.dim_a * b.dim_a - 1;
    let nb = b.dim_b * b.dim_b - 1;
    let mut c = Array2::zeros((na, nb));
    for m in 0..na {
        for k in 0..nb {
            let mut s = 0.0;
            for h in 0..na {
                let beta_hk = b.beta[(h, k)];
                if beta_hk == 0.0 {
                    continue;
                }
                for l in 0..na {
                    s += beta_hk * b.tau_a[l] * f.get(h, l, m);
                }
            }
            c[(m, k)] = s;
        }
    }
    Ok(c)
}

/// Residuals of the C₀ membership constraints `Σ_{h,l} β_hk τ_l^A f_hlm = 0`,
/// indexed `(k, m)`. All entries within tolerance ⇔ `[ρ, ρ_A⊗1_B] = 0`.
pub fn c0_residuals(b: &BlochRepresentation) -> Result<Array2<f64>> {
    Ok(commutator_coefficients(b)?.t().to_owned())
}

/// Reconstruct the matrix commutator `[ρ, ρ_A⊗1_B]` from the algebraic
/// coefficients: `(2i/(d_A² d_B)) Σ_{m,k} c_mk γ_m^A⊗γ_k^B`.
pub fn commutator_from_bloch(b: &BlochRepresentation) -> Result<Array2<C64>> {
    let basis_a = generator_basis(b.dim_a)?;
    let basis_b = generator_basis(b.dim_b)?;
    let c = commutator_coefficients(b)?;
    let d = b.dim_a * b.dim_b;
    let mut out: Array2<C64> = Array2::zeros((d, d));
    for (m, ga) in basis_a.generators().iter().enumerate() {
        for (k, gb) in basis_b.generators().iter().enumerate() {
            if c[(m, k)] != 0.0 {
                out = out + linalg::kron(ga, gb).mapv(|z| z * c[(m, k)]);
            }
        }
    }
    let prefactor = C64::new(0.0, 2.0 / (b.dim_a as f64 * b.dim_a as f64 * b.dim_b as f64));
    Ok(out.mapv(|z| z * prefactor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, eye, kron, max_abs_diff, trace};
    use crate::states::{bell_phi_plus, maximally_mixed, tensor_product, werner, DensityMatrix};

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn d2_basis_is_pauli() {
        let b = generator_basis(2).unwrap();
        assert_eq!(b.len(), 3);
        let sx = array![[r(0.0), r(1.0)], [r(1.0), r(0.0)]];
        let sy = array![
            [r(0.0), C64::new(0.0, -1.0)],
            [C64::new(0.0, 1.0), r(0.0)]
        ];
        let sz = array![[r(1.0), r(0.0)], [r(0.0), r(-1.0)]];
        assert!(max_abs_diff(&b.generators()[0], &sx) < 1e-15);
        assert!(max_abs_diff(&b.generators()[1], &sy) < 1e-15);
        assert!(max_abs_diff(&b.generators()[2], &sz) < 1e-15);
    }

    #[test]
    fn bases_are_traceless_hermitian_orthonormal() {
        for d in [2usize, 3, 4] {
            let b = generator_basis(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            for (i, gi) in b.generators().iter().enumerate() {
                assert!(trace(gi).norm() < 1e-12, "trace of γ_{i} at d={d}");
                assert!(linalg::hermiticity_defect(gi) < 1e-12);
                for (j, gj) in b.generators().iter().enumerate() {
                    let hs = trace(&gi.dot(gj));
                    let expect = if i == j { 2.0 } else { 0.0 };
                    assert!(
                        (hs.re - expect).abs() < 1e-12 && hs.im.abs() < 1e-12,
                        "Tr[γ_{i} γ_{j}] at d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_dimension_below_two() {
        assert!(matches!(generator_basis(1), Err(Error::InvalidDimension(_))));
    }

    #[test]
    fn su2_structure_constants_are_levi_civita() {
        let f = structure_constants(2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let expect = match (i, j, k) {
                        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                        (1, 0, 2) | (2, 1, 0) | (0, 2, 1) => -1.0,
                        _ => 0.0,
                    };
                    assert!((f.get(i, j, k) - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn su3_structure_constants_match_trace_oracle() {
        // ordering: S01 S02 S12 A01 A02 A12 D1 D2
        let f = structure_constants(3).unwrap();
        let b = generator_basis(3).unwrap();
        // [S01, A01] = 2i D1 and [S02, A02] = 2i(D1/2 + √3/2 D2)
        assert!((f.get(0, 3, 6) - 1.0).abs() < 1e-12);
        assert!((f.get(1, 4, 6) - 0.5).abs() < 1e-12);
        assert!((f.get(1, 4, 7) - 3f64.sqrt() / 2.0).abs() < 1e-12);
        // every entry equals the defining trace formula
        let g = b.generators();
        for i in 0..8 {
            for j in 0..8 {
                let comm = commutator(&g[i], &g[j]);
                for (k, gk) in g.iter().enumerate() {
                    let oracle = (trace(&comm.dot(gk)) / C64::new(0.0, 4.0)).re;
                    assert!((f.get(i, j, k) - oracle).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn structure_constants_are_totally_antisymmetric() {
        for d in [2usize, 3] {
            let f = structure_constants(d).unwrap();
            let n = d * d - 1;
            for i in 0..n {
                for k in 0..n {
                    assert_eq!(f.get(i, i, k), 0.0);
                }
                for j in 0..n {
                    for k in 0..n {
                        assert!((f.get(i, j, k) + f.get(j, i, k)).abs() < 1e-12);
                        assert!((f.get(i, j, k) + f.get(i, k, j)).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn commutators_reproduce_from_structure_constants() {
        for d in [2usize, 3] {
            let b = generator_basis(d).unwrap();
            let f = structure_constants(d).unwrap();
            let n = b.len();
            let g = b.generators();
            for i in 0..n {
                for j in 0..n {
                    let direct = commutator(&g[i], &g[j]);
                    let mut rebuilt: Array2<C64> = Array2::zeros((d, d));
                    for (k, gk) in g.iter().enumerate() {
                        rebuilt = rebuilt + gk.mapv(|z| z * C64::new(0.0, 2.0 * f.get(i, j, k)));
                    }
                    assert!(max_abs_diff(&direct, &rebuilt) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn maximally_mixed_has_zero_coefficients() {
        let b = to_bloch(&maximally_mixed(2, 3)).unwrap();
        assert!(b.tau_a().iter().all(|&x| x.abs() < 1e-14));
        assert!(b.tau_b().iter().all(|&x| x.abs() < 1e-14));
        assert!(b.beta().iter().all(|&x| x.abs() < 1e-14));
    }

    #[test]
    fn product_state_beta_factorizes() {
        let a = array![[r(0.7), C64::new(0.1, 0.2)], [C64::new(0.1, -0.2), r(0.3)]];
        let bmat = array![[r(0.6), C64::new(0.0, 0.1)], [C64::new(0.0, -0.1), r(0.4)]];
        let rho = tensor_product(&a, &bmat).unwrap();
        let b = to_bloch(&rho).unwrap();
        for h in 0..3 {
            for k in 0..3 {
                let expect = b.tau_a()[h] * b.tau_b()[k];
                assert!((b.beta()[(h, k)] - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn bell_state_has_diagonal_beta() {
        let b = to_bloch(&bell_phi_plus()).unwrap();
        assert!(b.tau_a().iter().all(|&x| x.abs() < 1e-12));
        assert!(b.tau_b().iter().all(|&x| x.abs() < 1e-12));
        let expect = array![[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
        for h in 0..3 {
            for k in 0..3 {
                assert!((b.beta()[(h, k)] - expect[(h, k)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn from_bloch_of_zero_coefficients_is_maximally_mixed() {
        let b = BlochRepresentation::new(2, 3, Array1::zeros(3), Array1::zeros(8), Array2::zeros((3, 8)))
            .unwrap();
        let rho = from_bloch(&b).unwrap();
        assert!(max_abs_diff(rho.matrix(), maximally_mixed(2, 3).matrix()) < 1e-14);
    }

    #[test]
    fn bloch_round_trip_is_identity() {
        for rho in [bell_phi_plus(), werner(0.3).unwrap(), werner(0.9).unwrap()] {
            let back = from_bloch(&to_bloch(&rho).unwrap()).unwrap();
            assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
        }
    }

    #[test]
    fn inflated_bell_coefficients_are_not_a_state() {
        let b = to_bloch(&bell_phi_plus()).unwrap();
        let scaled = BlochRepresentation::new(
            2,
            2,
            b.tau_a().clone(),
            b.tau_b().clone(),
            b.beta().mapv(|x| 10.0 * x),
        )
        .unwrap();
        match from_bloch(&scaled) {
            Err(Error::NotAState { min_eigenvalue, .. }) => assert!(min_eigenvalue < -0.1),
            other => panic!("expected NotAState, got {other:?}"),
        }
    }

    #[test]
    fn commutator_coefficients_vanish_when_tau_a_is_zero() {
        // Bell state: ρ_A ∝ 1, so the τ^A vector vanishes and so must c
        let c = commutator_coefficients(&to_bloch(&bell_phi_plus()).unwrap()).unwrap();
        assert!(c.iter().all(|&x| x.abs() < 1e-12));
        // product with maximally mixed A behaves the same
        let sigma = array![[r(0.6), C64::new(0.1, 0.05)], [C64::new(0.1, -0.05), r(0.4)]];
        let rho = tensor_product(&eye(2).mapv(|z| z * 0.5), &sigma).unwrap();
        let c = commutator_coefficients(&to_bloch(&rho).unwrap()).unwrap();
        assert!(c.iter().all(|&x| x.abs() < 1e-12));
    }

    #[test]
    fn algebraic_commutator_matches_matrix_commutator() {
        // an asymmetric mixed state that does not commute with ρ_A⊗1
        let a = array![[r(0.8), r(0.0)], [r(0.0), r(0.2)]];
        let bmat = array![[r(0.6), r(0.0)], [r(0.0), r(0.4)]];
        let product = tensor_product(&a, &bmat).unwrap();
        let mix = werner(0.5).unwrap();
        let m = mix.matrix() * C64::new(0.7, 0.0) + product.matrix() * C64::new(0.3, 0.0);
        let rho = DensityMatrix::new(2, 2, m).unwrap();

        let direct = {
            let ra = rho.reduced_a();
            let ra_full = kron(&ra, &eye(2));
            commutator(rho.matrix(), &ra_full)
        };
        assert!(linalg::frobenius_norm(&direct) > 1e-3, "test state must be outside C₀");
        let rebuilt = commutator_from_bloch(&to_bloch(&rho).unwrap()).unwrap();
        assert!(max_abs_diff(&direct, &rebuilt) < 1e-10);
    }

    #[test]
    fn bloch_serialization_round_trips() {
        let b = to_bloch(&werner(0.4).unwrap()).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        let back: BlochRepresentation = serde_json::from_str(&json).unwrap();
        assert_eq!(b.tau_a(), back.tau_a());
        assert_eq!(b.tau_b(), back.tau_b());
        assert_eq!(b.beta(), back.beta());
        // mismatched lengths are rejected
        let bad = r#"{"dim_a":2,"dim_b":2,"tau_a":[0.0],"tau_b":[0,0,0],"beta":[0,0,0,0,0,0,0,0,0]}"#;
        assert!(serde_json::from_str::<BlochRepresentation>(bad).is_err());
    }

    #[test]
    fn c0_residuals_transpose_commutator_coefficients() {
        let b = to_bloch(&werner(0.5).unwrap()).unwrap();
        let c = commutator_coefficients(&b).unwrap();
        let res = c0_residuals(&b).unwrap();
        assert_eq!(res.dim(), (3, 3));
        for m in 0..3 {
            for k in 0..3 {
                assert_eq!(c[(m, k)], res[(k, m)]);
            }
        }
    }
}
