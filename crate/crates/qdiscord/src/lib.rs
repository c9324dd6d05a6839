//! Quantum discord and the geometry of classically-correlated states.
//!
//! This crate computes quantum discord for small bipartite systems and probes
//! the structure of the states that have none. The pieces:
//!
//! - [`states`] — dense density matrices on `H_A ⊗ H_B`, partial traces,
//!   von Neumann entropy, mutual information.
//! - [`bloch`] — generalized Gell-Mann generator bases for SU(d), their
//!   structure constants, and the Bloch-coefficient expansion of bipartite
//!   states, including the algebraic form of the commutator `[ρ, ρ_A ⊗ 1_B]`.
//! - [`discord`] — the discord `D = I − J` via multi-start optimization over
//!   projective measurements on `A`, membership tests for the zero-discord
//!   set Ω₀ and for the commutant set C₀ (`[ρ, ρ_A ⊗ 1_B] = 0`), and
//!   block-diagonal state constructors.
//! - [`sampling`] — seeded, reproducible ensembles: Haar pure states,
//!   Hilbert-Schmidt mixed states, Haar unitaries, random zero-discord
//!   states, perturbations, and depolarization segments.
//! - [`channels`] — CPTP channels as Kraus sets with cached superoperators,
//!   their spectral decomposition into biorthogonal eigenoperator pairs,
//!   discrete Markovian iteration, and counting of C₀ crossings against the
//!   spectral bound `d̃(d̃−1)/2 − 1`.
//! - [`experiments`] — deterministic Monte Carlo runners (measure-zero,
//!   perturbation, convexity, trajectory studies) with JSON reports.
//!
//! Everything is plain dense linear algebra over `Complex64`; dimensions of
//! interest are small (total dimension ≲ 16). All entropies are base-2, so
//! discord comes out in bits and the Bell state has discord exactly 1.
//!
//! Run `cargo run --release --example discord_of_bell` for a first taste; the
//! `examples/` directory has one runnable program per capability.

pub mod bloch;
pub mod channels;
pub mod discord;
mod error;
pub mod experiments;
pub(crate) mod linalg;
pub mod sampling;
pub(crate) mod simplex;
pub mod states;

pub use error::Error;

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Library version, echoed into experiment reports and `--version` output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
