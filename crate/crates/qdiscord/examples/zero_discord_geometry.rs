//! Build a block-diagonal zero-discord state, verify its membership in Ω₀
//! and C₀, then watch an arbitrarily small perturbation eject it — while
//! depolarization toward 1/d keeps it inside.
//!
//! ```bash
//! cargo run --release --example zero_discord_geometry
//! ```

use qdiscord::discord::{commutator_criterion, discord, omega0_residual, OptimizerConfig};
use qdiscord::sampling::{depolarize_toward_identity, perturb, random_zero_discord, SeededSampler};

fn main() -> qdiscord::Result<()> {
    let mut sampler = SeededSampler::new(2024);
    let cfg = OptimizerConfig::default();

    let rho = random_zero_discord(2, 2, &mut sampler)?;
    println!("random zero-discord state (Haar basis, flat weights, HS conditionals):");
    println!("  ‖[ρ, ρ_A⊗1]‖_F   = {:.3e}", commutator_criterion(&rho));
    let probe = omega0_residual(&rho, &cfg)?;
    println!("  Ω₀ pinch residual = {:.3e}", probe.residual);
    println!("  discord           = {:.3e} bits", discord(&rho, &cfg)?.discord);

    println!("\nperturbation (1−η)ρ + ησ with a random full-rank σ:");
    println!("{:>10} {:>16}", "η", "‖[ρ', ρ'_A⊗1]‖");
    for eta in [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
        let kicked = perturb(&rho, eta, &mut sampler)?;
        println!("{eta:>10.0e} {:>16.3e}", commutator_criterion(&kicked));
    }
    println!("every perturbation escapes: the zero-discord set is nowhere dense");

    println!("\ndepolarization (1−λ)ρ + λ·1/4 stays block diagonal:");
    for lam in [0.25, 0.5, 0.75, 0.99] {
        let mixed = depolarize_toward_identity(&rho, lam)?;
        println!(
            "  λ = {lam:.2}: commutator = {:.3e}, Ω₀ residual = {:.3e}",
            commutator_criterion(&mixed),
            omega0_residual(&mixed, &cfg)?.residual
        );
    }
    Ok(())
}
