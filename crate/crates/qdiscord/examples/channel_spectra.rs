//! Spectral anatomy of the built-in channels: eigenvalues, biorthogonal
//! eigenoperators, distinct-eigenvalue counts, crossing bounds, and steady
//! states.
//!
//! ```bash
//! cargo run --release --example channel_spectra
//! ```

use num_complex::Complex64 as C64;

use qdiscord::channels::{
    make_channel, spectral_decompose, steady_state, ChannelDescriptor, ChannelKind,
};
use qdiscord::discord::in_c0;
use qdiscord::Error;

fn main() -> qdiscord::Result<()> {
    for kind in [
        ChannelKind::GlobalDepolarizing,
        ChannelKind::LocalDepolarizing,
        ChannelKind::LocalDephasing,
        ChannelKind::AmplitudeDamping,
    ] {
        let desc = ChannelDescriptor::new(kind, 0.3, (2, 2));
        let ch = make_channel(&desc)?;
        let sd = spectral_decompose(&ch)?;

        // cluster the 16 eigenvalues for display
        let mut reps: Vec<(C64, usize)> = Vec::new();
        for &z in sd.eigenvalues() {
            match reps.iter_mut().find(|(r, _)| (*r - z).norm() < 1e-8) {
                Some((_, count)) => *count += 1,
                None => reps.push((z, 1)),
            }
        }
        reps.sort_by(|a, b| b.0.norm().total_cmp(&a.0.norm()));

        println!("{} (strength 0.3, dims 2x2):", desc.kind.as_str());
        for (z, count) in &reps {
            println!("  λ = {:.4} + {:.4}i   ×{count}", z.re, z.im);
        }
        println!(
            "  distinct eigenvalues d̃ = {}, crossing bound d̃(d̃−1)/2 − 1 = {}",
            sd.n_distinct(),
            sd.crossing_bound()
        );
        println!("  distinct eigenvalue products = {}", sd.distinct_product_count());
        match steady_state(&sd) {
            Ok(ss) => println!(
                "  steady state: unique, in C₀ = {}",
                in_c0(&ss, 1e-10)
            ),
            Err(Error::NonUniqueSteadyState { multiplicity }) => {
                println!("  steady state: degenerate (eigenvalue-1 multiplicity {multiplicity})")
            }
            Err(e) => println!("  steady state: {e}"),
        }
        println!();
    }
    Ok(())
}
