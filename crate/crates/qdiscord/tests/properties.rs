//! Cross-module invariant suites: everything here runs on seeded random
//! ensembles and checks structural identities rather than single values.

use ndarray::prelude::*;
use num_complex::Complex64 as C64;

use qdiscord::bloch::{c0_residuals, commutator_from_bloch, from_bloch, to_bloch};
use qdiscord::channels::{
    make_channel, replacement_channel, run_trajectory, spectral_decompose, ChannelDescriptor,
    ChannelKind, DEFAULT_CROSSING_THRESHOLD,
};
use qdiscord::discord::{
    classical_correlations, commutator_criterion, discord, omega0_residual, OptimizerConfig,
};
use qdiscord::sampling::{
    depolarize_toward_identity, random_mixed_state, random_pure_state, random_unitary,
    random_zero_discord, SeededSampler,
};
use qdiscord::states::{
    maximally_mixed, mutual_information, partial_trace, tensor_product, von_neumann_entropy,
    DensityMatrix, Subsystem,
};

fn frobenius(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

fn direct_commutator(rho: &DensityMatrix) -> Array2<C64> {
    let ra = rho.reduced_a();
    let db = rho.dim_b();
    let mut full = Array2::<C64>::zeros((rho.dim(), rho.dim()));
    for a in 0..rho.dim_a() {
        for a2 in 0..rho.dim_a() {
            for b in 0..db {
                full[(a * db + b, a2 * db + b)] = ra[(a, a2)];
            }
        }
    }
    rho.matrix().dot(&full) - full.dot(rho.matrix())
}

#[test]
fn partial_traces_of_random_states_are_states() {
    for (dims, seed) in [((2, 2), 100u64), ((2, 3), 101), ((3, 3), 102)] {
        let mut s = SeededSampler::new(seed);
        for _ in 0..200 {
            let rho = random_mixed_state(dims, dims.0 * dims.1, &mut s).unwrap();
            for keep in [Subsystem::A, Subsystem::B] {
                let reduced = partial_trace(&rho, keep);
                let defect = max_abs(&(&reduced - &dagger(&reduced)));
                assert!(defect < 1e-10);
                let tr: C64 = reduced.diag().sum();
                assert!((tr.re - 1.0).abs() < 1e-10 && tr.im.abs() < 1e-10);
                // PSD via entropy computability (errors on eigenvalues < −1e-10)
                von_neumann_entropy(&reduced).unwrap();
            }
        }
    }
}

#[test]
fn tensor_then_trace_round_trips_both_factors() {
    let mut s = SeededSampler::new(110);
    for _ in 0..50 {
        let a = random_mixed_state((1, 2), 2, &mut s).unwrap().matrix().clone();
        let b = random_mixed_state((1, 3), 3, &mut s).unwrap().matrix().clone();
        let rho = tensor_product(&a, &b).unwrap();
        assert!(max_abs(&(&rho.reduced_a() - &a)) < 1e-12);
        assert!(max_abs(&(&rho.reduced_b() - &b)) < 1e-12);
    }
}

#[test]
fn mutual_information_respects_its_bounds() {
    for (dims, seed) in [((2, 2), 120u64), ((2, 3), 121), ((3, 3), 122)] {
        let cap = 2.0 * (dims.0 as f64).log2().min((dims.1 as f64).log2());
        let mut s = SeededSampler::new(seed);
        for _ in 0..100 {
            let rho = random_mixed_state(dims, dims.0 * dims.1, &mut s).unwrap();
            let i = mutual_information(&rho).unwrap();
            assert!(i >= 0.0);
            assert!(i <= cap + 1e-9, "I = {i} exceeds cap {cap}");
        }
    }
}

#[test]
fn entropy_is_unitarily_invariant() {
    let mut s = SeededSampler::new(130);
    for _ in 0..30 {
        let rho = random_mixed_state((2, 2), 4, &mut s).unwrap();
        let u = random_unitary(4, &mut s).unwrap();
        let rotated = u.dot(rho.matrix()).dot(&dagger(&u));
        let s0 = von_neumann_entropy(rho.matrix()).unwrap();
        let s1 = von_neumann_entropy(&rotated).unwrap();
        assert!((s0 - s1).abs() < 1e-10);
    }
}

#[test]
fn bloch_round_trip_is_identity_on_random_states() {
    for (dims, seed) in [((2, 2), 140u64), ((2, 3), 141), ((3, 2), 142), ((3, 3), 143)] {
        let mut s = SeededSampler::new(seed);
        for _ in 0..25 {
            let rho = random_mixed_state(dims, dims.0 * dims.1, &mut s).unwrap();
            let back = from_bloch(&to_bloch(&rho).unwrap()).unwrap();
            assert!(max_abs(&(back.matrix() - rho.matrix())) < 1e-12);
        }
    }
}

#[test]
fn algebraic_and_matrix_commutators_agree_on_random_states() {
    for (dims, seed) in [((2, 2), 150u64), ((2, 3), 151), ((3, 2), 152), ((3, 3), 153)] {
        let mut s = SeededSampler::new(seed);
        for _ in 0..25 {
            let rho = random_mixed_state(dims, dims.0 * dims.1, &mut s).unwrap();
            let rebuilt = commutator_from_bloch(&to_bloch(&rho).unwrap()).unwrap();
            let direct = direct_commutator(&rho);
            assert!(max_abs(&(&rebuilt - &direct)) < 1e-10, "dims {dims:?}");
        }
    }
}

#[test]
fn c0_residuals_vanish_exactly_when_the_commutator_does() {
    let mut s = SeededSampler::new(160);
    // members: constructed zero-discord states
    for _ in 0..50 {
        let rho = random_zero_discord(2, 2, &mut s).unwrap();
        let res = c0_residuals(&to_bloch(&rho).unwrap()).unwrap();
        let biggest = res.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
        assert!(biggest <= 1e-10);
        assert!(commutator_criterion(&rho) <= 1e-10);
    }
    // non-members: generic random states
    for _ in 0..50 {
        let rho = random_mixed_state((2, 2), 4, &mut s).unwrap();
        let res = c0_residuals(&to_bloch(&rho).unwrap()).unwrap();
        let biggest = res.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
        assert!(biggest > 1e-6);
        assert!(commutator_criterion(&rho) > 1e-6);
    }
}

#[test]
fn omega0_members_satisfy_the_commutator_criterion() {
    // Ω₀ ⊆ C₀ over 500 constructed states
    let mut s = SeededSampler::new(170);
    let cfg = OptimizerConfig { restarts: 6, ..Default::default() };
    for i in 0..500 {
        let rho = random_zero_discord(2, 2, &mut s).unwrap();
        if i % 10 == 0 {
            let res = omega0_residual(&rho, &cfg).unwrap();
            assert!(res.residual <= 1e-10);
        }
        assert!(commutator_criterion(&rho) <= 1e-8);
    }
}

#[test]
fn classical_correlations_bounded_by_marginal_entropies() {
    let mut s = SeededSampler::new(180);
    let cfg = OptimizerConfig { restarts: 10, ..Default::default() };
    for _ in 0..20 {
        let rho = random_mixed_state((2, 2), 4, &mut s).unwrap();
        let (j, _) = classical_correlations(&rho, &cfg).unwrap();
        let sa = von_neumann_entropy(&rho.reduced_a()).unwrap();
        let sb = von_neumann_entropy(&rho.reduced_b()).unwrap();
        assert!(j <= sa.min(sb) + 1e-9, "J = {j}, S_A = {sa}, S_B = {sb}");
        let d = discord(&rho, &cfg).unwrap();
        assert!(d.discord >= 0.0);
    }
}

#[test]
fn discord_is_asymmetric_under_swap() {
    // classical-quantum states have zero discord measured on A but generally
    // positive discord measured on B
    let mut s = SeededSampler::new(190);
    let cfg = OptimizerConfig { restarts: 10, ..Default::default() };
    let rho = random_zero_discord(2, 2, &mut s).unwrap();
    let here = discord(&rho, &cfg).unwrap().discord;
    let there = discord(&rho.swap_subsystems(), &cfg).unwrap().discord;
    assert!(here <= 1e-6);
    assert!(there > 1e-3, "swapped discord {there} unexpectedly small");
}

#[test]
fn segments_toward_the_identity_never_enter_c0() {
    let mut s = SeededSampler::new(200);
    let mut checked = 0;
    while checked < 100 {
        let rho = random_mixed_state((2, 2), 4, &mut s).unwrap();
        if commutator_criterion(&rho) <= 1e-3 {
            continue;
        }
        checked += 1;
        for k in 0..20 {
            let lam = 0.99 * k as f64 / 19.0;
            let state = depolarize_toward_identity(&rho, lam).unwrap();
            assert!(commutator_criterion(&state) > 0.0, "λ = {lam}");
        }
    }
}

#[test]
fn incompatible_basis_mixtures_usually_leave_c0() {
    let mut s = SeededSampler::new(210);
    let mut left = 0;
    let trials = 500;
    for _ in 0..trials {
        let a = random_zero_discord(2, 2, &mut s).unwrap();
        let b = random_zero_discord(2, 2, &mut s).unwrap();
        let mix = DensityMatrix::new(2, 2, (a.matrix() + b.matrix()).mapv(|z| z * 0.5)).unwrap();
        if commutator_criterion(&mix) > 1e-8 {
            left += 1;
        }
    }
    assert!(
        left as f64 / trials as f64 >= 0.99,
        "only {left}/{trials} mixtures left C₀"
    );
}

#[test]
fn mixing_with_the_identity_preserves_zero_discord() {
    let mut s = SeededSampler::new(215);
    let cfg = OptimizerConfig { restarts: 6, ..Default::default() };
    let rho = random_zero_discord(2, 2, &mut s).unwrap();
    let mixed = DensityMatrix::new(
        2,
        2,
        (rho.matrix() + maximally_mixed(2, 2).matrix()).mapv(|z| z * 0.5),
    )
    .unwrap();
    assert!(omega0_residual(&mixed, &cfg).unwrap().residual <= 1e-10);
}

#[test]
fn ensemble_means_approach_the_maximally_mixed_state() {
    // E[ρ] = 1/d; with 10⁴ draws the elementwise error stays within ~3σ
    let d = 4;
    let n = 10_000;
    for (seed, pure) in [(220u64, true), (221, false)] {
        let mut s = SeededSampler::new(seed);
        let mut mean = Array2::<C64>::zeros((d, d));
        for _ in 0..n {
            let rho = if pure {
                random_pure_state((2, 2), &mut s).unwrap()
            } else {
                random_mixed_state((2, 2), d, &mut s).unwrap()
            };
            mean = mean + rho.matrix();
        }
        mean.mapv_inplace(|z| z / n as f64);
        let deviation = max_abs(&(&mean - maximally_mixed(2, 2).matrix()));
        assert!(deviation < 0.006, "pure={pure}: deviation {deviation}");
    }
}

#[test]
fn golden_pure_state_draw_is_frozen() {
    let golden = DensityMatrix::load(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/pure_seed42_d4.json"
    ))
    .unwrap();
    let mut s = SeededSampler::new(42);
    let drawn = random_pure_state((2, 2), &mut s).unwrap();
    for (a, b) in golden.matrix().iter().zip(drawn.matrix().iter()) {
        assert_eq!(a, b, "draw is no longer bit-identical to the frozen file");
    }
}

#[test]
fn built_in_channels_validate_across_random_parameters() {
    let mut s = SeededSampler::new(230);
    let mut rng_values = Vec::new();
    for _ in 0..20 {
        // reuse the simplex sampler as a cheap uniform source
        let p = qdiscord::sampling::random_simplex(2, &mut s)[0];
        rng_values.push(p);
    }
    for kind in [
        ChannelKind::GlobalDepolarizing,
        ChannelKind::LocalDepolarizing,
        ChannelKind::LocalDephasing,
        ChannelKind::AmplitudeDamping,
    ] {
        for &p in &rng_values {
            let ch = make_channel(&ChannelDescriptor::new(kind, p, (2, 2))).unwrap();
            let sd = spectral_decompose(&ch).unwrap();
            let max_mod = sd.eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!((max_mod - 1.0).abs() < 1e-10, "{kind:?} at p={p}");
        }
    }
}

#[test]
fn crossing_counts_stay_within_the_bound_across_kinds() {
    let mut s = SeededSampler::new(240);
    for kind in [
        ChannelKind::GlobalDepolarizing,
        ChannelKind::LocalDepolarizing,
        ChannelKind::LocalDephasing,
        ChannelKind::AmplitudeDamping,
    ] {
        let ch = make_channel(&ChannelDescriptor::new(kind, 0.25, (2, 2))).unwrap();
        let bound = spectral_decompose(&ch).unwrap().crossing_bound();
        for _ in 0..20 {
            let rho0 = random_mixed_state((2, 2), 4, &mut s).unwrap();
            let traj = run_trajectory(&ch, &rho0, 2000, DEFAULT_CROSSING_THRESHOLD).unwrap();
            assert!(
                traj.transversal_crossings() <= bound,
                "{kind:?}: {} crossings > bound {bound}",
                traj.transversal_crossings()
            );
        }
    }
}

#[test]
fn no_permanent_vanishing_when_the_steady_state_is_outside_c0() {
    let mut s = SeededSampler::new(250);
    let target = random_mixed_state((2, 2), 4, &mut s).unwrap();
    assert!(commutator_criterion(&target) > 1e-3);
    let ch = replacement_channel(&target, 0.2).unwrap();
    for _ in 0..10 {
        let rho0 = random_mixed_state((2, 2), 4, &mut s).unwrap();
        if commutator_criterion(&rho0) <= 1e-3 {
            continue;
        }
        let traj = run_trajectory(&ch, &rho0, 2000, DEFAULT_CROSSING_THRESHOLD).unwrap();
        assert!(!traj.ends_below_threshold());
        // no below-threshold run may persist to the end
        let last = traj.times().len() - 1;
        assert!(traj.crossings().iter().all(|&(_, exit)| exit < last));
    }
}
