//! Exploration and `B_omega` against the branching-process limit.

use alphagraph::branching::rho_limit;
use alphagraph::components::{b_fraction, default_omega, explore, StopReason};
use alphagraph::model::{EdgeModel, ModelParams};
use alphagraph::sampler::sample_fast;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn exploration_survival_matches_rho() {
    let n = 100_000;
    let m = EdgeModel::new(&ModelParams::alpha_model(n, 1.0, 2.0, 0).unwrap()).unwrap();
    let omega = (n as f64).ln().ln().ceil() as usize;
    assert_eq!(omega, 3);
    let mut starts = ChaCha8Rng::seed_from_u64(99);
    let (mut reached, mut total) = (0, 0);
    for g in 0..20 {
        let graph = sample_fast(&m, g);
        for _ in 0..1000 {
            let r = explore(&graph, starts.random_range(0..n), omega).unwrap();
            reached += usize::from(r.stopped_reason == StopReason::ReachedCutoff);
            total += 1;
        }
    }
    let share = reached as f64 / total as f64;
    assert!((share - rho_limit(2.0)).abs() <= 0.05, "{share}");
}

#[test]
fn b_fraction_of_erdos_renyi() {
    let n = 100_000;
    let m = EdgeModel::new(&ModelParams::alpha_model(n, 0.0, 2.0, 0).unwrap()).unwrap();
    let b = b_fraction(&sample_fast(&m, 1), default_omega(n));
    assert!((b - rho_limit(2.0)).abs() <= 0.02, "{b}");
}
