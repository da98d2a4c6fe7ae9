//! Route a random perfect matching of G(24, 1/2) in four random parts, and
//! estimate the capacity of one sampled graph.

use linkagelab::random::{estimate_random_capacity, gnp_experiment};
use linkagelab::ratio;

fn main() -> linkagelab::Result<()> {
    let report = gnp_experiment(24, 0.5, 4, 100, 7, 200_000)?;
    let (lo, hi) = report.wilson.unwrap_or((0.0, 1.0));
    println!(
        "{} of {} trials routed, 95% interval [{lo:.3}, {hi:.3}]",
        report.successes, report.trials
    );

    let estimate = estimate_random_capacity(16, 0.5, 10, 7)?;
    println!(
        "G(16, 1/2): r′ = {:?}, empirical γ ≥ {}",
        estimate.r_prime,
        ratio::to_string(&estimate.bound.value)
    );
    Ok(())
}
