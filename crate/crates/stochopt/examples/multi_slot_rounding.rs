//! Multi-slot solving: the per-scenario multiple-choice knapsack branch, the
//! flatten-and-normalize fractional branch, and randomized rounding of the
//! fractional solution back to an integral one.
//!
//! Run with: cargo run --example multi_slot_rounding

use stochopt::approx_multi::{
    flatten_and_normalize, per_scenario_multi_approx, randomized_round, solve_multi,
    RoundingConfig,
};
use stochopt::approx_single::Mode;
use stochopt::hardgen::{random_multi_instance, RandomParams};
use stochopt::model::to_qip_multi;
use stochopt::rational::rat_to_string;

fn main() -> stochopt::Result<()> {
    let params = RandomParams {
        n: 5,
        m: 3,
        s: 2,
        seed: 11,
        ..Default::default()
    };
    let instance = random_multi_instance(&params)?;
    println!(
        "random multi-slot instance: n={} m={} s={} budget={}",
        instance.n(),
        instance.m(),
        instance.slots,
        rat_to_string(&instance.budget)
    );
    let qip = to_qip_multi(&instance);

    let scenario = per_scenario_multi_approx(&qip)?;
    println!(
        "per-scenario mckp     payoff {}",
        rat_to_string(&scenario.total_payoff)
    );

    let fractional = flatten_and_normalize(&qip)?;
    println!(
        "flatten-normalize     payoff {} (integral: {})",
        rat_to_string(&fractional.total_payoff),
        fractional.allocation.integral
    );

    // Round the fractional solution with a few different seeds. Each slot is
    // kept with probability equal to its fractional value, one slot per
    // keyword survives, and alpha is scaled down to absorb the variance.
    for seed in 0..4 {
        let config = RoundingConfig {
            seed,
            ..Default::default()
        };
        let outcome = randomized_round(&fractional, &qip, &config)?;
        println!(
            "rounded (seed {seed})      payoff {} retries {} feasible-pre-fallback {}",
            rat_to_string(&outcome.solution.total_payoff),
            outcome.retries_used,
            outcome.feasible_before_fallback
        );
    }

    let combined = solve_multi(&instance, Mode::Integral, &RoundingConfig::default())?;
    println!(
        "combined solver       payoff {} via {}",
        rat_to_string(&combined.total_payoff),
        combined.algorithm
    );
    Ok(())
}
