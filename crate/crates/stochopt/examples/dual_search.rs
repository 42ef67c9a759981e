//! Budget-minimization dual: find the smallest integer budget reaching a
//! target expected payoff, with an exact probe and with an approximate one
//! (bi-criteria guarantee), and print the full budget staircase.
//!
//! Run with: cargo run --example dual_search

use stochopt::approx_single::{solve_single, Mode};
use stochopt::dual::{dual_binary_search, exact_probe, max_useful_budget, staircase, DualQuery};
use stochopt::exact::OracleConfig;
use stochopt::hardgen::{random_instance, RandomParams};
use stochopt::rational::{rat_int, rat_one, rat_to_string, Rat};

fn main() -> stochopt::Result<()> {
    let params = RandomParams {
        n: 3,
        m: 2,
        max_clicks: 4,
        seed: 5,
        ..Default::default()
    };
    let instance = random_instance(&params)?;
    let config = OracleConfig::default();
    println!(
        "instance: n={} m={} max useful budget {}",
        instance.n(),
        instance.m(),
        rat_to_string(&max_useful_budget(&instance))
    );

    let target = rat_int(2);
    let exact = dual_binary_search(
        &instance,
        &DualQuery {
            target: target.clone(),
            rho: rat_one(),
        },
        exact_probe(&config),
    )?;
    println!(
        "exact probe:  target {} -> budget {} (payoff {}, {} probes)",
        rat_to_string(&target),
        rat_to_string(&exact.budget),
        rat_to_string(&exact.solution.total_payoff),
        exact.probes
    );

    // With the combined integral approximation as probe (factor 2m), the
    // search returns a budget at most the true minimum, at which the probe
    // certifiably achieves at least target / 2m.
    let rho = Rat::from_integer((2 * instance.m() as u64).into());
    let approx = dual_binary_search(
        &instance,
        &DualQuery {
            target: target.clone(),
            rho: rho.clone(),
        },
        |probe| solve_single(probe, Mode::Integral),
    )?;
    println!(
        "approx probe: target {} -> budget {} <= {} (payoff {} >= target/rho {})",
        rat_to_string(&target),
        rat_to_string(&approx.budget),
        rat_to_string(&exact.budget),
        rat_to_string(&approx.solution.total_payoff),
        rat_to_string(&(&target / &rho))
    );

    println!("budget staircase (integer targets):");
    for (target, budget) in staircase(&instance, &config)? {
        println!("  payoff >= {target} needs budget {}", rat_to_string(&budget));
    }
    Ok(())
}
