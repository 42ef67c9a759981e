//! Solve a small single-slot instance with each single-slot algorithm and
//! print payoffs, certificates and the chosen allocations.
//!
//! Run with: cargo run --example solve_single

use stochopt::approx_single::{
    best_scenario_approx, group_uniform_approx, solve_single_qip, truncate_kappa_qip, Mode,
};
use stochopt::model::{to_qip, SingleSlotInstance, Solution};
use stochopt::rational::{rat_int, rat_one, rat_to_string, ratio};

fn show(label: &str, solution: &Solution) {
    let cert = solution
        .ratio_certificate
        .as_ref()
        .map(rat_to_string)
        .unwrap_or_else(|| "-".into());
    let x: Vec<String> = solution
        .allocation
        .x
        .iter()
        .map(|kw| rat_to_string(&kw[0]))
        .collect();
    println!(
        "{label:<18} payoff {:<8} certificate {:<8} x = [{}]",
        rat_to_string(&solution.total_payoff),
        cert,
        x.join(", ")
    );
}

fn main() -> stochopt::Result<()> {
    // Three keywords, two equally likely scenarios. Keyword costs range over
    // [d, 2d], so both the grouping-with-truncation branch and the
    // per-scenario knapsack branch are in play.
    let mut instance = SingleSlotInstance {
        budget: rat_int(6),
        kappa: 2,
        eps: vec![ratio(1, 2), ratio(1, 2)],
        clicks: vec![
            vec![rat_int(4), rat_int(1), rat_int(2)],
            vec![rat_int(0), rat_int(5), rat_int(3)],
        ],
        base_costs: vec![rat_one(), rat_int(2), rat_int(5)],
        real_costs: vec![
            vec![rat_int(2), rat_int(2), rat_int(5)],
            vec![rat_int(1), rat_int(4), rat_int(9)],
        ],
        relaxed_integrality: false,
        permutation: Vec::new(),
    };
    instance.validate()?;
    let qip = to_qip(&instance);

    show("best-scenario", &best_scenario_approx(&qip, Mode::Integral)?);
    let (truncated, scaled_alpha) = truncate_kappa_qip(&qip)?;
    show("truncate-kappa", &truncated);
    println!(
        "{:<18} scaled alpha = [{}]",
        "",
        scaled_alpha
            .iter()
            .map(rat_to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    show("combined (int)", &solve_single_qip(&qip, Mode::Integral)?);
    show("combined (frac)", &solve_single_qip(&qip, Mode::Fractional)?);

    // Grouping alone needs kappa = 1; truncate to base costs to show it.
    let mut uniform = instance.clone();
    uniform.kappa = 1;
    uniform.real_costs = vec![uniform.base_costs.clone(), uniform.base_costs.clone()];
    uniform.validate()?;
    show("group (kappa=1)", &group_uniform_approx(&to_qip(&uniform))?);
    Ok(())
}
