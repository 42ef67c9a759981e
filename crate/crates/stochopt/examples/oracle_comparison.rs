//! Compare the approximation algorithms against the exact oracles on a small
//! instance: the brute-force integral oracle, the fractional grid oracle (a
//! certified lower bound), the alpha-grid LP solver, and the fixed-m dynamic
//! program.
//!
//! Run with: cargo run --example oracle_comparison

use stochopt::approx_single::{solve_single_qip, Mode};
use stochopt::exact::{
    alpha_grid_solve, brute_int_oracle, dp_solve, frac_grid_oracle, solve_fixed_m_int,
    OracleConfig,
};
use stochopt::hardgen::{random_instance, RandomParams};
use stochopt::model::to_qip;
use stochopt::rational::rat_to_string;

fn main() -> stochopt::Result<()> {
    let params = RandomParams {
        n: 4,
        m: 2,
        seed: 3,
        ..Default::default()
    };
    let instance = random_instance(&params)?;
    println!(
        "instance: n={} m={} budget={} kappa={}",
        instance.n(),
        instance.m(),
        rat_to_string(&instance.budget),
        instance.kappa
    );
    let qip = to_qip(&instance);
    let config = OracleConfig::default();

    let brute = brute_int_oracle(&qip, &config)?;
    println!("brute-int-oracle      {}", rat_to_string(&brute.total_payoff));

    let grid = frac_grid_oracle(&qip, &config)?;
    println!(
        "frac-grid-oracle      {} (grid step 1/{})",
        rat_to_string(&grid.total_payoff),
        config.grid_steps
    );

    let alpha = alpha_grid_solve(&qip, &config)?;
    println!("alpha-grid-lp         {}", rat_to_string(&alpha.total_payoff));

    // The dynamic program is exact once alpha is fixed; at the alpha vector
    // of the integral optimum it recovers the oracle payoff exactly.
    let dp = dp_solve(&qip, &brute.allocation.alpha, &config)?;
    println!(
        "dp at oracle alpha    {} (matches brute: {})",
        rat_to_string(&dp.total_payoff),
        dp.total_payoff == brute.total_payoff
    );

    let fixed = solve_fixed_m_int(&qip, &config)?;
    println!("fixed-m-int           {}", rat_to_string(&fixed.total_payoff));

    let approx = solve_single_qip(&qip, Mode::Integral)?;
    let cert = approx.ratio_certificate.as_ref().unwrap();
    println!(
        "combined approx       {} certificate {} (oracle within bound: {})",
        rat_to_string(&approx.total_payoff),
        rat_to_string(cert),
        brute.total_payoff <= *cert
    );
    Ok(())
}
