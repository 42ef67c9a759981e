//! Hard instances from satisfiability: a MAX-2SAT-3 formula becomes a
//! two-slot instance whose optimal expected payoff is exactly
//! (max satisfiable clauses) / (clause count).
//!
//! Run with: cargo run --example sat_reduction

use stochopt::exact::{brute_int_oracle, OracleConfig};
use stochopt::hardgen::{gen_sat_instance, random_formula};
use stochopt::model::to_qip_multi;
use stochopt::rational::{rat_to_string, rat_uint};

fn main() -> stochopt::Result<()> {
    let config = OracleConfig::default();
    for seed in 0..5 {
        let formula = random_formula(4, seed)?;
        let clause_text: Vec<String> = formula
            .clauses
            .iter()
            .map(|(a, b)| {
                let lit = |l: &stochopt::hardgen::Literal| {
                    format!("{}z{}", if l.positive { "" } else { "!" }, l.var)
                };
                format!("({} | {})", lit(a), lit(b))
            })
            .collect();
        println!("seed {seed}: {}", clause_text.join(" & "));

        let max_sat = formula.max_sat_value()?;
        let instance = gen_sat_instance(&formula)?;
        let oracle = brute_int_oracle(&to_qip_multi(&instance), &config)?;
        let m = formula.clauses.len();
        println!(
            "  max-sat {max_sat}/{m}, oracle payoff {} (payoff * m = {})",
            rat_to_string(&oracle.total_payoff),
            rat_to_string(&(&oracle.total_payoff * rat_uint(m as u64)))
        );
        assert_eq!(&oracle.total_payoff * rat_uint(m as u64), rat_uint(max_sat as u64));
    }
    println!("oracle payoff * m equals the exhaustive max-sat value on every formula");
    Ok(())
}
