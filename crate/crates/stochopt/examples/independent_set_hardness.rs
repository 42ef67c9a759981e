//! Hard instances from graphs: the independent-set reduction produces a
//! single-slot quadratic program whose optimal payoff sits in
//! [independence number, independence number + 1).
//!
//! Run with: cargo run --example independent_set_hardness

use stochopt::exact::{brute_int_oracle, OracleConfig};
use stochopt::hardgen::{gen_from_graph, CostRule, Graph};
use stochopt::rational::rat_to_string;

fn main() -> stochopt::Result<()> {
    let graphs = [
        ("empty graph on 4", Graph::new(4, [])?),
        ("path on 4", Graph::path(4)),
        ("cycle on 5", Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])?),
        ("complete graph K4", Graph::complete(4)),
    ];
    let config = OracleConfig::default();
    // a large geometric base keeps the off-diagonal contributions small, so
    // the payoff sandwich around the independence number is tight
    let base = 100;
    println!("{:<20} {:>12} {:>24}", "graph", "independence", "oracle payoff");
    for (name, graph) in graphs {
        let qip = gen_from_graph(&graph, base, 1, &CostRule::Default)?;
        let oracle = brute_int_oracle(&qip, &config)?;
        let ind = graph.max_independent_set()?;
        println!(
            "{:<20} {:>12} {:>24}",
            name,
            ind,
            rat_to_string(&oracle.total_payoff)
        );
        assert!(oracle.total_payoff >= stochopt::rational::rat_uint(ind as u64));
        assert!(oracle.total_payoff < stochopt::rational::rat_uint(ind as u64 + 1));
    }
    println!("every payoff lies in [independence number, independence number + 1)");
    Ok(())
}
