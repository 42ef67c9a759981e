//! The vector-program relaxation can overshoot the true optimum by a factor
//! of m/2: on the complete-graph instance the relaxation admits a feasible
//! point of objective m (witnessed by a purely symbolic orthonormal-family
//! certificate) while the true optimum stays below 2.
//!
//! Run with: cargo run --example sdp_gap_certificate

use stochopt::exact::{brute_int_oracle, OracleConfig};
use stochopt::hardgen::{gen_sdp_gap, verify_vector_certificate};
use stochopt::rational::rat_to_string;

fn main() -> stochopt::Result<()> {
    let config = OracleConfig::default();
    println!(
        "{:>3} {:>20} {:>18} {:>10}",
        "m", "relaxation objective", "oracle payoff", "gap"
    );
    for m in 2..=6 {
        let (qip, cert) = gen_sdp_gap(m, 7)?;
        let report = verify_vector_certificate(&qip, &cert)?;
        assert!(report.residuals.iter().all(|r| r == &stochopt::rational::rat_zero()));
        let oracle = brute_int_oracle(&qip, &config)?;
        let gap = &report.objective / &oracle.total_payoff;
        println!(
            "{m:>3} {:>20} {:>18} {:>10}",
            rat_to_string(&report.objective),
            rat_to_string(&oracle.total_payoff),
            rat_to_string(&gap)
        );
    }

    // Tampering with the inner-product table breaks realizability and is
    // rejected without any numeric linear algebra.
    let (qip, mut cert) = gen_sdp_gap(3, 7)?;
    cert.inner[0][0] = stochopt::rational::rat_one();
    match verify_vector_certificate(&qip, &cert) {
        Err(e) => println!("tampered certificate rejected: {e}"),
        Ok(_) => unreachable!("tampered certificate must not verify"),
    }
    Ok(())
}
