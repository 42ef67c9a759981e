//! Property tests for the structural invariants: payoff-model equivalence,
//! prefix structure of the fractional knapsack, approximation-factor bounds,
//! slot-constraint feasibility and serialization round trips.

use proptest::prelude::*;
use stochopt::approx_multi::{flatten_and_normalize, randomized_round, RoundingConfig};
use stochopt::approx_single::{best_scenario_approx, solve_single_qip, Mode};
use stochopt::hardgen::{random_instance, random_multi_instance, RandomParams};
use stochopt::io::{instance_digest, instance_to_string, parse_instance, Instance};
use stochopt::knapsack::{frac_knapsack_prefix, int_knapsack_2approx, KnapsackRow};
use stochopt::lp::{lp_solve, LinearProgram};
use stochopt::model::{evaluate_payoff, qip_payoff, to_qip, to_qip_multi};
use stochopt::rational::{rat_one, rat_uint, rat_zero, Rat};
use num::{BigInt, One, Zero};

fn params(n: usize, m: usize, kappa: u64, seed: u64) -> RandomParams {
    RandomParams {
        n,
        m,
        kappa,
        seed,
        ..Default::default()
    }
}

fn quarter_grid(raw: Vec<u8>) -> Vec<Rat> {
    raw.into_iter()
        .map(|v| Rat::new(BigInt::from(v % 5), BigInt::from(4)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The instance-form payoff and the normalized quadratic-program payoff
    // agree exactly on every allocation.
    #[test]
    fn qip_payoff_matches_instance_payoff(
        n in 1usize..6,
        m in 1usize..5,
        kappa in 1u64..4,
        seed in any::<u64>(),
        raw in proptest::collection::vec(any::<u8>(), 8),
    ) {
        let instance = random_instance(&params(n, m, kappa, seed)).unwrap();
        let x = quarter_grid(raw[..n].to_vec());
        let direct = evaluate_payoff(&instance, &x).unwrap();
        let wrapped: Vec<Vec<Rat>> = x.iter().map(|v| vec![v.clone()]).collect();
        let normalized = qip_payoff(&to_qip(&instance), &wrapped).unwrap();
        prop_assert_eq!(&direct.total_payoff, &normalized.total_payoff);
        prop_assert_eq!(&direct.per_scenario_payoff, &normalized.per_scenario_payoff);
        prop_assert_eq!(&direct.allocation.alpha, &normalized.allocation.alpha);
    }

    // alpha is exactly min(1, B_i / spend_i) on every solution the combined
    // solver returns, with alpha = 1 on zero spend.
    #[test]
    fn derived_alpha_is_canonical(
        n in 1usize..6,
        m in 1usize..5,
        kappa in 1u64..4,
        seed in any::<u64>(),
    ) {
        let instance = random_instance(&params(n, m, kappa, seed)).unwrap();
        let qip = to_qip(&instance);
        let sol = solve_single_qip(&qip, Mode::Integral).unwrap();
        for i in 0..qip.m() {
            let spend: Rat = (0..qip.n())
                .map(|j| &qip.w[i][j][0] * &sol.allocation.x[j][0])
                .sum();
            let expected = if spend.is_zero() {
                rat_one()
            } else {
                let scaled = &qip.budgets[i] / &spend;
                if scaled < rat_one() { scaled } else { rat_one() }
            };
            prop_assert_eq!(&sol.allocation.alpha[i], &expected);
        }
    }

    // The fractional row optimum is a prefix: ones, at most one fractional
    // coordinate, then zeros — and it matches the exact LP optimum.
    #[test]
    fn frac_knapsack_is_a_prefix_and_lp_optimal(
        values in proptest::collection::vec(0u8..10, 1..7),
        costs in proptest::collection::vec(1u8..8, 1..7),
        capacity in 1u8..40,
    ) {
        let n = values.len().min(costs.len());
        let mut unit_costs: Vec<Rat> = costs[..n].iter().map(|&c| rat_uint(c as u64)).collect();
        unit_costs.sort();
        let row = KnapsackRow {
            values: values[..n].iter().map(|&v| rat_uint(v as u64)).collect(),
            unit_costs,
            capacity: rat_uint(capacity as u64),
        };
        let (x, payoff) = frac_knapsack_prefix(&row);
        let mut seen_fractional = false;
        let mut seen_zero = false;
        for v in &x {
            prop_assert!(*v >= rat_zero() && *v <= rat_one());
            if v.is_one() {
                prop_assert!(!seen_fractional && !seen_zero);
            } else if v.is_zero() {
                seen_zero = true;
            } else {
                prop_assert!(!seen_fractional && !seen_zero);
                seen_fractional = true;
            }
        }
        let lp = LinearProgram {
            objective: row.values.clone(),
            constraints: vec![(
                (0..n).map(|j| row.weight(j)).collect(),
                row.capacity.clone(),
            )],
        };
        let (_, lp_value) = lp_solve(&lp).unwrap();
        prop_assert_eq!(payoff, lp_value);
    }

    // The integral row solution is feasible, binary, and within a factor 2
    // of the exhaustive 0/1 optimum.
    #[test]
    fn int_knapsack_within_factor_two(
        values in proptest::collection::vec(0u8..10, 1..7),
        costs in proptest::collection::vec(1u8..8, 1..7),
        capacity in 1u8..40,
    ) {
        let n = values.len().min(costs.len());
        let mut unit_costs: Vec<Rat> = costs[..n].iter().map(|&c| rat_uint(c as u64)).collect();
        unit_costs.sort();
        let row = KnapsackRow {
            values: values[..n].iter().map(|&v| rat_uint(v as u64)).collect(),
            unit_costs,
            capacity: rat_uint(capacity as u64),
        };
        let (x, int) = int_knapsack_2approx(&row);
        prop_assert!(x.iter().all(|v| v.is_zero() || v.is_one()));
        let spend: Rat = (0..n).map(|j| &x[j] * row.weight(j)).sum();
        prop_assert!(spend <= row.capacity);
        let mut opt = rat_zero();
        for mask in 0u32..(1 << n) {
            let mut weight = rat_zero();
            let mut value = rat_zero();
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    weight += row.weight(j);
                    value += &row.values[j];
                }
            }
            if weight <= row.capacity && value > opt {
                opt = value;
            }
        }
        prop_assert!(rat_uint(2) * &int >= opt);
    }

    // The integral best-scenario solver is a genuine 2m-approximation under
    // the soft budget: its payoff times 2m covers its own certificate, which
    // upper-bounds OPT.
    #[test]
    fn best_scenario_integral_within_2m_of_certificate(
        n in 1usize..6,
        m in 1usize..5,
        kappa in 1u64..4,
        seed in any::<u64>(),
    ) {
        let instance = random_instance(&params(n, m, kappa, seed)).unwrap();
        let qip = to_qip(&instance);
        let sol = best_scenario_approx(&qip, Mode::Integral).unwrap();
        let cert = sol.ratio_certificate.clone().unwrap();
        prop_assert!(rat_uint(2 * m as u64) * &sol.total_payoff >= cert);
    }

    // The certificate of the per-scenario branch upper-bounds its payoff by
    // construction; multi-slot outputs respect the slot constraints; rounding
    // is deterministic in the seed.
    #[test]
    fn multi_slot_solutions_respect_slot_constraints(
        n in 1usize..4,
        m in 1usize..4,
        s in 2usize..4,
        seed in any::<u64>(),
    ) {
        let instance = random_multi_instance(&RandomParams {
            n,
            m,
            s,
            seed,
            ..Default::default()
        })
        .unwrap();
        let qip = to_qip_multi(&instance);
        let fractional = flatten_and_normalize(&qip).unwrap();
        for kw in &fractional.allocation.x {
            let sum: Rat = kw.iter().cloned().sum();
            prop_assert!(sum <= rat_one());
        }
        let config = RoundingConfig { seed, ..Default::default() };
        let a = randomized_round(&fractional, &qip, &config).unwrap();
        let b = randomized_round(&fractional, &qip, &config).unwrap();
        prop_assert_eq!(&a.solution, &b.solution);
        prop_assert!(a.solution.allocation.integral);
        for kw in &a.solution.allocation.x {
            let sum: Rat = kw.iter().cloned().sum();
            prop_assert!(sum <= rat_one());
        }
    }

    // The best-scenario certificate never drops below the payoff of any
    // integral allocation (it bounds OPT from above).
    #[test]
    fn certificate_dominates_all_integral_points(
        n in 1usize..5,
        m in 1usize..4,
        seed in any::<u64>(),
    ) {
        let instance = random_instance(&params(n, m, 2, seed)).unwrap();
        let qip = to_qip(&instance);
        let sol = best_scenario_approx(&qip, Mode::Fractional).unwrap();
        let cert = sol.ratio_certificate.clone().unwrap();
        for mask in 0u32..(1 << n) {
            let x: Vec<Vec<Rat>> = (0..n)
                .map(|j| vec![if mask & (1 << j) != 0 { rat_one() } else { rat_zero() }])
                .collect();
            let point = qip_payoff(&qip, &x).unwrap();
            prop_assert!(point.total_payoff <= cert);
        }
    }

    // Canonical serialization round-trips exactly and digests stably.
    #[test]
    fn serialization_round_trips(
        n in 1usize..5,
        m in 1usize..4,
        kappa in 1u64..4,
        seed in any::<u64>(),
    ) {
        let instance = Instance::Single(random_instance(&params(n, m, kappa, seed)).unwrap());
        let text = instance_to_string(&instance);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &instance);
        prop_assert_eq!(instance_digest(&back), instance_digest(&instance));
    }
}
