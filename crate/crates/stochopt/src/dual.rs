//! Budget-minimization dual: given a target expected payoff P, find the
//! smallest integer budget whose optimal payoff reaches P.
//!
//! The primal problem is hard, so the dual is solved bi-criterially: with a
//! primal solver of approximation factor rho, a binary search over budgets
//! returns a budget B no larger than the true minimum budget for P, at which
//! the solver certifiably achieves payoff at least P / rho.

use crate::error::{Error, Result};
use crate::exact::{brute_int_oracle, OracleConfig};
use crate::model::{to_qip, SingleSlotInstance, Solution};
use crate::rational::{rat_ceil, rat_to_string, rat_zero, Rat};
use num::{BigInt, One, ToPrimitive, Zero};

/// A dual query: the payoff target and the approximation factor of the
/// primal solver that will answer budget probes.
#[derive(Debug, Clone)]
pub struct DualQuery {
    pub target: Rat,
    /// Factor rho >= 1 such that the probe solver always returns at least
    /// OPT / rho. Use 1 for an exact oracle.
    pub rho: Rat,
}

#[derive(Debug, Clone)]
pub struct DualResult {
    /// Integer budget found; at most the true minimum budget for the target.
    pub budget: Rat,
    /// Solution produced by the probe solver at that budget; its payoff is at
    /// least target / rho.
    pub solution: Solution,
    /// Number of primal probes spent by the search.
    pub probes: usize,
}

/// Budget beyond which no payoff improves: ceil of the largest per-scenario
/// total spend `sum_j a[i][j] c[i][j]`.
pub fn max_useful_budget(instance: &SingleSlotInstance) -> Rat {
    let mut worst = rat_zero();
    for i in 0..instance.m() {
        let spend: Rat = (0..instance.n())
            .map(|j| &instance.clicks[i][j] * &instance.real_costs[i][j])
            .sum();
        if spend > worst {
            worst = spend;
        }
    }
    Rat::from_integer(rat_ceil(&worst).max(BigInt::one()))
}

fn with_budget(instance: &SingleSlotInstance, budget: &Rat) -> SingleSlotInstance {
    let mut probe = instance.clone();
    probe.budget = budget.clone();
    probe
}

/// Bi-criteria binary search. The probe predicate "solver payoff >= P / rho"
/// holds for every budget at or above the true minimum budget for P (payoff
/// is monotone in the budget, so OPT >= P there and the solver loses at most
/// the factor rho). The search therefore lands on a budget at most that
/// minimum, even though the predicate need not be monotone below it.
pub fn dual_binary_search<F>(
    instance: &SingleSlotInstance,
    query: &DualQuery,
    mut solver: F,
) -> Result<DualResult>
where
    F: FnMut(&SingleSlotInstance) -> Result<Solution>,
{
    if query.rho < Rat::one() {
        return Err(Error::DimensionMismatch("rho must be at least 1".into()));
    }
    let threshold = &query.target / &query.rho;
    let mut probes = 0usize;
    let mut probe = |budget: &Rat| -> Result<Solution> {
        probes += 1;
        solver(&with_budget(instance, budget))
    };
    let hi_budget = max_useful_budget(instance);
    let mut hi_solution = probe(&hi_budget)?;
    if hi_solution.total_payoff < threshold {
        return Err(Error::Infeasible {
            target: rat_to_string(&query.target),
        });
    }
    // invariant: the solution at `hi` meets the threshold, the one at `lo`
    // does not (lo = 0 stands for the empty budget)
    let mut lo = BigInt::zero();
    let mut hi = hi_budget.to_integer();
    while &lo + BigInt::one() < hi {
        let mid = (&lo + &hi) / BigInt::from(2);
        let mid_budget = Rat::from_integer(mid.clone());
        let sol = probe(&mid_budget)?;
        if sol.total_payoff >= threshold {
            hi = mid;
            hi_solution = sol;
        } else {
            lo = mid;
        }
    }
    Ok(DualResult {
        budget: Rat::from_integer(hi),
        solution: hi_solution,
        probes,
    })
}

/// Exact dual probe: the brute-force integral oracle (rho = 1).
pub fn exact_probe(config: &OracleConfig) -> impl Fn(&SingleSlotInstance) -> Result<Solution> + '_ {
    move |instance| brute_int_oracle(&to_qip(instance), config)
}

/// Minimum budgets for every integer target 1..=p, where p is the largest
/// integer payoff reachable at any budget. Computed with the exact oracle,
/// so each entry is the true minimum and the sequence is non-decreasing.
pub fn staircase(instance: &SingleSlotInstance, config: &OracleConfig) -> Result<Vec<(u64, Rat)>> {
    let top = brute_int_oracle(&to_qip(&with_budget(instance, &max_useful_budget(instance))), config)?;
    let p = top.total_payoff.floor().to_integer().to_u64().unwrap_or(0);
    let mut steps = Vec::with_capacity(p as usize);
    for target in 1..=p {
        let query = DualQuery {
            target: Rat::from_integer(BigInt::from(target)),
            rho: Rat::one(),
        };
        let result = dual_binary_search(instance, &query, exact_probe(config))?;
        steps.push((target, result.budget));
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx_single::{solve_single, Mode};
    use crate::rational::{rat_int, rat_one, ratio};

    fn one_keyword() -> SingleSlotInstance {
        // a = 3, c = 2: payoff(b) = min(3, b/2) for the integral oracle
        let mut inst = SingleSlotInstance {
            budget: rat_int(1),
            kappa: 2,
            eps: vec![rat_one()],
            clicks: vec![vec![rat_int(3)]],
            base_costs: vec![rat_one()],
            real_costs: vec![vec![rat_int(2)]],
            relaxed_integrality: false,
            permutation: vec![0],
        };
        inst.validate().unwrap();
        inst
    }

    #[test]
    fn max_useful_budget_covers_full_spend() {
        assert_eq!(max_useful_budget(&one_keyword()), rat_int(6));
    }

    #[test]
    fn exact_dual_finds_minimum_budget() {
        let inst = one_keyword();
        let config = OracleConfig::default();
        for (target, expected) in [(1i64, 2i64), (2, 4), (3, 6)] {
            let query = DualQuery {
                target: rat_int(target),
                rho: rat_one(),
            };
            let result = dual_binary_search(&inst, &query, exact_probe(&config)).unwrap();
            assert_eq!(result.budget, rat_int(expected), "target {target}");
            assert!(result.solution.total_payoff >= rat_int(target));
        }
    }

    #[test]
    fn fractional_target_works() {
        let inst = one_keyword();
        let query = DualQuery {
            target: ratio(3, 2),
            rho: rat_one(),
        };
        let result = dual_binary_search(&inst, &query, exact_probe(&OracleConfig::default())).unwrap();
        assert_eq!(result.budget, rat_int(3));
    }

    #[test]
    fn infeasible_target_is_an_error() {
        let inst = one_keyword();
        let query = DualQuery {
            target: rat_int(4),
            rho: rat_one(),
        };
        assert!(matches!(
            dual_binary_search(&inst, &query, exact_probe(&OracleConfig::default())),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn bicriteria_with_approximate_probe() {
        // two scenarios, two keywords; probe with the m-approximation
        let mut inst = SingleSlotInstance {
            budget: rat_int(1),
            kappa: 2,
            eps: vec![ratio(1, 2), ratio(1, 2)],
            clicks: vec![vec![rat_int(4), rat_int(1)], vec![rat_int(1), rat_int(5)]],
            base_costs: vec![rat_one(), rat_int(2)],
            real_costs: vec![vec![rat_int(2), rat_int(2)], vec![rat_one(), rat_int(3)]],
            relaxed_integrality: false,
            permutation: vec![],
        };
        inst.validate().unwrap();
        let config = OracleConfig::default();
        let target = rat_int(2);
        let exact = dual_binary_search(
            &inst,
            &DualQuery {
                target: target.clone(),
                rho: rat_one(),
            },
            exact_probe(&config),
        )
        .unwrap();
        // rho = 2m for the integral best-scenario/grouping combination
        let rho = rat_int(2 * inst.m() as i64);
        let approx = dual_binary_search(
            &inst,
            &DualQuery {
                target: target.clone(),
                rho: rho.clone(),
            },
            |probe| solve_single(probe, Mode::Integral),
        )
        .unwrap();
        assert!(approx.budget <= exact.budget);
        assert!(approx.solution.total_payoff >= target / rho);
    }

    #[test]
    fn staircase_is_monotone() {
        let inst = one_keyword();
        let steps = staircase(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(steps.len(), 3);
        for pair in steps.windows(2) {
            assert!(pair[0].1 <= pair[1].1);
        }
        assert_eq!(steps[2], (3, rat_int(6)));
    }
}
