//! Single-slot approximation algorithms: per-scenario best knapsack (factor
//! m, or 2m integral), cost grouping for the uniform-cost case (factor
//! 2|groups|), and kappa-truncation on top of grouping (factor 2k|groups|).

use crate::error::{Error, Result};
use crate::knapsack::{frac_knapsack_prefix, int_knapsack_2approx, KnapsackRow};
use crate::model::{qip_payoff, to_qip, QipInstance, SingleSlotInstance, Solution};
use crate::rational::{rat_one, rat_uint, rat_zero, Rat};
use num::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Integral,
    Fractional,
}

/// A maximal run of keywords whose base costs are within a factor of 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordGroup {
    /// Inclusive keyword index range.
    pub range: (usize, usize),
    /// `d[q] / d[p]`.
    pub cost_span: Rat,
}

/// Partition d-sorted keywords into maximal groups with cost span <= 2.
/// The group count is at most floor(log2 d_n) + 1.
pub fn partition_groups(base_costs: &[Rat]) -> Vec<KeywordGroup> {
    let mut groups = Vec::new();
    let mut p = 0;
    let two = rat_uint(2);
    while p < base_costs.len() {
        let mut q = p;
        while q + 1 < base_costs.len() && &base_costs[q + 1] <= &(&base_costs[p] * &two) {
            q += 1;
        }
        groups.push(KeywordGroup {
            range: (p, q),
            cost_span: &base_costs[q] / &base_costs[p],
        });
        p = q + 1;
    }
    groups
}

/// Per-scenario knapsack, best scenario wins. The returned certificate is
/// the sum of the exact fractional row optima, an upper bound on OPT.
pub fn best_scenario_approx(qip: &QipInstance, mode: Mode) -> Result<Solution> {
    if qip.slots != 1 {
        return Err(Error::DimensionMismatch(
            "best_scenario_approx requires a single-slot program".into(),
        ));
    }
    let n = qip.n();
    let m = qip.m();
    let mut certificate = rat_zero();
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for i in 0..m {
        // keep only items with positive value; order by real cost so the
        // prefix solution is the ratio-greedy one
        let mut items: Vec<usize> = (0..n).filter(|&j| !qip.y[i][j][0].is_zero()).collect();
        if !items.windows(2).all(|w| qip.costs[i][w[0]][0] <= qip.costs[i][w[1]][0]) {
            items.sort_by(|&a, &b| qip.costs[i][a][0].cmp(&qip.costs[i][b][0]).then(a.cmp(&b)));
        }
        let row = KnapsackRow {
            values: items.iter().map(|&j| qip.y[i][j][0].clone()).collect(),
            unit_costs: items.iter().map(|&j| qip.costs[i][j][0].clone()).collect(),
            capacity: qip.budgets[i].clone(),
        };
        let (frac_x, frac_payoff) = frac_knapsack_prefix(&row);
        certificate += &frac_payoff;
        let (row_x, row_payoff) = match mode {
            Mode::Fractional => (frac_x, frac_payoff),
            Mode::Integral => {
                // The knapsack payoff is measured under the soft budget: an
                // item too heavy for the hard knapsack still pays
                // y * B / w alone, which is what keeps the best row within a
                // factor 2 of its fractional optimum.
                let (mut x, mut payoff) = int_knapsack_2approx(&row);
                for (pos, value) in row.values.iter().enumerate() {
                    if *value <= payoff {
                        continue; // the value alone caps the soft payoff
                    }
                    let w = row.weight(pos);
                    let soft = if w <= row.capacity {
                        value.clone()
                    } else {
                        &row.capacity / &w * value
                    };
                    if soft > payoff {
                        payoff = soft;
                        x = vec![rat_zero(); row.len()];
                        x[pos] = rat_one();
                    }
                }
                (x, payoff)
            }
        };
        let is_better = match &best {
            None => true,
            Some((p, _)) => row_payoff > *p,
        };
        if is_better {
            let mut x = vec![rat_zero(); n];
            for (pos, &j) in items.iter().enumerate() {
                x[j] = row_x[pos].clone();
            }
            best = Some((row_payoff, x));
        }
    }
    let (_, x) = best.expect("validated program has at least one scenario");
    let x: Vec<Vec<Rat>> = x.into_iter().map(|v| vec![v]).collect();
    let mut solution = qip_payoff(qip, &x)?;
    solution.algorithm = match mode {
        Mode::Fractional => "best-scenario-frac".into(),
        Mode::Integral => "best-scenario-int".into(),
    };
    solution.ratio_certificate = Some(certificate);
    Ok(solution)
}

/// All-ones payoff of each group, evaluated over its own keyword range only
/// so the scan over every group costs O(mn) in total. With `base_costs` the
/// spend uses `d_j y` in place of `w` (the truncated program's weights).
/// Returns the winning group's range and its per-scenario alpha.
fn best_group_scan(
    qip: &QipInstance,
    groups: &[KeywordGroup],
    base_costs: bool,
) -> ((usize, usize), Vec<Rat>, Rat) {
    let m = qip.m();
    let mut best: Option<((usize, usize), Vec<Rat>, Rat)> = None;
    for g in groups {
        let mut alpha = Vec::with_capacity(m);
        let mut total = rat_zero();
        for i in 0..m {
            let mut spend = rat_zero();
            let mut value = rat_zero();
            for j in g.range.0..=g.range.1 {
                if base_costs {
                    spend += &qip.base_costs[j][0] * &qip.y[i][j][0];
                } else {
                    spend += &qip.w[i][j][0];
                }
                value += &qip.y[i][j][0];
            }
            let a = if spend.is_zero() || qip.budgets[i] >= spend {
                rat_one()
            } else {
                &qip.budgets[i] / &spend
            };
            total += &a * &value;
            alpha.push(a);
        }
        let is_better = match &best {
            None => true,
            Some((_, _, p)) => total > *p,
        };
        if is_better {
            best = Some((g.range, alpha, total));
        }
    }
    best.expect("at least one group")
}

fn group_indicator(n: usize, range: (usize, usize)) -> Vec<Vec<Rat>> {
    let mut x = vec![vec![rat_zero()]; n];
    for kw in x.iter_mut().take(range.1 + 1).skip(range.0) {
        kw[0] = rat_one();
    }
    x
}

/// Uniform-cost grouping algorithm: all-ones on the best keyword group.
/// Requires kappa = 1. Output is integral; payoff >= OPT / (2 |groups|).
pub fn group_uniform_approx(qip: &QipInstance) -> Result<Solution> {
    if qip.kappa != 1 {
        return Err(Error::KappaNotOne(qip.kappa));
    }
    if qip.slots != 1 {
        return Err(Error::DimensionMismatch(
            "group_uniform_approx requires a single-slot program".into(),
        ));
    }
    let d: Vec<Rat> = qip.base_costs.iter().map(|kw| kw[0].clone()).collect();
    let groups = partition_groups(&d);
    let (range, _, _) = best_group_scan(qip, &groups, false);
    let mut solution = qip_payoff(qip, &group_indicator(qip.n(), range))?;
    let factor = rat_uint(2 * groups.len() as u64);
    solution.ratio_certificate = Some(&solution.total_payoff * &factor);
    solution.algorithm = "group-uniform".into();
    Ok(solution)
}

/// Truncation algorithm on a quadratic program: run the grouping algorithm
/// on base costs, then divide alpha by kappa to regain feasibility on the
/// real costs. Returns the solution (payoff re-derived on the original
/// program, which dominates the scaled alpha) together with the prescribed
/// scaled alpha vector.
pub fn truncate_kappa_qip(qip: &QipInstance) -> Result<(Solution, Vec<Rat>)> {
    if qip.slots != 1 {
        return Err(Error::DimensionMismatch(
            "truncate_kappa_qip requires a single-slot program".into(),
        ));
    }
    let d: Vec<Rat> = qip.base_costs.iter().map(|kw| kw[0].clone()).collect();
    let groups = partition_groups(&d);
    // the scan on base costs is exactly the grouping algorithm run on the
    // cost-truncated program, without materializing it
    let (range, alpha, _) = best_group_scan(qip, &groups, true);
    let x = group_indicator(qip.n(), range);
    let kappa = rat_uint(qip.kappa);
    let scaled_alpha: Vec<Rat> = alpha.iter().map(|a| a / &kappa).collect();
    // Feasibility of the scaled alpha on the original costs (Prop 2(a) shape):
    // alpha/kappa * sum(w x) <= alpha * sum(d y x) <= B.
    if cfg!(debug_assertions) {
        for i in 0..qip.m() {
            let spend: Rat = (range.0..=range.1).map(|j| &qip.w[i][j][0] * &x[j][0]).sum();
            debug_assert!(&scaled_alpha[i] * &spend <= qip.budgets[i]);
        }
    }
    let mut solution = qip_payoff(qip, &x)?;
    solution.algorithm = "truncate-kappa".into();
    let factor = rat_uint(2 * qip.kappa * groups.len() as u64);
    solution.ratio_certificate = Some(&solution.total_payoff * &factor);
    Ok((solution, scaled_alpha))
}

/// Truncation algorithm on a validated instance.
pub fn truncate_kappa_approx(instance: &SingleSlotInstance) -> Result<Solution> {
    let qip = to_qip(instance);
    Ok(truncate_kappa_qip(&qip)?.0)
}

/// Combined single-slot solver: best of the per-scenario branch and the
/// truncation branch, carrying the tighter certificate. Ties go to the
/// grouping/truncation branch.
pub fn solve_single_qip(qip: &QipInstance, mode: Mode) -> Result<Solution> {
    let scenario_branch = best_scenario_approx(qip, mode)?;
    let (group_branch, _) = truncate_kappa_qip(qip)?;
    let mut winner = if scenario_branch.total_payoff > group_branch.total_payoff {
        scenario_branch.clone()
    } else {
        group_branch.clone()
    };
    winner.ratio_certificate = match (
        scenario_branch.ratio_certificate,
        group_branch.ratio_certificate,
    ) {
        (Some(a), Some(b)) => Some(if a <= b { a } else { b }),
        (a, b) => a.or(b),
    };
    Ok(winner)
}

pub fn solve_single(instance: &SingleSlotInstance, mode: Mode) -> Result<Solution> {
    if let Some(solution) = crate::fastpath::solve_single_fast(instance, mode) {
        return Ok(solution);
    }
    let qip = to_qip(instance);
    solve_single_qip(&qip, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, rat_one, ratio};

    #[test]
    fn groups_follow_factor_two_threshold() {
        let d = |vals: &[i64]| -> Vec<Rat> { vals.iter().map(|&v| rat_int(v)).collect() };
        let ranges = |g: Vec<KeywordGroup>| -> Vec<(usize, usize)> {
            g.into_iter().map(|g| g.range).collect()
        };
        assert_eq!(ranges(partition_groups(&d(&[1, 2, 5]))), vec![(0, 1), (2, 2)]);
        assert_eq!(ranges(partition_groups(&d(&[1, 1, 1]))), vec![(0, 2)]);
        assert_eq!(
            ranges(partition_groups(&d(&[1, 3, 9]))),
            vec![(0, 0), (1, 1), (2, 2)]
        );
    }

    fn uniform_instance() -> SingleSlotInstance {
        let mut inst = SingleSlotInstance {
            budget: rat_int(4),
            kappa: 1,
            eps: vec![ratio(1, 2), ratio(1, 2)],
            clicks: vec![
                vec![rat_int(3), rat_int(1), rat_int(2)],
                vec![rat_int(1), rat_int(4), rat_int(0)],
            ],
            base_costs: vec![rat_int(1), rat_int(2), rat_int(5)],
            real_costs: vec![
                vec![rat_int(1), rat_int(2), rat_int(5)],
                vec![rat_int(1), rat_int(2), rat_int(5)],
            ],
            relaxed_integrality: false,
            permutation: vec![0, 1, 2],
        };
        inst.validate().unwrap();
        inst
    }

    #[test]
    fn best_scenario_single_scenario_is_row_knapsack() {
        let mut inst = uniform_instance();
        inst.eps = vec![rat_one()];
        inst.clicks.truncate(1);
        inst.real_costs.truncate(1);
        inst.validate().unwrap();
        let qip = to_qip(&inst);
        let sol = best_scenario_approx(&qip, Mode::Fractional).unwrap();
        // row: values (3,1,2), weights (3,2,10), cap 4 -> x = (1, 1/2, 0)
        assert_eq!(sol.total_payoff, ratio(7, 2));
        assert_eq!(sol.ratio_certificate, Some(ratio(7, 2)));
    }

    #[test]
    fn certificate_upper_bounds_identical_rows() {
        let mut inst = uniform_instance();
        inst.clicks[1] = inst.clicks[0].clone();
        inst.validate().unwrap();
        let qip = to_qip(&inst);
        let sol = best_scenario_approx(&qip, Mode::Fractional).unwrap();
        let cert = sol.ratio_certificate.clone().unwrap();
        // two identical rows: certificate is twice the single-row optimum,
        // and the derived solution recovers both scenarios' payoff, so the
        // certificate is tight here
        assert_eq!(cert, sol.total_payoff);
    }

    #[test]
    fn group_uniform_rejects_kappa() {
        let mut inst = uniform_instance();
        inst.kappa = 2;
        inst.validate().unwrap();
        let qip = to_qip(&inst);
        assert!(matches!(
            group_uniform_approx(&qip),
            Err(Error::KappaNotOne(2))
        ));
    }

    #[test]
    fn group_uniform_single_keyword_is_exact() {
        let mut inst = uniform_instance();
        inst.clicks = vec![vec![rat_int(3)], vec![rat_int(1)]];
        inst.base_costs = vec![rat_int(1)];
        inst.real_costs = vec![vec![rat_int(1)], vec![rat_int(1)]];
        inst.permutation = vec![0];
        inst.validate().unwrap();
        let qip = to_qip(&inst);
        let sol = group_uniform_approx(&qip).unwrap();
        // x = 1: scenario payoffs eps_i * a_i * min(1, B_i / w_i), under budget
        assert_eq!(sol.total_payoff, rat_int(2));
    }

    #[test]
    fn truncate_with_kappa_one_matches_grouping() {
        let inst = uniform_instance();
        let qip = to_qip(&inst);
        let grouped = group_uniform_approx(&qip).unwrap();
        let (truncated, scaled) = truncate_kappa_qip(&qip).unwrap();
        assert_eq!(grouped.total_payoff, truncated.total_payoff);
        assert_eq!(scaled, grouped.allocation.alpha);
    }

    #[test]
    fn solve_single_never_below_either_branch() {
        let inst = uniform_instance();
        let qip = to_qip(&inst);
        let combined = solve_single_qip(&qip, Mode::Fractional).unwrap();
        let a = best_scenario_approx(&qip, Mode::Fractional).unwrap();
        let (b, _) = truncate_kappa_qip(&qip).unwrap();
        assert!(combined.total_payoff >= a.total_payoff);
        assert!(combined.total_payoff >= b.total_payoff);
    }
}
