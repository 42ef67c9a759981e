//! Scaled-integer fast path for the combined single-slot solver.
//!
//! Row scans dominate the solver's runtime, and doing them in exact rational
//! arithmetic costs a gcd-normalizing allocation per operation. Within one
//! scenario every quantity shares a denominator, so the scans can run on
//! `u128` numerators: additions and comparisons of machine integers instead
//! of rationals. Rationals are only materialized at the O(m + n) boundary
//! (alphas, per-scenario payoffs, the winning allocation), which makes the
//! results bit-identical to the rational implementation in `approx_single`.
//!
//! Every operation is overflow-checked; any overflow (or an instance whose
//! numerators do not fit) aborts the fast path with `None` and the caller
//! falls back to the rational implementation.

use crate::approx_single::{partition_groups, Mode};
use crate::model::{Allocation, SingleSlotInstance, Solution};
use crate::rational::{rat_one, rat_uint, rat_zero, Rat};
use num::{BigInt, Integer, ToPrimitive};

/// One scenario, scaled to integers:
/// - `y[j] / dy` is the scenario's expected click count of keyword j,
/// - `c[j] / dc` its cost-per-click, so `wc[j] = y[j] * c[j]` is the spend
///   numerator over `dy * dc`,
/// - `dn[j] * y[j]` (with `dn` shared across scenarios) is the base-cost
///   spend numerator over `dd * dy`.
///
/// A spend sum `s` fits the scenario budget iff `s * ls <= t` (real costs)
/// or `s * ls <= tb` (base costs).
struct Scenario {
    y: Vec<u128>,
    c: Vec<u128>,
    wc: Vec<u128>,
    dw: Vec<u128>,
    dy: u128,
    ls: u128,
    t: u128,
    tb: u128,
}

struct Scaled {
    scen: Vec<Scenario>,
}

fn parts(r: &Rat) -> Option<(u128, u128)> {
    Some((r.numer().to_u128()?, r.denom().to_u128()?))
}

fn checked_lcm(a: u128, b: u128) -> Option<u128> {
    (a / a.gcd(&b)).checked_mul(b)
}

/// Numerators of `values` over their least common denominator.
fn common_denominator(values: &[(u128, u128)]) -> Option<(Vec<u128>, u128)> {
    let mut den = 1u128;
    for &(_, d) in values {
        den = checked_lcm(den, d)?;
    }
    let nums = values
        .iter()
        .map(|&(n, d)| n.checked_mul(den / d))
        .collect::<Option<Vec<u128>>>()?;
    Some((nums, den))
}

fn scale(instance: &SingleSlotInstance) -> Option<Scaled> {
    let n = instance.n();
    let m = instance.m();
    if n == 0
        || m == 0
        || instance.eps.len() != m
        || instance.clicks.len() != m
        || instance.real_costs.len() != m
        || instance.base_costs.len() != n
        || instance.clicks.iter().any(|row| row.len() != n)
        || instance.real_costs.iter().any(|row| row.len() != n)
    {
        return None;
    }
    let (bn, bd) = parts(&instance.budget)?;
    if bn == 0 {
        return None;
    }
    let d_parts = instance
        .base_costs
        .iter()
        .map(parts)
        .collect::<Option<Vec<_>>>()?;
    let (dn, dd) = common_denominator(&d_parts)?;
    let mut scen = Vec::with_capacity(m);
    for i in 0..m {
        let (pe, qe) = parts(&instance.eps[i])?;
        let a_parts = instance.clicks[i]
            .iter()
            .map(parts)
            .collect::<Option<Vec<_>>>()?;
        let (a, da) = common_denominator(&a_parts)?;
        let c_parts = instance.real_costs[i]
            .iter()
            .map(parts)
            .collect::<Option<Vec<_>>>()?;
        let (c, dc) = common_denominator(&c_parts)?;
        let dy = qe.checked_mul(da)?;
        let mut y = Vec::with_capacity(n);
        let mut wc = Vec::with_capacity(n);
        let mut dw = Vec::with_capacity(n);
        for j in 0..n {
            let yj = pe.checked_mul(a[j])?;
            wc.push(yj.checked_mul(c[j])?);
            dw.push(yj.checked_mul(dn[j])?);
            y.push(yj);
        }
        let ls = qe.checked_mul(bd)?;
        let t = pe.checked_mul(bn)?.checked_mul(dy)?.checked_mul(dc)?;
        let tb = pe.checked_mul(bn)?.checked_mul(dd)?.checked_mul(dy)?;
        scen.push(Scenario {
            y,
            c,
            wc,
            dw,
            dy,
            ls,
            t,
            tb,
        });
    }
    Some(Scaled { scen })
}

fn rat(num: u128, den: u128) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Pairwise summation. Summing m terms with pairwise-coprime denominators
/// left to right makes every partial sum carry the full common denominator,
/// which is quadratic in m; the balanced tree does the same exact sum with
/// logarithmically many large additions.
fn balanced_sum(mut terms: Vec<Rat>) -> Rat {
    if terms.is_empty() {
        return rat_zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len() / 2 + 1);
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().expect("nonempty")
}

/// min(1, num/den) with the zero-spend convention alpha = 1.
fn capped_alpha(num: u128, den: u128) -> Rat {
    if den == 0 || num >= den {
        rat_one()
    } else {
        rat(num, den)
    }
}

/// The winning allocation of a scenario row, in sorted-item positions.
enum RowPick {
    /// Fractional prefix: rebuilt by re-walking the row.
    FracWalk,
    /// Integral greedy prefix: rebuilt by re-walking the row.
    IntPrefix,
    /// A single item at the given sorted position.
    Single(usize),
}

/// Keyword indices of scenario i with nonzero clicks, cost-sorted
/// (ties by index), mirroring the row construction of the rational solver.
fn sorted_items(s: &Scenario) -> Vec<usize> {
    let mut items: Vec<usize> = (0..s.y.len()).filter(|&j| s.y[j] != 0).collect();
    items.sort_unstable_by_key(|&j| (s.c[j], j));
    items
}

/// Fractional prefix walk. Returns the prefix length, its value and weight
/// numerators, and the fractional boundary item as (position, theta
/// numerator, theta denominator).
#[allow(clippy::type_complexity)]
fn frac_walk(
    s: &Scenario,
    items: &[usize],
) -> Option<(usize, u128, u128, Option<(usize, u128, u128)>)> {
    let mut taken = 0usize;
    let mut vy = 0u128;
    let mut sw = 0u128;
    for (pos, &j) in items.iter().enumerate() {
        let wcj = s.wc[j];
        if wcj == 0 {
            vy = vy.checked_add(s.y[j])?;
            taken = pos + 1;
            continue;
        }
        let s2 = sw.checked_add(wcj)?;
        if s2.checked_mul(s.ls)? <= s.t {
            sw = s2;
            vy = vy.checked_add(s.y[j])?;
            taken = pos + 1;
        } else {
            let rem = s.t - sw.checked_mul(s.ls)?;
            if rem == 0 {
                break;
            }
            return Some((taken, vy, sw, Some((pos, rem, wcj.checked_mul(s.ls)?))));
        }
    }
    Some((taken, vy, sw, None))
}

/// Integral greedy prefix + best-single walk of `int_knapsack_2approx`.
/// Returns the row payoff numerator over `dy` and the pick.
fn int_walk(s: &Scenario, items: &[usize]) -> Option<(u128, RowPick)> {
    let mut sw = 0u128;
    let mut prefix_vy = 0u128;
    let mut blocked = false;
    let mut best_single: Option<(usize, u128)> = None;
    for (pos, &j) in items.iter().enumerate() {
        let wcj = s.wc[j];
        if wcj.checked_mul(s.ls)? > s.t {
            continue;
        }
        match best_single {
            Some((_, v)) if v >= s.y[j] => {}
            _ => best_single = Some((pos, s.y[j])),
        }
        if !blocked {
            let s2 = sw.checked_add(wcj)?;
            if s2.checked_mul(s.ls)? <= s.t {
                sw = s2;
                prefix_vy = prefix_vy.checked_add(s.y[j])?;
                continue;
            }
            blocked = true;
        }
    }
    Some(match best_single {
        Some((pos, v)) if v > prefix_vy => (v, RowPick::Single(pos)),
        _ => (prefix_vy, RowPick::IntPrefix),
    })
}

/// The winning allocation as a set of fully taken keyword indices plus an
/// optional fractional coordinate (index, theta numerator, theta
/// denominator).
struct Picked {
    full: Vec<usize>,
    frac: Option<(usize, u128, u128)>,
}

/// Derived payoff of an allocation across all scenarios — the integer-domain
/// equivalent of `qip_payoff`.
fn evaluate(sc: &Scaled, n: usize, picked: &Picked) -> Option<Solution> {
    let (td, frac_entry) = match picked.frac {
        Some((j, tn, td)) => (td, Some((j, tn))),
        None => (1u128, None),
    };
    let m = sc.scen.len();
    let mut alpha = Vec::with_capacity(m);
    let mut per_scenario = Vec::with_capacity(m);
    for s in &sc.scen {
        let mut spend = 0u128;
        let mut value = 0u128;
        for &j in &picked.full {
            spend = spend.checked_add(s.wc[j])?;
            value = value.checked_add(s.y[j])?;
        }
        let mut spend = spend.checked_mul(td)?;
        let mut value = value.checked_mul(td)?;
        if let Some((j, tn)) = frac_entry {
            spend = spend.checked_add(s.wc[j].checked_mul(tn)?)?;
            value = value.checked_add(s.y[j].checked_mul(tn)?)?;
        }
        let a = capped_alpha(s.t.checked_mul(td)?, s.ls.checked_mul(spend)?);
        let payoff = &a * rat(value, s.dy.checked_mul(td)?);
        alpha.push(a);
        per_scenario.push(payoff);
    }
    let total = balanced_sum(per_scenario.clone());
    let mut x = vec![vec![rat_zero()]; n];
    for &j in &picked.full {
        x[j][0] = rat_one();
    }
    if let Some((j, tn, td)) = picked.frac {
        x[j][0] = rat(tn, td);
    }
    Some(Solution {
        allocation: Allocation {
            integral: picked.frac.is_none(),
            x,
            alpha,
        },
        total_payoff: total,
        per_scenario_payoff: per_scenario,
        algorithm: String::new(),
        ratio_certificate: None,
    })
}

/// Per-scenario knapsack, best scenario wins; integer-domain equivalent of
/// `best_scenario_approx` including the certificate.
fn best_scenario(sc: &Scaled, n: usize, mode: Mode) -> Option<Solution> {
    let mut row_optima = Vec::with_capacity(sc.scen.len());
    let mut best: Option<(Rat, usize, RowPick)> = None;
    for (i, s) in sc.scen.iter().enumerate() {
        let items = sorted_items(s);
        let (_, vy, _, boundary) = frac_walk(s, &items)?;
        let frac_payoff = match boundary {
            None => rat(vy, s.dy),
            Some((pos, rem, theta_den)) => {
                let num = vy
                    .checked_mul(theta_den)?
                    .checked_add(rem.checked_mul(s.y[items[pos]])?)?;
                rat(num, s.dy.checked_mul(theta_den)?)
            }
        };
        row_optima.push(frac_payoff.clone());
        let (row_payoff, pick) = match mode {
            Mode::Fractional => (frac_payoff, RowPick::FracWalk),
            Mode::Integral => {
                let (int_vy, int_pick) = int_walk(s, &items)?;
                // soft-budget single-item candidates: an oversized item pays
                // value * B / w alone
                let mut payoff = (int_vy, s.dy);
                let mut pick = int_pick;
                for (pos, &j) in items.iter().enumerate() {
                    // y/dy <= payoff caps the soft value: skip early
                    if s.y[j].checked_mul(payoff.1)? <= payoff.0.checked_mul(s.dy)? {
                        continue;
                    }
                    let w_scaled = s.wc[j].checked_mul(s.ls)?;
                    let soft = if w_scaled <= s.t {
                        (s.y[j], s.dy)
                    } else {
                        (
                            s.y[j].checked_mul(s.t)?,
                            s.dy.checked_mul(w_scaled)?,
                        )
                    };
                    if soft.0.checked_mul(payoff.1)? > payoff.0.checked_mul(soft.1)? {
                        payoff = soft;
                        pick = RowPick::Single(pos);
                    }
                }
                (rat(payoff.0, payoff.1), pick)
            }
        };
        let is_better = match &best {
            None => true,
            Some((p, _, _)) => row_payoff > *p,
        };
        if is_better {
            best = Some((row_payoff, i, pick));
        }
    }
    let (_, i, pick) = best?;
    let s = &sc.scen[i];
    let items = sorted_items(s);
    let picked = match pick {
        RowPick::Single(pos) => Picked {
            full: vec![items[pos]],
            frac: None,
        },
        RowPick::FracWalk => {
            let (taken, _, _, boundary) = frac_walk(s, &items)?;
            Picked {
                full: items[..taken].to_vec(),
                frac: boundary.map(|(pos, tn, td)| (items[pos], tn, td)),
            }
        }
        RowPick::IntPrefix => {
            let mut full = Vec::new();
            let mut sw = 0u128;
            for &j in &items {
                let wcj = s.wc[j];
                if wcj.checked_mul(s.ls)? > s.t {
                    continue;
                }
                let s2 = sw.checked_add(wcj)?;
                if s2.checked_mul(s.ls)? <= s.t {
                    sw = s2;
                    full.push(j);
                } else {
                    break;
                }
            }
            Picked { full, frac: None }
        }
    };
    let mut solution = evaluate(sc, n, &picked)?;
    solution.algorithm = match mode {
        Mode::Fractional => "best-scenario-frac".into(),
        Mode::Integral => "best-scenario-int".into(),
    };
    solution.ratio_certificate = Some(balanced_sum(row_optima));
    Some(solution)
}

/// Truncation branch: grouping on base costs, payoff re-derived on real
/// costs; integer-domain equivalent of `truncate_kappa_qip`.
fn truncate(sc: &Scaled, instance: &SingleSlotInstance) -> Option<Solution> {
    let groups = partition_groups(&instance.base_costs);
    let mut best: Option<(Rat, (usize, usize))> = None;
    for g in &groups {
        let mut terms = Vec::with_capacity(sc.scen.len());
        for s in &sc.scen {
            let mut spend = 0u128;
            let mut value = 0u128;
            for j in g.range.0..=g.range.1 {
                spend = spend.checked_add(s.dw[j])?;
                value = value.checked_add(s.y[j])?;
            }
            let a = capped_alpha(s.tb, s.ls.checked_mul(spend)?);
            terms.push(a * rat(value, s.dy));
        }
        let total = balanced_sum(terms);
        let is_better = match &best {
            None => true,
            Some((p, _)) => total > *p,
        };
        if is_better {
            best = Some((total, g.range));
        }
    }
    let (_, range) = best?;
    let picked = Picked {
        full: (range.0..=range.1).collect(),
        frac: None,
    };
    let mut solution = evaluate(sc, instance.n(), &picked)?;
    solution.algorithm = "truncate-kappa".into();
    let factor = rat_uint(2 * instance.kappa * groups.len() as u64);
    solution.ratio_certificate = Some(&solution.total_payoff * &factor);
    Some(solution)
}

/// Combined solver on the scaled representation; `None` means the instance
/// does not fit (or an intermediate product overflowed) and the caller must
/// use the rational path. On success the result is identical to
/// `solve_single_qip(to_qip(instance), mode)`.
pub(crate) fn solve_single_fast(instance: &SingleSlotInstance, mode: Mode) -> Option<Solution> {
    let sc = scale(instance)?;
    let scenario_branch = best_scenario(&sc, instance.n(), mode)?;
    let group_branch = truncate(&sc, instance)?;
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
    Some(winner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx_single::solve_single_qip;
    use crate::hardgen::{random_instance, RandomParams};
    use crate::model::to_qip;

    #[test]
    fn fast_path_matches_rational_path() {
        for seed in 0..200u64 {
            let params = RandomParams {
                n: 1 + (seed % 7) as usize,
                m: 1 + ((seed / 7) % 5) as usize,
                kappa: 1 + seed % 3,
                seed,
                ..Default::default()
            };
            let instance = random_instance(&params).unwrap();
            let qip = to_qip(&instance);
            for mode in [Mode::Fractional, Mode::Integral] {
                let fast = solve_single_fast(&instance, mode)
                    .expect("small random instances fit the fast path");
                let slow = solve_single_qip(&qip, mode).unwrap();
                assert_eq!(fast, slow, "seed {seed} mode {mode:?}");
            }
        }
    }

    #[test]
    fn oversized_numerators_fall_back() {
        let mut instance = random_instance(&RandomParams::default()).unwrap();
        instance.budget = rat_uint(u64::MAX) * rat_uint(u64::MAX) * rat_uint(u64::MAX);
        assert!(solve_single_fast(&instance, Mode::Integral).is_none());
    }
}
