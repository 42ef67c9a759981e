//! Knapsack kernels behind the approximation algorithms: exact fractional
//! prefix knapsack, greedy 2-approximate 0/1 knapsack, and a 2-approximate
//! multiple-choice knapsack.

use crate::rational::{rat_one, rat_zero, Rat};
use num::Zero;

/// A single scenario row of a quadratic program, viewed as a knapsack:
/// item j has value `values[j]` and weight `unit_costs[j] * values[j]`.
/// Unit costs are non-decreasing, inherited from the d-sorted keywords.
#[derive(Debug, Clone)]
pub struct KnapsackRow {
    pub values: Vec<Rat>,
    pub unit_costs: Vec<Rat>,
    pub capacity: Rat,
}

impl KnapsackRow {
    pub fn weight(&self, j: usize) -> Rat {
        &self.values[j] * &self.unit_costs[j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Multiple-choice knapsack: n classes of (value, weight) items, at most one
/// item selectable per class.
#[derive(Debug, Clone)]
pub struct McKnapsack {
    pub classes: Vec<Vec<(Rat, Rat)>>,
    pub capacity: Rat,
}

/// Exact optimum of the fractional knapsack on a cost-sorted row: fill a
/// prefix of items, with at most one fractional coordinate at the boundary.
/// Since unit costs are non-decreasing, prefix order is payoff-per-spend
/// order, so the prefix solution is optimal.
pub fn frac_knapsack_prefix(row: &KnapsackRow) -> (Vec<Rat>, Rat) {
    let n = row.len();
    let mut x = vec![rat_zero(); n];
    let mut payoff = rat_zero();
    let mut remaining = row.capacity.clone();
    for j in 0..n {
        let w = row.weight(j);
        if w.is_zero() {
            // free item
            x[j] = rat_one();
            payoff += &row.values[j];
            continue;
        }
        if w <= remaining {
            x[j] = rat_one();
            payoff += &row.values[j];
            remaining -= &w;
        } else {
            if remaining.is_zero() {
                break;
            }
            let frac = &remaining / &w;
            payoff += &row.values[j] * &frac;
            x[j] = frac;
            break;
        }
    }
    (x, payoff)
}

/// Greedy 2-approximation for the 0/1 knapsack on a cost-sorted row: the
/// better of the integral greedy prefix and the best single feasible item.
/// Items too heavy to fit alone are dropped up front — they can appear in no
/// integral solution, and keeping one would end the greedy walk early and
/// break the factor-2 bound.
pub fn int_knapsack_2approx(row: &KnapsackRow) -> (Vec<Rat>, Rat) {
    let n = row.len();
    let mut prefix = vec![rat_zero(); n];
    let mut prefix_payoff = rat_zero();
    let mut remaining = row.capacity.clone();
    let mut best_single: Option<(usize, Rat)> = None;
    let mut blocked = false;
    for j in 0..n {
        let w = row.weight(j);
        if w > row.capacity {
            continue;
        }
        match &best_single {
            Some((_, v)) if *v >= row.values[j] => {}
            _ => best_single = Some((j, row.values[j].clone())),
        }
        if !blocked && w <= remaining {
            prefix[j] = rat_one();
            prefix_payoff += &row.values[j];
            remaining -= &w;
        } else {
            blocked = true;
        }
    }
    match best_single {
        Some((j, v)) if v > prefix_payoff => {
            let mut x = vec![rat_zero(); n];
            x[j] = rat_one();
            (x, v)
        }
        _ => (prefix, prefix_payoff),
    }
}

/// One incremental step along a class's efficiency frontier.
struct Increment {
    class: usize,
    item: usize,
    dv: Rat,
    dw: Rat,
}

/// Dominance-filtered efficiency frontier of one class, restricted to items
/// that fit the capacity alone. Returns (item index, value, weight) with
/// strictly increasing value and weight and decreasing incremental ratio.
fn class_frontier(items: &[(Rat, Rat)], capacity: &Rat) -> Vec<(usize, Rat, Rat)> {
    let mut usable: Vec<(usize, Rat, Rat)> = items
        .iter()
        .enumerate()
        .filter(|(_, (_, w))| w <= capacity)
        .map(|(idx, (v, w))| (idx, v.clone(), w.clone()))
        .collect();
    usable.sort_by(|a, b| a.2.cmp(&b.2).then(b.1.cmp(&a.1)).then(a.0.cmp(&b.0)));
    let mut frontier: Vec<(usize, Rat, Rat)> = Vec::new();
    for (idx, v, w) in usable {
        if let Some(last) = frontier.last() {
            if v <= last.1 {
                continue; // dominated: heavier, not more valuable
            }
        }
        // maintain concavity: incremental ratios must decrease
        while frontier.len() >= 2 {
            let a = &frontier[frontier.len() - 2];
            let b = &frontier[frontier.len() - 1];
            // ratio(b->new) >= ratio(a->b)  <=>  pop b
            let lhs = (&v - &b.1) * (&b.2 - &a.2);
            let rhs = (&b.1 - &a.1) * (&w - &b.2);
            if lhs >= rhs {
                frontier.pop();
            } else {
                break;
            }
        }
        if frontier.len() == 1 {
            let a = &frontier[0];
            // first hop from "nothing": keep concave vs (0,0) start
            let lhs = (&v - &a.1) * &a.2;
            let rhs = &a.1 * (&w - &a.2);
            if lhs >= rhs {
                frontier.pop();
            }
        }
        frontier.push((idx, v, w));
    }
    frontier
}

/// 2-approximation for the multiple-choice knapsack: greedy over the merged
/// per-class efficiency frontiers, compared against the best single feasible
/// item. Never exceeds capacity, never selects two items from one class.
pub fn mc_knapsack_approx(problem: &McKnapsack) -> (Vec<Option<usize>>, Rat) {
    let n = problem.classes.len();
    let mut selection: Vec<Option<usize>> = vec![None; n];
    let mut increments: Vec<Increment> = Vec::new();
    let mut best_single: Option<(usize, usize, Rat)> = None;
    for (ci, items) in problem.classes.iter().enumerate() {
        let frontier = class_frontier(items, &problem.capacity);
        let mut prev: Option<&(usize, Rat, Rat)> = None;
        for entry in &frontier {
            let (dv, dw) = match prev {
                None => (entry.1.clone(), entry.2.clone()),
                Some(p) => (&entry.1 - &p.1, &entry.2 - &p.2),
            };
            increments.push(Increment {
                class: ci,
                item: entry.0,
                dv,
                dw,
            });
            prev = Some(entry);
        }
        for (ii, (v, w)) in items.iter().enumerate() {
            if w <= &problem.capacity {
                match &best_single {
                    Some((_, _, bv)) if bv >= v => {}
                    _ => best_single = Some((ci, ii, v.clone())),
                }
            }
        }
    }
    // sort by incremental efficiency, ties broken by lower class then item
    // for determinism; within-class order is preserved because frontier
    // ratios strictly decrease.
    increments.sort_by(|a, b| {
        let lhs = &a.dv * &b.dw;
        let rhs = &b.dv * &a.dw;
        rhs.cmp(&lhs)
            .then(a.class.cmp(&b.class))
            .then(a.item.cmp(&b.item))
    });
    let mut remaining = problem.capacity.clone();
    let mut greedy_payoff = rat_zero();
    for inc in &increments {
        if inc.dw <= remaining {
            remaining -= &inc.dw;
            greedy_payoff += &inc.dv;
            selection[inc.class] = Some(inc.item);
        } else {
            break;
        }
    }
    match best_single {
        Some((ci, ii, v)) if v > greedy_payoff => {
            let mut single = vec![None; n];
            single[ci] = Some(ii);
            (single, v)
        }
        _ => (selection, greedy_payoff),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, ratio};
    use num::Zero;

    fn row(values: &[i64], costs: &[i64], cap: i64) -> KnapsackRow {
        KnapsackRow {
            values: values.iter().map(|&v| rat_int(v)).collect(),
            unit_costs: costs.iter().map(|&c| rat_int(c)).collect(),
            capacity: rat_int(cap),
        }
    }

    #[test]
    fn prefix_solution_matches_grid_oracle() {
        // weights: 4*1=4, 3*2=6; capacity 5 -> x = (1, 1/6), payoff 4.5
        let r = row(&[4, 3], &[1, 2], 5);
        let (x, payoff) = frac_knapsack_prefix(&r);
        assert_eq!(x, vec![rat_int(1), ratio(1, 6)]);
        assert_eq!(payoff, ratio(9, 2));
        // independent oracle: dense grid over [0,1]^2
        let mut best = rat_zero();
        for a in 0..=100i64 {
            for b in 0..=100i64 {
                let xa = ratio(a, 100);
                let xb = ratio(b, 100);
                let spend = &xa * rat_int(4) + &xb * rat_int(6);
                if spend <= rat_int(5) {
                    let val = &xa * rat_int(4) + &xb * rat_int(3);
                    if val > best {
                        best = val;
                    }
                }
            }
        }
        assert!(payoff >= best);
    }

    #[test]
    fn prefix_with_budget_slack_takes_everything() {
        let r = row(&[4, 3], &[1, 2], 100);
        let (x, payoff) = frac_knapsack_prefix(&r);
        assert_eq!(x, vec![rat_int(1), rat_int(1)]);
        assert_eq!(payoff, rat_int(7));
    }

    #[test]
    fn prefix_single_heavy_item() {
        let r = row(&[4], &[1], 1);
        let (x, payoff) = frac_knapsack_prefix(&r);
        assert_eq!(x, vec![ratio(1, 4)]);
        assert_eq!(payoff, rat_int(1));
    }

    fn exhaustive_01(r: &KnapsackRow) -> Rat {
        let n = r.len();
        let mut best = rat_zero();
        for mask in 0u32..(1 << n) {
            let mut weight = rat_zero();
            let mut value = rat_zero();
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    weight += r.weight(j);
                    value += &r.values[j];
                }
            }
            if weight <= r.capacity && value > best {
                best = value;
            }
        }
        best
    }

    #[test]
    fn int_2approx_on_spec_examples() {
        let r = row(&[4, 3], &[1, 2], 5);
        let (_, payoff) = int_knapsack_2approx(&r);
        assert_eq!(payoff, rat_int(4));
        assert_eq!(exhaustive_01(&r), rat_int(4));

        // all items fit
        let r = row(&[4, 3], &[1, 2], 100);
        let (x, payoff) = int_knapsack_2approx(&r);
        assert_eq!(payoff, rat_int(7));
        assert!(x.iter().all(|v| *v == rat_int(1)));

        // best single item beats the greedy prefix
        let r = row(&[1, 10], &[1, 1], 10);
        let (_, payoff) = int_knapsack_2approx(&r);
        assert_eq!(payoff, rat_int(10));
        assert_eq!(exhaustive_01(&r), rat_int(10));
    }

    #[test]
    fn int_2approx_holds_on_random_rows() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let mut costs: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
            costs.sort_unstable();
            let values: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=8)).collect();
            let cap = rng.gen_range(1..=30);
            let r = row(&values, &costs, cap);
            let (x, payoff) = int_knapsack_2approx(&r);
            let opt = exhaustive_01(&r);
            assert!(&payoff * rat_int(2) >= opt);
            // feasibility
            let spend: Rat = (0..r.len()).map(|j| &x[j] * r.weight(j)).sum();
            assert!(spend <= r.capacity);
        }
    }

    fn mc(classes: &[&[(i64, i64)]], cap: i64) -> McKnapsack {
        McKnapsack {
            classes: classes
                .iter()
                .map(|c| c.iter().map(|&(v, w)| (rat_int(v), rat_int(w))).collect())
                .collect(),
            capacity: rat_int(cap),
        }
    }

    fn mc_exhaustive(p: &McKnapsack) -> Rat {
        let n = p.classes.len();
        let mut best = rat_zero();
        let mut choice = vec![0usize; n];
        loop {
            let mut value = rat_zero();
            let mut weight = rat_zero();
            for (ci, &c) in choice.iter().enumerate() {
                if c > 0 {
                    let (v, w) = &p.classes[ci][c - 1];
                    value += v;
                    weight += w;
                }
            }
            if weight <= p.capacity && value > best {
                best = value;
            }
            let mut ci = 0;
            loop {
                if ci == n {
                    return best;
                }
                choice[ci] += 1;
                if choice[ci] <= p.classes[ci].len() {
                    break;
                }
                choice[ci] = 0;
                ci += 1;
            }
        }
    }

    #[test]
    fn mc_single_class_takes_max_value() {
        let p = mc(&[&[(3, 1), (5, 2), (4, 2)]], 10);
        let (sel, payoff) = mc_knapsack_approx(&p);
        assert_eq!(payoff, rat_int(5));
        assert_eq!(sel, vec![Some(1)]);
    }

    #[test]
    fn mc_respects_capacity_and_classes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let n = rng.gen_range(1..=3);
            let s = rng.gen_range(1..=3);
            let classes: Vec<Vec<(Rat, Rat)>> = (0..n)
                .map(|_| {
                    (0..s)
                        .map(|_| (rat_int(rng.gen_range(0..=8)), rat_int(rng.gen_range(1..=8))))
                        .collect()
                })
                .collect();
            let p = McKnapsack {
                classes,
                capacity: rat_int(rng.gen_range(1..=12)),
            };
            let (sel, payoff) = mc_knapsack_approx(&p);
            let mut weight = rat_zero();
            let mut value = rat_zero();
            for (ci, choice) in sel.iter().enumerate() {
                if let Some(ii) = choice {
                    value += &p.classes[ci][*ii].0;
                    weight += &p.classes[ci][*ii].1;
                }
            }
            assert!(weight <= p.capacity);
            assert_eq!(value, payoff);
            let opt = mc_exhaustive(&p);
            assert!(&payoff * rat_int(2) >= opt, "payoff {payoff} opt {opt}");
        }
    }
}
