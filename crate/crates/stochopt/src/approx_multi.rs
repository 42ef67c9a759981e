//! Multi-slot approximation algorithms: per-scenario multiple-choice
//! knapsack, flattening slots into a single-slot program with slot
//! normalization, and randomized rounding of fractional solutions.

use crate::approx_single::{solve_single_qip, Mode};
use crate::error::{Error, Result};
use crate::knapsack::{mc_knapsack_approx, McKnapsack};
use crate::model::{qip_payoff, to_qip_multi, MultiSlotInstance, QipInstance, Solution};
use crate::rational::{rat_from_f64, rat_max, rat_min, rat_one, rat_uint, rat_zero, Rat};
use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RoundingConfig {
    pub seed: u64,
    /// Constant in the alpha scale-down `1 / (scale_constant * ln ...)`.
    /// 100 matches the analysis constant; lower values are usable in
    /// practice.
    pub scale_constant: Rat,
    pub max_retries: usize,
}

impl Default for RoundingConfig {
    fn default() -> Self {
        RoundingConfig {
            seed: 0,
            scale_constant: rat_uint(100),
            max_retries: 16,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RoundingOutcome {
    pub solution: Solution,
    /// The prescribed scaled alpha vector `alpha_f / (scale * ln ...)`.
    pub scaled_alpha: Vec<Rat>,
    /// Whether some retry sample satisfied all budget constraints under the
    /// scaled alpha without the deterministic fallback.
    pub feasible_before_fallback: bool,
    pub retries_used: usize,
    /// Objective `sum_i alpha_f_i sum_jk y * round(x)` of the first sample,
    /// before slot de-duplication and alpha scaling. Unbiased across seeds.
    pub first_sample_objective: Rat,
}

/// For each scenario, optimize the scaling variable over candidate tight
/// points and solve the induced multiple-choice knapsack; the best scenario
/// wins. Factor 2m * c0 with the MCKP constant c0 = 2.
pub fn per_scenario_multi_approx(qip: &QipInstance) -> Result<Solution> {
    let n = qip.n();
    let s = qip.slots;
    let m = qip.m();
    let mut best: Option<(Rat, Vec<Vec<Rat>>)> = None;
    for i in 0..m {
        // candidate alphas: 1, plus B_i / w for every item too heavy to fit
        // at alpha = 1 (tight single-item points)
        let mut candidates: Vec<Rat> = vec![rat_one()];
        for j in 0..n {
            for k in 0..s {
                let w = &qip.w[i][j][k];
                if w.is_positive() && *w > qip.budgets[i] {
                    candidates.push(&qip.budgets[i] / w);
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for alpha in candidates {
            let capacity = &qip.budgets[i] / &alpha;
            let problem = McKnapsack {
                classes: (0..n)
                    .map(|j| {
                        (0..s)
                            .map(|k| (qip.y[i][j][k].clone(), qip.w[i][j][k].clone()))
                            .collect()
                    })
                    .collect(),
                capacity,
            };
            let (selection, payoff) = mc_knapsack_approx(&problem);
            let value = &alpha * &payoff;
            let is_better = match &best {
                None => true,
                Some((v, _)) => value > *v,
            };
            if is_better {
                let mut x = vec![vec![rat_zero(); s]; n];
                for (j, choice) in selection.iter().enumerate() {
                    if let Some(k) = choice {
                        x[j][*k] = rat_one();
                    }
                }
                best = Some((value, x));
            }
        }
    }
    let (_, x) = best.expect("validated program has at least one scenario");
    let mut solution = qip_payoff(qip, &x)?;
    solution.algorithm = "per-scenario-mckp".into();
    solution.ratio_certificate = Some(&solution.total_payoff * rat_uint(4 * m as u64));
    Ok(solution)
}

/// View the sn (keyword, slot) pairs as one single-slot program, sorted by
/// base cost. Returns the flat program and the map from flat column to
/// (keyword, slot).
fn flatten(qip: &QipInstance) -> (QipInstance, Vec<(usize, usize)>) {
    let n = qip.n();
    let s = qip.slots;
    let m = qip.m();
    let mut cols: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..s).map(move |k| (j, k)))
        .collect();
    cols.sort_by(|a, b| {
        qip.base_costs[a.0][a.1]
            .cmp(&qip.base_costs[b.0][b.1])
            .then(a.cmp(b))
    });
    let flat = QipInstance {
        slots: 1,
        y: (0..m)
            .map(|i| cols.iter().map(|&(j, k)| vec![qip.y[i][j][k].clone()]).collect())
            .collect(),
        w: (0..m)
            .map(|i| cols.iter().map(|&(j, k)| vec![qip.w[i][j][k].clone()]).collect())
            .collect(),
        costs: (0..m)
            .map(|i| {
                cols.iter()
                    .map(|&(j, k)| vec![qip.costs[i][j][k].clone()])
                    .collect()
            })
            .collect(),
        base_costs: cols
            .iter()
            .map(|&(j, k)| vec![qip.base_costs[j][k].clone()])
            .collect(),
        budgets: qip.budgets.clone(),
        kappa: qip.kappa,
    };
    (flat, cols)
}

/// Drop the slot constraints, solve the flat single-slot program
/// fractionally, then restore feasibility by dividing each keyword's slot
/// values by max(1, sum of its slot values).
pub fn flatten_and_normalize(qip: &QipInstance) -> Result<Solution> {
    let (flat, cols) = flatten(qip);
    let flat_solution = solve_single_qip(&flat, Mode::Fractional)?;
    let n = qip.n();
    let s = qip.slots;
    let mut x = vec![vec![rat_zero(); s]; n];
    for (col, &(j, k)) in cols.iter().enumerate() {
        x[j][k] = flat_solution.allocation.x[col][0].clone();
    }
    for kw in x.iter_mut() {
        let sum: Rat = kw.iter().cloned().sum();
        if sum > rat_one() {
            for v in kw.iter_mut() {
                *v /= &sum;
            }
        }
    }
    let mut solution = qip_payoff(qip, &x)?;
    solution.algorithm = "flatten-normalize".into();
    // the flat program's certificate bounds the relaxed optimum, which
    // bounds OPT of the slot-constrained program
    solution.ratio_certificate = flat_solution.ratio_certificate;
    Ok(solution)
}

/// Divisor for the rounding alpha: scale_constant * ln(m) for one slot,
/// scale_constant * ln(m + n) otherwise, floored at 1.
fn alpha_divisor(qip: &QipInstance, config: &RoundingConfig) -> Rat {
    let arg = if qip.slots == 1 {
        qip.m() as f64
    } else {
        (qip.m() + qip.n()) as f64
    };
    let ln = rat_from_f64(arg.ln()).unwrap_or_else(rat_zero);
    rat_max(rat_one(), &config.scale_constant * ln)
}

/// Exact-threshold Bernoulli(p) draw from 53 random bits.
fn bernoulli(rng: &mut ChaCha8Rng, p: &Rat) -> bool {
    if p.is_zero() {
        return false;
    }
    if p.is_one() {
        return true;
    }
    let bits: u64 = rng.gen::<u64>() >> 11;
    let threshold = Rat::new(bits.into(), (1u64 << 53).into());
    threshold < *p
}

fn scaled_feasible(qip: &QipInstance, x: &[Vec<Rat>], alpha: &[Rat]) -> bool {
    for i in 0..qip.m() {
        let mut spend = rat_zero();
        for j in 0..qip.n() {
            for k in 0..qip.slots {
                if !x[j][k].is_zero() {
                    spend += &qip.w[i][j][k] * &x[j][k];
                }
            }
        }
        if &alpha[i] * spend > qip.budgets[i] {
            return false;
        }
    }
    true
}

/// Round a fractional solution to an integral one: each coordinate becomes 1
/// with probability x_f, one slot per keyword is kept (the one with the
/// largest alpha-weighted value), and alpha is scaled down by
/// `scale_constant * ln(...)`. Deterministic given the seed. If no retry
/// sample is feasible under the scaled alpha, selected slots are dropped in
/// ascending value order until it is.
pub fn randomized_round(
    fractional: &Solution,
    qip: &QipInstance,
    config: &RoundingConfig,
) -> Result<RoundingOutcome> {
    let n = qip.n();
    let s = qip.slots;
    let m = qip.m();
    if fractional.allocation.x.len() != n || fractional.allocation.alpha.len() != m {
        return Err(Error::DimensionMismatch(
            "fractional solution does not match the program".into(),
        ));
    }
    let divisor = alpha_divisor(qip, config);
    let alpha_f = &fractional.allocation.alpha;
    let scaled_alpha: Vec<Rat> = alpha_f.iter().map(|a| a / &divisor).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut first_sample_objective: Option<Rat> = None;
    let mut feasible_x: Option<Vec<Vec<Rat>>> = None;
    let mut last_x: Option<Vec<Vec<Rat>>> = None;
    let mut retries_used = 0;
    for attempt in 0..config.max_retries {
        let mut raw = vec![vec![false; s]; n];
        for j in 0..n {
            for k in 0..s {
                raw[j][k] = bernoulli(&mut rng, &fractional.allocation.x[j][k]);
            }
        }
        if first_sample_objective.is_none() {
            let mut obj = rat_zero();
            for i in 0..m {
                for j in 0..n {
                    for k in 0..s {
                        if raw[j][k] {
                            obj += &alpha_f[i] * &qip.y[i][j][k];
                        }
                    }
                }
            }
            first_sample_objective = Some(obj);
        }
        // keep one slot per keyword: the one with the largest
        // alpha-weighted value among the rounded-up slots
        let mut x = vec![vec![rat_zero(); s]; n];
        for j in 0..n {
            let mut best_slot: Option<(usize, Rat)> = None;
            for k in 0..s {
                if !raw[j][k] {
                    continue;
                }
                let weighted: Rat = (0..m).map(|i| &alpha_f[i] * &qip.y[i][j][k]).sum();
                match &best_slot {
                    Some((_, w)) if *w >= weighted => {}
                    _ => best_slot = Some((k, weighted)),
                }
            }
            if let Some((k, _)) = best_slot {
                x[j][k] = rat_one();
            }
        }
        retries_used = attempt + 1;
        if scaled_feasible(qip, &x, &scaled_alpha) {
            feasible_x = Some(x);
            break;
        }
        last_x = Some(x);
    }
    let feasible_before_fallback = feasible_x.is_some();
    let x = match feasible_x {
        Some(x) => x,
        None => {
            // deterministic fallback: drop selected slots, least valuable
            // first, until the scaled alpha fits the budgets
            let mut x = last_x.ok_or(Error::RoundingFailed)?;
            let mut selected: Vec<(Rat, usize, usize)> = Vec::new();
            for j in 0..n {
                for k in 0..s {
                    if !x[j][k].is_zero() {
                        let weighted: Rat = (0..m).map(|i| &alpha_f[i] * &qip.y[i][j][k]).sum();
                        selected.push((weighted, j, k));
                    }
                }
            }
            selected.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
            let mut idx = 0;
            while !scaled_feasible(qip, &x, &scaled_alpha) {
                if idx >= selected.len() {
                    return Err(Error::RoundingFailed);
                }
                let (_, j, k) = &selected[idx];
                x[*j][*k] = rat_zero();
                idx += 1;
            }
            x
        }
    };
    let mut solution = qip_payoff(qip, &x)?;
    solution.algorithm = "randomized-round".into();
    Ok(RoundingOutcome {
        solution,
        scaled_alpha,
        feasible_before_fallback,
        retries_used,
        first_sample_objective: first_sample_objective.unwrap_or_else(rat_zero),
    })
}

/// Combined multi-slot solver. Fractional mode: best of the per-scenario
/// branch and flattening. Integral mode: best of the per-scenario branch and
/// rounding the flattened solution.
pub fn solve_multi(
    instance: &MultiSlotInstance,
    mode: Mode,
    config: &RoundingConfig,
) -> Result<Solution> {
    let qip = to_qip_multi(instance);
    solve_multi_qip(&qip, mode, config)
}

pub fn solve_multi_qip(qip: &QipInstance, mode: Mode, config: &RoundingConfig) -> Result<Solution> {
    let scenario_branch = per_scenario_multi_approx(qip)?;
    let flat_branch = flatten_and_normalize(qip)?;
    let other = match mode {
        Mode::Fractional => flat_branch,
        Mode::Integral => {
            if flat_branch.allocation.integral {
                flat_branch
            } else {
                randomized_round(&flat_branch, qip, config)?.solution
            }
        }
    };
    let mut winner = if scenario_branch.total_payoff >= other.total_payoff {
        scenario_branch.clone()
    } else {
        other.clone()
    };
    winner.ratio_certificate = match (scenario_branch.ratio_certificate, other.ratio_certificate) {
        (Some(a), Some(b)) => Some(rat_min(a, b)),
        (a, b) => a.or(b),
    };
    Ok(winner)
}
