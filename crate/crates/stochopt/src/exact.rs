//! Ground-truth oracles and special-case exact solvers: exhaustive integral
//! enumeration, a fractional grid oracle (a certified lower bound), the
//! alpha-grid + LP solver, and a budget-lattice dynamic program for fixed
//! alpha.

use crate::error::{Error, Result};
use crate::lp::{lp_solve, LinearProgram};
use crate::model::{qip_payoff, QipInstance, Solution};
use crate::rational::{rat_one, rat_zero, Rat};
use num::{BigInt, One, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Fractional grid resolution: x coordinates range over {0, 1/g, .., 1}.
    pub grid_steps: u64,
    /// Absolute-error target for the alpha-grid solvers.
    pub delta: Rat,
    /// Cap on enumerated states; enumeration beyond this returns TooLarge.
    pub max_enumeration: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid_steps: 16,
            delta: Rat::new(BigInt::one(), BigInt::from(100)),
            max_enumeration: 1 << 20,
        }
    }
}

fn finish(qip: &QipInstance, x: Vec<Vec<Rat>>, algorithm: &str) -> Result<Solution> {
    let mut solution = qip_payoff(qip, &x)?;
    solution.algorithm = algorithm.into();
    Ok(solution)
}

/// Exact integral optimum by enumerating all `(s+1)^n` keyword-to-slot
/// assignments. Ties broken toward the lexicographically smallest x.
pub fn brute_int_oracle(qip: &QipInstance, config: &OracleConfig) -> Result<Solution> {
    let n = qip.n();
    let s = qip.slots;
    let states = (s as u128 + 1)
        .checked_pow(n as u32)
        .filter(|&c| c <= config.max_enumeration as u128)
        .ok_or(Error::TooLarge {
            states: format!("({}+1)^{}", s, n),
            cap: config.max_enumeration,
        })?;
    let _ = states;
    let m = qip.m();
    // choice[j] in 0..=s, 0 = no slot; iterate in lexicographic x order so
    // the first optimum found is the lex-smallest one
    let mut choice = vec![0usize; n];
    let mut best_value: Option<Rat> = None;
    let mut best_choice = choice.clone();
    loop {
        let mut total = rat_zero();
        for i in 0..m {
            let mut spend = rat_zero();
            let mut value = rat_zero();
            for (j, &c) in choice.iter().enumerate() {
                if c > 0 {
                    spend += &qip.w[i][j][c - 1];
                    value += &qip.y[i][j][c - 1];
                }
            }
            if value.is_zero() {
                continue;
            }
            if spend <= qip.budgets[i] {
                total += value;
            } else {
                total += &qip.budgets[i] / &spend * value;
            }
        }
        if best_value.as_ref().map_or(true, |b| total > *b) {
            best_value = Some(total);
            best_choice = choice.clone();
        }
        let mut j = n;
        loop {
            if j == 0 {
                let mut x = vec![vec![rat_zero(); s]; n];
                for (j, &c) in best_choice.iter().enumerate() {
                    if c > 0 {
                        x[j][c - 1] = rat_one();
                    }
                }
                return finish(qip, x, "brute-int-oracle");
            }
            j -= 1;
            choice[j] += 1;
            if choice[j] <= s {
                break;
            }
            choice[j] = 0;
        }
    }
}

/// Named Lemma-10(c) entry point: keyword-to-slot assignment enumeration.
/// Shares the implementation with [`brute_int_oracle`].
pub fn enumerate_assignments(qip: &QipInstance, config: &OracleConfig) -> Result<Solution> {
    let mut solution = brute_int_oracle(qip, config)?;
    solution.algorithm = "enumerate-assignments".into();
    Ok(solution)
}

/// Per-keyword slot vectors on the grid {0, 1/g, .., 1}^s with sum <= 1.
fn grid_slot_vectors(s: usize, g: u64) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    let mut current = vec![0u64; s];
    loop {
        if current.iter().sum::<u64>() <= g {
            out.push(
                current
                    .iter()
                    .map(|&v| Rat::new(BigInt::from(v), BigInt::from(g)))
                    .collect(),
            );
        }
        let mut k = s;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            current[k] += 1;
            if current[k] <= g {
                break;
            }
            current[k] = 0;
        }
    }
}

/// Best payoff over the fractional grid. This is a certified LOWER bound on
/// the fractional optimum, not an upper bound.
pub fn frac_grid_oracle(qip: &QipInstance, config: &OracleConfig) -> Result<Solution> {
    let n = qip.n();
    let s = qip.slots;
    let m = qip.m();
    let vectors = grid_slot_vectors(s, config.grid_steps);
    let per_keyword = vectors.len() as u128;
    per_keyword
        .checked_pow(n as u32)
        .filter(|&c| c <= config.max_enumeration as u128)
        .ok_or(Error::TooLarge {
            states: format!("{per_keyword}^{n}"),
            cap: config.max_enumeration,
        })?;
    // recursive enumeration with running per-scenario spend/value sums
    struct Ctx<'a> {
        qip: &'a QipInstance,
        vectors: &'a [Vec<Rat>],
        choice: Vec<usize>,
        spend: Vec<Rat>,
        value: Vec<Rat>,
        best: Option<(Rat, Vec<usize>)>,
    }
    fn descend(ctx: &mut Ctx, j: usize) {
        let n = ctx.qip.n();
        let m = ctx.qip.m();
        if j == n {
            let mut total = rat_zero();
            for i in 0..m {
                if ctx.value[i].is_zero() {
                    continue;
                }
                if ctx.spend[i] <= ctx.qip.budgets[i] {
                    total += &ctx.value[i];
                } else {
                    total += &ctx.qip.budgets[i] / &ctx.spend[i] * &ctx.value[i];
                }
            }
            if ctx.best.as_ref().map_or(true, |(b, _)| total > *b) {
                ctx.best = Some((total, ctx.choice.clone()));
            }
            return;
        }
        for (vi, vector) in ctx.vectors.iter().enumerate() {
            for i in 0..m {
                for (k, xv) in vector.iter().enumerate() {
                    if !xv.is_zero() {
                        ctx.spend[i] += &ctx.qip.w[i][j][k] * xv;
                        ctx.value[i] += &ctx.qip.y[i][j][k] * xv;
                    }
                }
            }
            ctx.choice[j] = vi;
            descend(ctx, j + 1);
            for i in 0..m {
                for (k, xv) in vector.iter().enumerate() {
                    if !xv.is_zero() {
                        ctx.spend[i] -= &ctx.qip.w[i][j][k] * xv;
                        ctx.value[i] -= &ctx.qip.y[i][j][k] * xv;
                    }
                }
            }
        }
    }
    let mut ctx = Ctx {
        qip,
        vectors: &vectors,
        choice: vec![0; n],
        spend: vec![rat_zero(); m],
        value: vec![rat_zero(); m],
        best: None,
    };
    descend(&mut ctx, 0);
    let (_, choice) = ctx.best.expect("grid contains the zero vector");
    let x: Vec<Vec<Rat>> = choice.iter().map(|&vi| vectors[vi].clone()).collect();
    finish(qip, x, "frac-grid-oracle")
}

/// Alpha values tried per scenario: a uniform grid of the requested step,
/// coarsened if necessary so the full product fits the enumeration cap.
/// With the requested step intact the delta guarantee of the grid argument
/// holds; coarser grids still yield feasible solutions (max over the grid).
fn alpha_axis(qip: &QipInstance, config: &OracleConfig) -> Result<(Vec<Rat>, bool)> {
    let m = qip.m();
    let y_max = qip.max_y();
    if y_max.is_zero() {
        return Ok((vec![rat_zero()], true));
    }
    let nsy = Rat::from_integer(BigInt::from((qip.n() * qip.slots) as u64)) * &y_max;
    // requested step delta / (2 n s y)
    let step = &config.delta / (Rat::from_integer(BigInt::from(2)) * &nsy);
    let requested_points = (rat_one() / &step)
        .ceil()
        .to_integer()
        .to_u128()
        .unwrap_or(u128::MAX)
        .saturating_add(1);
    let cap_points = {
        // largest p with p^m <= max_enumeration
        let mut p: u128 = 2;
        while (p + 1).checked_pow(m as u32).map_or(false, |v| {
            v <= config.max_enumeration as u128
        }) {
            p += 1;
        }
        p
    };
    if cap_points < 2 {
        return Err(Error::TooLarge {
            states: format!("2^{m}"),
            cap: config.max_enumeration,
        });
    }
    let points = requested_points.min(cap_points);
    let exact = requested_points <= cap_points;
    let denom = BigInt::from((points - 1).max(1));
    let axis: Vec<Rat> = (0..points)
        .map(|k| Rat::new(BigInt::from(k), denom.clone()))
        .collect();
    Ok((axis, exact))
}

fn for_each_alpha<F: FnMut(&[Rat]) -> Result<()>>(
    axis: &[Rat],
    m: usize,
    mut f: F,
) -> Result<()> {
    let mut idx = vec![0usize; m];
    loop {
        let alpha: Vec<Rat> = idx.iter().map(|&k| axis[k].clone()).collect();
        f(&alpha)?;
        let mut i = 0;
        loop {
            if i == m {
                return Ok(());
            }
            idx[i] += 1;
            if idx[i] < axis.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// LP over x for a fixed alpha vector.
fn fixed_alpha_lp(qip: &QipInstance, alpha: &[Rat]) -> LinearProgram {
    let n = qip.n();
    let s = qip.slots;
    let m = qip.m();
    let mut objective = vec![rat_zero(); n * s];
    for j in 0..n {
        for k in 0..s {
            for i in 0..m {
                objective[j * s + k] += &alpha[i] * &qip.y[i][j][k];
            }
        }
    }
    let mut constraints = Vec::new();
    for i in 0..m {
        if alpha[i].is_zero() {
            continue;
        }
        let mut row = vec![rat_zero(); n * s];
        for j in 0..n {
            for k in 0..s {
                row[j * s + k] = &alpha[i] * &qip.w[i][j][k];
            }
        }
        constraints.push((row, qip.budgets[i].clone()));
    }
    if s > 1 {
        for j in 0..n {
            let mut row = vec![rat_zero(); n * s];
            for k in 0..s {
                row[j * s + k] = rat_one();
            }
            constraints.push((row, rat_one()));
        }
    }
    LinearProgram {
        objective,
        constraints,
    }
}

/// Fractional solver by enumerating alpha on a grid and solving the induced
/// LP at each grid point. With the full grid (within the enumeration cap)
/// the payoff is within delta of the fractional optimum; alpha is re-derived
/// for the returned x, which can only improve the payoff.
pub fn alpha_grid_solve(qip: &QipInstance, config: &OracleConfig) -> Result<Solution> {
    let n = qip.n();
    let s = qip.slots;
    let m = qip.m();
    let (axis, _exact) = alpha_axis(qip, config)?;
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for_each_alpha(&axis, m, |alpha| {
        if alpha.iter().all(|a| a.is_zero()) {
            return Ok(());
        }
        let lp = fixed_alpha_lp(qip, alpha);
        let (x, objective) = lp_solve(&lp)?;
        if best.as_ref().map_or(true, |(b, _)| objective > *b) {
            best = Some((objective, x));
        }
        Ok(())
    })?;
    let x_flat = best.map(|(_, x)| x).unwrap_or_else(|| vec![rat_zero(); n * s]);
    let x: Vec<Vec<Rat>> = (0..n)
        .map(|j| (0..s).map(|k| x_flat[j * s + k].clone()).collect())
        .collect();
    finish(qip, x, "alpha-grid-lp")
}

/// Exact integral optimum for a fixed alpha vector, by dynamic programming
/// over the lattice of reachable per-scenario spends with dominance pruning.
pub fn dp_solve(qip: &QipInstance, alpha: &[Rat], config: &OracleConfig) -> Result<Solution> {
    let n = qip.n();
    let s = qip.slots;
    let m = qip.m();
    if alpha.len() != m {
        return Err(Error::DimensionMismatch("alpha length != m".into()));
    }
    // scenarios with alpha = 0 contribute nothing and impose no constraint
    let active: Vec<usize> = (0..m).filter(|&i| !alpha[i].is_zero()).collect();
    let caps: Vec<Rat> = active.iter().map(|&i| &qip.budgets[i] / &alpha[i]).collect();

    #[derive(Clone)]
    struct State {
        spend: Vec<Rat>,
        value: Rat,
        choice: Vec<usize>, // 0 = none, k+1 = slot k
    }
    let mut states = vec![State {
        spend: vec![rat_zero(); active.len()],
        value: rat_zero(),
        choice: Vec::new(),
    }];
    for j in 0..n {
        let mut next: Vec<State> = Vec::with_capacity(states.len() * (s + 1));
        for st in &states {
            for c in 0..=s {
                if c == 0 {
                    let mut ns = st.clone();
                    ns.choice.push(0);
                    next.push(ns);
                    continue;
                }
                let k = c - 1;
                let mut spend = st.spend.clone();
                let mut ok = true;
                for (pos, &i) in active.iter().enumerate() {
                    spend[pos] += &qip.w[i][j][k];
                    if spend[pos] > caps[pos] {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let mut value = st.value.clone();
                for &i in &active {
                    value += &alpha[i] * &qip.y[i][j][k];
                }
                let mut choice = st.choice.clone();
                choice.push(c);
                next.push(State {
                    spend,
                    value,
                    choice,
                });
            }
        }
        // dominance pruning: drop states that pay no more and spend no less
        next.sort_by(|a, b| b.value.cmp(&a.value).then(a.spend.cmp(&b.spend)));
        let mut kept: Vec<State> = Vec::new();
        'outer: for st in next {
            for k in &kept {
                if k.value >= st.value
                    && k.spend
                        .iter()
                        .zip(st.spend.iter())
                        .all(|(a, b)| a <= b)
                {
                    continue 'outer;
                }
            }
            kept.push(st);
        }
        if kept.len() > config.max_enumeration {
            return Err(Error::TooLarge {
                states: kept.len().to_string(),
                cap: config.max_enumeration,
            });
        }
        states = kept;
    }
    let best = states
        .into_iter()
        .max_by(|a, b| a.value.cmp(&b.value).then(b.choice.cmp(&a.choice)))
        .expect("empty state never pruned");
    let mut x = vec![vec![rat_zero(); s]; n];
    for (j, &c) in best.choice.iter().enumerate() {
        if c > 0 {
            x[j][c - 1] = rat_one();
        }
    }
    finish(qip, x, "dp-fixed-alpha")
}

/// Fixed-m integral solver: outer alpha grid, inner dynamic program. With
/// the full grid the payoff is within delta of the integral optimum.
pub fn solve_fixed_m_int(qip: &QipInstance, config: &OracleConfig) -> Result<Solution> {
    let m = qip.m();
    let (axis, _exact) = alpha_axis(qip, config)?;
    let mut best: Option<Solution> = None;
    for_each_alpha(&axis, m, |alpha| {
        if alpha.iter().all(|a| a.is_zero()) {
            return Ok(());
        }
        let sol = dp_solve(qip, alpha, config)?;
        if best
            .as_ref()
            .map_or(true, |b| sol.total_payoff > b.total_payoff)
        {
            best = Some(sol);
        }
        Ok(())
    })?;
    let mut solution = match best {
        Some(s) => s,
        None => qip_payoff(qip, &vec![vec![rat_zero(); qip.slots]; qip.n()])?,
    };
    solution.algorithm = "fixed-m-int".into();
    Ok(solution)
}
