//! Problem instances, payoff semantics and the quadratic-program
//! normalization.
//!
//! The model layer is fully exact: every payoff, budget and scaling value is
//! an arbitrary-precision rational. Approximation algorithms may take
//! shortcuts internally but every reported payoff goes back through
//! [`qip_payoff`] / [`evaluate_payoff`] here.

use crate::error::{Error, Result};
use crate::rational::{rat_min, rat_one, rat_to_string, rat_zero, Rat};
use num::{One, Signed, Zero};

/// Single-slot problem data: `m` scenarios over `n` keywords, a soft budget,
/// per-keyword base costs `d` and per-scenario real costs `c` within
/// `[d, kappa*d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleSlotInstance {
    /// Soft budget, a positive integer (unless `relaxed_integrality`).
    pub budget: Rat,
    pub kappa: u64,
    /// Scenario probabilities, summing to exactly 1.
    pub eps: Vec<Rat>,
    /// Clicks `a[i][j]`, m x n, non-negative integers (unless relaxed).
    pub clicks: Vec<Vec<Rat>>,
    /// Base cost-per-click `d[j]`, non-decreasing with `d[0] = 1` after
    /// validation.
    pub base_costs: Vec<Rat>,
    /// Real cost-per-click `c[i][j]`, m x n.
    pub real_costs: Vec<Vec<Rat>>,
    /// Set for instances recovered from a quadratic program, where clicks and
    /// the budget are not guaranteed integral.
    pub relaxed_integrality: bool,
    /// Maps internal (d-sorted) keyword index to the original input index.
    /// Identity until `validate` reorders keywords.
    pub permutation: Vec<usize>,
}

/// Multi-slot generalization: `s` slots per keyword, with per-slot clicks and
/// costs and the at-most-one-slot-per-keyword selection constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSlotInstance {
    pub budget: Rat,
    pub kappa: u64,
    pub slots: usize,
    pub eps: Vec<Rat>,
    /// Clicks `a[i][j][k]`, m x n x s.
    pub clicks: Vec<Vec<Vec<Rat>>>,
    /// Base costs `d[j][k]`, n x s, non-decreasing in k for each keyword.
    pub base_costs: Vec<Vec<Rat>>,
    /// Real costs `c[i][j][k]`, m x n x s.
    pub real_costs: Vec<Vec<Vec<Rat>>>,
    pub relaxed_integrality: bool,
}

/// Normalized bipartite quadratic program: values `y`, weights `w = c*y`, and
/// per-scenario budgets. Single-slot instances use `s = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QipInstance {
    pub slots: usize,
    /// `y[i][j][k]`, m x n x s.
    pub y: Vec<Vec<Vec<Rat>>>,
    /// `w[i][j][k] = c[i][j][k] * y[i][j][k]`, m x n x s.
    pub w: Vec<Vec<Vec<Rat>>>,
    /// Costs carried through for truncation and duals, m x n x s.
    pub costs: Vec<Vec<Vec<Rat>>>,
    /// Base costs `d[j][k]` carried through for grouping, n x s.
    pub base_costs: Vec<Vec<Rat>>,
    /// Per-scenario budgets `B_i`, all positive.
    pub budgets: Vec<Rat>,
    pub kappa: u64,
}

/// A (possibly fractional) selection of keyword/slot pairs together with the
/// per-scenario scaling vector alpha that makes it budget-feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    /// `x[j][k]` in [0,1]; single-slot allocations use inner vectors of
    /// length 1.
    pub x: Vec<Vec<Rat>>,
    pub integral: bool,
    /// `alpha[i] = min(1, B_i / spend_i)`, with alpha = 1 when spend is 0.
    pub alpha: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub allocation: Allocation,
    pub total_payoff: Rat,
    pub per_scenario_payoff: Vec<Rat>,
    pub algorithm: String,
    /// Upper bound on OPT certified by the producing algorithm, when one is
    /// available.
    pub ratio_certificate: Option<Rat>,
}

impl SingleSlotInstance {
    pub fn n(&self) -> usize {
        self.base_costs.len()
    }

    pub fn m(&self) -> usize {
        self.eps.len()
    }

    /// Checks all type invariants and sorts keywords by base cost, recording
    /// the permutation for output mapping. `d[0] = 1` is enforced, not
    /// rescaled.
    pub fn validate(&mut self) -> Result<()> {
        let n = self.n();
        let m = self.m();
        if n == 0 || m == 0 {
            return Err(Error::EmptyInstance);
        }
        if self.clicks.len() != m || self.real_costs.len() != m {
            return Err(Error::DimensionMismatch(
                "clicks/real_costs rows must match scenario count".into(),
            ));
        }
        for row in self.clicks.iter().chain(self.real_costs.iter()) {
            if row.len() != n {
                return Err(Error::DimensionMismatch(
                    "clicks/real_costs columns must match keyword count".into(),
                ));
            }
        }
        if !self.budget.is_positive() {
            return Err(Error::NonPositiveBudget);
        }
        if !self.relaxed_integrality {
            if !self.budget.is_integer() {
                return Err(Error::NonIntegral(format!(
                    "budget {}",
                    rat_to_string(&self.budget)
                )));
            }
            for row in &self.clicks {
                for a in row {
                    if !a.is_integer() || a.is_negative() {
                        return Err(Error::NonIntegral(format!("click {}", rat_to_string(a))));
                    }
                }
            }
        }
        let eps_sum: Rat = self.eps.iter().cloned().sum();
        if !eps_sum.is_one() {
            return Err(Error::ProbabilityMismatch {
                got: rat_to_string(&eps_sum),
            });
        }
        for e in &self.eps {
            if e.is_negative() || *e > rat_one() {
                return Err(Error::ProbabilityMismatch {
                    got: rat_to_string(e),
                });
            }
        }

        // Sort keywords by base cost ascending; remember original positions.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.base_costs[a].cmp(&self.base_costs[b]));
        if order.iter().enumerate().any(|(i, &o)| i != o) {
            self.base_costs = order.iter().map(|&j| self.base_costs[j].clone()).collect();
            for row in self.clicks.iter_mut() {
                *row = order.iter().map(|&j| row[j].clone()).collect();
            }
            for row in self.real_costs.iter_mut() {
                *row = order.iter().map(|&j| row[j].clone()).collect();
            }
            let prev = std::mem::replace(&mut self.permutation, Vec::new());
            self.permutation = if prev.is_empty() || prev.len() != n {
                order
            } else {
                order.iter().map(|&j| prev[j]).collect()
            };
        } else if self.permutation.len() != n {
            self.permutation = order;
        }

        if !self.base_costs[0].is_one() {
            return Err(Error::CostOutOfRange {
                scenario: 0,
                keyword: 0,
                cost: rat_to_string(&self.base_costs[0]),
                lo: "1".into(),
                hi: "1".into(),
            });
        }
        let kappa = Rat::from_integer(self.kappa.into());
        for (i, row) in self.real_costs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let lo = &self.base_costs[j];
                let hi = lo * &kappa;
                if c < lo || *c > hi {
                    return Err(Error::CostOutOfRange {
                        scenario: i,
                        keyword: j,
                        cost: rat_to_string(c),
                        lo: rat_to_string(lo),
                        hi: rat_to_string(&hi),
                    });
                }
            }
        }
        Ok(())
    }
}

impl MultiSlotInstance {
    pub fn n(&self) -> usize {
        self.base_costs.len()
    }

    pub fn m(&self) -> usize {
        self.eps.len()
    }

    pub fn validate(&mut self) -> Result<()> {
        let n = self.n();
        let m = self.m();
        let s = self.slots;
        if n == 0 || m == 0 || s == 0 {
            return Err(Error::EmptyInstance);
        }
        if self.clicks.len() != m || self.real_costs.len() != m {
            return Err(Error::DimensionMismatch(
                "clicks/real_costs rows must match scenario count".into(),
            ));
        }
        for grid in self.clicks.iter().chain(self.real_costs.iter()) {
            if grid.len() != n || grid.iter().any(|kw| kw.len() != s) {
                return Err(Error::DimensionMismatch(
                    "clicks/real_costs must be m x n x s".into(),
                ));
            }
        }
        if self.base_costs.iter().any(|kw| kw.len() != s) {
            return Err(Error::DimensionMismatch("base_costs must be n x s".into()));
        }
        if !self.budget.is_positive() {
            return Err(Error::NonPositiveBudget);
        }
        if !self.relaxed_integrality {
            if !self.budget.is_integer() {
                return Err(Error::NonIntegral("budget".into()));
            }
            for grid in &self.clicks {
                for kw in grid {
                    for a in kw {
                        if !a.is_integer() || a.is_negative() {
                            return Err(Error::NonIntegral(format!(
                                "click {}",
                                rat_to_string(a)
                            )));
                        }
                    }
                }
            }
        }
        let eps_sum: Rat = self.eps.iter().cloned().sum();
        if !eps_sum.is_one() {
            return Err(Error::ProbabilityMismatch {
                got: rat_to_string(&eps_sum),
            });
        }
        for (j, kw) in self.base_costs.iter().enumerate() {
            for k in 1..s {
                if kw[k] < kw[k - 1] {
                    return Err(Error::DimensionMismatch(format!(
                        "base costs for keyword {j} must be non-decreasing in slot"
                    )));
                }
            }
        }
        let kappa = Rat::from_integer(self.kappa.into());
        for (i, grid) in self.real_costs.iter().enumerate() {
            for (j, kw) in grid.iter().enumerate() {
                for (k, c) in kw.iter().enumerate() {
                    let lo = &self.base_costs[j][k];
                    let hi = lo * &kappa;
                    if c < lo || *c > hi {
                        return Err(Error::CostOutOfRange {
                            scenario: i,
                            keyword: j * s + k,
                            cost: rat_to_string(c),
                            lo: rat_to_string(lo),
                            hi: rat_to_string(&hi),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// View of an `s = 1` instance as a single-slot instance.
    pub fn as_single_slot(&self) -> Option<SingleSlotInstance> {
        if self.slots != 1 {
            return None;
        }
        Some(SingleSlotInstance {
            budget: self.budget.clone(),
            kappa: self.kappa,
            eps: self.eps.clone(),
            clicks: self
                .clicks
                .iter()
                .map(|g| g.iter().map(|kw| kw[0].clone()).collect())
                .collect(),
            base_costs: self.base_costs.iter().map(|kw| kw[0].clone()).collect(),
            real_costs: self
                .real_costs
                .iter()
                .map(|g| g.iter().map(|kw| kw[0].clone()).collect())
                .collect(),
            relaxed_integrality: self.relaxed_integrality,
            permutation: (0..self.n()).collect(),
        })
    }
}

impl QipInstance {
    pub fn n(&self) -> usize {
        self.base_costs.len()
    }

    pub fn m(&self) -> usize {
        self.budgets.len()
    }

    pub fn max_y(&self) -> Rat {
        let mut best = rat_zero();
        for grid in &self.y {
            for kw in grid {
                for y in kw {
                    if *y > best {
                        best = y.clone();
                    }
                }
            }
        }
        best
    }

    /// Upper bound `sum_i sum_jk y[i][j][k]` on any payoff.
    pub fn total_y(&self) -> Rat {
        self.y
            .iter()
            .flat_map(|g| g.iter())
            .flat_map(|kw| kw.iter())
            .cloned()
            .sum()
    }

    /// Shape, budget and sign checks; skips the O(mns) multiplication pass
    /// that re-verifies `w = c * y`. Payoff evaluation runs on every
    /// candidate a solver produces, so it uses this cheaper variant.
    pub fn validate_shape(&self) -> Result<()> {
        let m = self.m();
        let n = self.n();
        let s = self.slots;
        if m == 0 || n == 0 || s == 0 {
            return Err(Error::EmptyInstance);
        }
        let shaped = |grid: &Vec<Vec<Rat>>| grid.len() == n && grid.iter().all(|kw| kw.len() == s);
        if self.y.len() != m
            || self.w.len() != m
            || self.costs.len() != m
            || !self.y.iter().all(shaped)
            || !self.w.iter().all(shaped)
            || !self.costs.iter().all(shaped)
            || self.base_costs.iter().any(|kw| kw.len() != s)
        {
            return Err(Error::DimensionMismatch("qip must be m x n x s".into()));
        }
        for (i, b) in self.budgets.iter().enumerate() {
            if !b.is_positive() {
                return Err(Error::ZeroBudgetRow { scenario: i });
            }
        }
        for i in 0..m {
            for j in 0..n {
                for k in 0..s {
                    if self.y[i][j][k].is_negative() {
                        return Err(Error::DimensionMismatch("negative y entry".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        for i in 0..self.m() {
            for j in 0..self.n() {
                for k in 0..self.slots {
                    if self.w[i][j][k] != &self.y[i][j][k] * &self.costs[i][j][k] {
                        return Err(Error::DimensionMismatch(format!(
                            "w[{i}][{j}][{k}] != c*y"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Allocation {
    pub fn zeros(n: usize, s: usize, m: usize) -> Self {
        Allocation {
            x: vec![vec![rat_zero(); s]; n],
            integral: true,
            alpha: vec![rat_one(); m],
        }
    }

    pub fn is_binary(x: &[Vec<Rat>]) -> bool {
        x.iter()
            .flat_map(|kw| kw.iter())
            .all(|v| v.is_zero() || v.is_one())
    }
}

fn check_x(x: &[Vec<Rat>], n: usize, s: usize, enforce_slot_constraint: bool) -> Result<()> {
    if x.len() != n || x.iter().any(|kw| kw.len() != s) {
        return Err(Error::DimensionMismatch(format!(
            "allocation must be {n} x {s}"
        )));
    }
    for (j, kw) in x.iter().enumerate() {
        let mut sum = rat_zero();
        for v in kw {
            if v.is_negative() || *v > rat_one() {
                return Err(Error::DimensionMismatch(format!(
                    "x[{j}] entry outside [0,1]"
                )));
            }
            sum += v;
        }
        if enforce_slot_constraint && sum > rat_one() {
            return Err(Error::SlotConstraintViolated {
                keyword: j,
                sum: rat_to_string(&sum),
            });
        }
    }
    Ok(())
}

/// Payoff of an allocation under the quadratic-program form: derives the
/// optimal `alpha_i = min(1, B_i / sum_jk w x)` and returns the objective
/// `sum_i alpha_i sum_jk y x`. Equivalent to the two-branch payoff of the
/// instance form.
pub fn qip_payoff(qip: &QipInstance, x: &[Vec<Rat>]) -> Result<Solution> {
    qip.validate_shape()?;
    check_x(x, qip.n(), qip.slots, qip.slots > 1)?;
    let m = qip.m();
    let mut alpha = Vec::with_capacity(m);
    let mut per_scenario = Vec::with_capacity(m);
    let mut total = rat_zero();
    for i in 0..m {
        let mut spend = rat_zero();
        let mut value = rat_zero();
        for j in 0..qip.n() {
            for k in 0..qip.slots {
                let xv = &x[j][k];
                if xv.is_zero() {
                    continue;
                }
                spend += &qip.w[i][j][k] * xv;
                value += &qip.y[i][j][k] * xv;
            }
        }
        let a = if spend.is_zero() {
            rat_one()
        } else {
            rat_min(rat_one(), &qip.budgets[i] / &spend)
        };
        let payoff = &a * &value;
        total += &payoff;
        alpha.push(a);
        per_scenario.push(payoff);
    }
    Ok(Solution {
        allocation: Allocation {
            integral: Allocation::is_binary(x),
            x: x.to_vec(),
            alpha,
        },
        total_payoff: total,
        per_scenario_payoff: per_scenario,
        algorithm: "qip-payoff".into(),
        ratio_certificate: None,
    })
}

/// Two-branch expected payoff of a single-slot allocation, per scenario:
/// clicks are scaled by `B / spend` whenever spend exceeds the budget.
pub fn evaluate_payoff(instance: &SingleSlotInstance, x: &[Rat]) -> Result<Solution> {
    let n = instance.n();
    let m = instance.m();
    if x.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "allocation length {} != {n}",
            x.len()
        )));
    }
    let wrapped: Vec<Vec<Rat>> = x.iter().map(|v| vec![v.clone()]).collect();
    check_x(&wrapped, n, 1, false)?;
    let mut alpha = Vec::with_capacity(m);
    let mut per_scenario = Vec::with_capacity(m);
    let mut total = rat_zero();
    for i in 0..m {
        let mut spend = rat_zero();
        let mut clicks = rat_zero();
        for j in 0..n {
            if x[j].is_zero() {
                continue;
            }
            spend += &instance.clicks[i][j] * &instance.real_costs[i][j] * &x[j];
            clicks += &instance.clicks[i][j] * &x[j];
        }
        let a = if spend.is_zero() {
            rat_one()
        } else {
            rat_min(rat_one(), &instance.budget / &spend)
        };
        let payoff = &instance.eps[i] * &clicks * &a;
        total += &payoff;
        alpha.push(a);
        per_scenario.push(payoff);
    }
    Ok(Solution {
        allocation: Allocation {
            integral: Allocation::is_binary(&wrapped),
            x: wrapped,
            alpha,
        },
        total_payoff: total,
        per_scenario_payoff: per_scenario,
        algorithm: "evaluate".into(),
        ratio_certificate: None,
    })
}

/// Multi-slot analogue of [`evaluate_payoff`]; enforces the per-keyword slot
/// constraint.
pub fn evaluate_payoff_multi(instance: &MultiSlotInstance, x: &[Vec<Rat>]) -> Result<Solution> {
    let n = instance.n();
    let m = instance.m();
    let s = instance.slots;
    check_x(x, n, s, true)?;
    let mut alpha = Vec::with_capacity(m);
    let mut per_scenario = Vec::with_capacity(m);
    let mut total = rat_zero();
    for i in 0..m {
        let mut spend = rat_zero();
        let mut clicks = rat_zero();
        for j in 0..n {
            for k in 0..s {
                if x[j][k].is_zero() {
                    continue;
                }
                spend += &instance.clicks[i][j][k] * &instance.real_costs[i][j][k] * &x[j][k];
                clicks += &instance.clicks[i][j][k] * &x[j][k];
            }
        }
        let a = if spend.is_zero() {
            rat_one()
        } else {
            rat_min(rat_one(), &instance.budget / &spend)
        };
        let payoff = &instance.eps[i] * &clicks * &a;
        total += &payoff;
        alpha.push(a);
        per_scenario.push(payoff);
    }
    Ok(Solution {
        allocation: Allocation {
            integral: Allocation::is_binary(x),
            x: x.to_vec(),
            alpha,
        },
        total_payoff: total,
        per_scenario_payoff: per_scenario,
        algorithm: "evaluate-multi".into(),
        ratio_certificate: None,
    })
}

/// Forward normalization: `y = eps * a`, `w = c * y`, `B_i = eps_i * B`.
/// Payoffs are preserved exactly.
pub fn to_qip(instance: &SingleSlotInstance) -> QipInstance {
    let m = instance.m();
    let n = instance.n();
    let mut y = vec![vec![vec![rat_zero()]; n]; m];
    let mut w = vec![vec![vec![rat_zero()]; n]; m];
    let mut costs = vec![vec![vec![rat_zero()]; n]; m];
    for i in 0..m {
        for j in 0..n {
            let yi = &instance.eps[i] * &instance.clicks[i][j];
            w[i][j][0] = &yi * &instance.real_costs[i][j];
            y[i][j][0] = yi;
            costs[i][j][0] = instance.real_costs[i][j].clone();
        }
    }
    QipInstance {
        slots: 1,
        y,
        w,
        costs,
        base_costs: instance.base_costs.iter().map(|d| vec![d.clone()]).collect(),
        budgets: instance.eps.iter().map(|e| e * &instance.budget).collect(),
        kappa: instance.kappa,
    }
}

pub fn to_qip_multi(instance: &MultiSlotInstance) -> QipInstance {
    let m = instance.m();
    let n = instance.n();
    let s = instance.slots;
    let mut y = vec![vec![vec![rat_zero(); s]; n]; m];
    let mut w = vec![vec![vec![rat_zero(); s]; n]; m];
    for i in 0..m {
        for j in 0..n {
            for k in 0..s {
                let yi = &instance.eps[i] * &instance.clicks[i][j][k];
                w[i][j][k] = &yi * &instance.real_costs[i][j][k];
                y[i][j][k] = yi;
            }
        }
    }
    QipInstance {
        slots: s,
        y,
        w,
        costs: instance.real_costs.clone(),
        base_costs: instance.base_costs.clone(),
        budgets: instance.eps.iter().map(|e| e * &instance.budget).collect(),
        kappa: instance.kappa,
    }
}

/// Reverse map for single-slot programs: `B = sum B_i`, `eps_i = B_i / B`,
/// `a = y / eps`. Clicks may come out non-integral, so the result carries the
/// `relaxed_integrality` flag.
pub fn from_qip(qip: &QipInstance) -> Result<SingleSlotInstance> {
    qip.validate()?;
    if qip.slots != 1 {
        return Err(Error::DimensionMismatch(
            "from_qip requires a single-slot program".into(),
        ));
    }
    let budget: Rat = qip.budgets.iter().cloned().sum();
    let eps: Vec<Rat> = qip.budgets.iter().map(|b| b / &budget).collect();
    let m = qip.m();
    let n = qip.n();
    let mut clicks = vec![vec![rat_zero(); n]; m];
    let mut real_costs = vec![vec![rat_zero(); n]; m];
    for i in 0..m {
        for j in 0..n {
            clicks[i][j] = &qip.y[i][j][0] / &eps[i];
            real_costs[i][j] = qip.costs[i][j][0].clone();
        }
    }
    Ok(SingleSlotInstance {
        budget,
        kappa: qip.kappa,
        eps,
        clicks,
        base_costs: qip.base_costs.iter().map(|kw| kw[0].clone()).collect(),
        real_costs,
        relaxed_integrality: true,
        permutation: (0..n).collect(),
    })
}

/// Re-checks a solution's payoff against the model evaluation. Used by the
/// CLI so no algorithm-internal payoff is ever trusted in a report.
pub fn recheck_solution(qip: &QipInstance, solution: &Solution) -> Result<()> {
    let fresh = qip_payoff(qip, &solution.allocation.x)?;
    if fresh.total_payoff != solution.total_payoff {
        return Err(Error::DimensionMismatch(format!(
            "payoff mismatch on recheck: {} vs {}",
            rat_to_string(&fresh.total_payoff),
            rat_to_string(&solution.total_payoff)
        )));
    }
    Ok(())
}
