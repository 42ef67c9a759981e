//! Small dense linear-program solver in exact rational arithmetic.
//!
//! Problems here are always box-bounded (variables in [0,1]) with `<=`
//! constraints and non-negative right-hand sides, so the all-slack basis is
//! feasible and the optimum is finite. Bland's rule keeps the simplex from
//! cycling.

use crate::error::{Error, Result};
use crate::rational::{rat_one, rat_zero, Rat};
use num::{Signed, Zero};

#[derive(Debug, Clone)]
pub struct LinearProgram {
    /// Objective coefficients; the LP maximizes `objective . x`.
    pub objective: Vec<Rat>,
    /// Rows `(a, b)` meaning `a . x <= b` with `b >= 0`.
    pub constraints: Vec<(Vec<Rat>, Rat)>,
}

const MAX_PIVOTS: usize = 200_000;

/// Exact optimum of the LP. Variables are implicitly bounded to [0,1]; the
/// upper bounds are materialized as extra rows.
pub fn lp_solve(lp: &LinearProgram) -> Result<(Vec<Rat>, Rat)> {
    let n = lp.objective.len();
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::with_capacity(lp.constraints.len() + n);
    for (a, b) in &lp.constraints {
        if a.len() != n {
            return Err(Error::DimensionMismatch(
                "constraint row length != variable count".into(),
            ));
        }
        if b.is_negative() {
            return Err(Error::DimensionMismatch(
                "negative right-hand side: x = 0 must be feasible".into(),
            ));
        }
        rows.push((a.clone(), b.clone()));
    }
    for j in 0..n {
        let mut a = vec![rat_zero(); n];
        a[j] = rat_one();
        rows.push((a, rat_one()));
    }
    let m = rows.len();
    let cols = n + m + 1; // structural + slack + rhs
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for (i, (a, b)) in rows.iter().enumerate() {
        let mut row = vec![rat_zero(); cols];
        row[..n].clone_from_slice(a);
        row[n + i] = rat_one();
        row[cols - 1] = b.clone();
        t.push(row);
    }
    // objective row holds -c so that negative entries mark improving columns
    let mut obj = vec![rat_zero(); cols];
    for j in 0..n {
        obj[j] = -lp.objective[j].clone();
    }
    t.push(obj);

    let mut basis: Vec<usize> = (n..n + m).collect();
    for _ in 0..MAX_PIVOTS {
        // Bland: entering = lowest-index column with negative objective entry
        let entering = match (0..cols - 1).find(|&j| t[m][j].is_negative()) {
            Some(j) => j,
            None => break,
        };
        // ratio test, ties by lowest basis index
        let mut leaving: Option<usize> = None;
        let mut best_ratio: Option<Rat> = None;
        for i in 0..m {
            if t[i][entering].is_positive() {
                let ratio = &t[i][cols - 1] / &t[i][entering];
                let better = match &best_ratio {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leaving.unwrap()]),
                };
                if better {
                    best_ratio = Some(ratio);
                    leaving = Some(i);
                }
            }
        }
        let leaving = leaving.ok_or(Error::NumericLimit)?; // unbounded: cannot happen with box rows
        let pivot = t[leaving][entering].clone();
        for v in t[leaving].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..=m {
            if i == leaving || t[i][entering].is_zero() {
                continue;
            }
            let factor = t[i][entering].clone();
            for j in 0..cols {
                let delta = &factor * &t[leaving][j];
                t[i][j] -= delta;
            }
        }
        basis[leaving] = entering;
    }
    if (0..cols - 1).any(|j| t[m][j].is_negative()) {
        return Err(Error::NumericLimit);
    }
    let mut x = vec![rat_zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][cols - 1].clone();
        }
    }
    let objective = t[m][cols - 1].clone();
    Ok((x, objective))
}
