//! Hard-instance generators and a random-instance generator.
//!
//! Three families come from hardness constructions: a reduction from maximum
//! independent set whose optimum tracks the independence number, a reduction
//! from MAX-2SAT-3 on two-slot instances, and a complete-graph instance on
//! which the semidefinite relaxation of the quadratic program overshoots the
//! true optimum by a factor m/2. The relaxation gap is witnessed by a purely
//! symbolic vector certificate, checked without any numeric linear algebra.

use crate::error::{Error, Result};
use crate::model::{MultiSlotInstance, QipInstance, SingleSlotInstance};
use crate::rational::{rat_one, rat_uint, rat_zero, Rat};
use num::{BigInt, One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Simple undirected graph on vertices `0..vertices`, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Parse(format!("self-loop at vertex {u}")));
            }
            if u >= vertices || v >= vertices {
                return Err(Error::Parse(format!(
                    "edge ({u},{v}) outside vertex range 0..{vertices}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertices,
            edges: set,
        })
    }

    pub fn complete(vertices: usize) -> Self {
        let edges = (0..vertices)
            .flat_map(|u| (u + 1..vertices).map(move |v| (u, v)))
            .collect();
        Graph { vertices, edges }
    }

    pub fn path(vertices: usize) -> Self {
        Graph {
            vertices,
            edges: (0..vertices.saturating_sub(1)).map(|u| (u, u + 1)).collect(),
        }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Independence number by exhaustive search; intended for the small
    /// graphs these generators are used with.
    pub fn max_independent_set(&self) -> Result<usize> {
        if self.vertices > 24 {
            return Err(Error::TooLarge {
                states: format!("2^{}", self.vertices),
                cap: 1 << 24,
            });
        }
        let mut best = 0usize;
        for mask in 0u32..(1u32 << self.vertices) {
            let independent = self
                .edges
                .iter()
                .all(|&(u, v)| mask & (1 << u) == 0 || mask & (1 << v) == 0);
            if independent {
                best = best.max(mask.count_ones() as usize);
            }
        }
        Ok(best)
    }
}

/// How per-scenario costs are filled in around the fixed base costs.
#[derive(Debug, Clone)]
pub enum CostRule {
    /// `c[i][j] = d[j]` for every scenario.
    Default,
    /// Explicit m x n cost matrix; each entry must lie in `[d_j, kappa d_j]`.
    Custom(Vec<Vec<Rat>>),
}

/// Independent-set reduction. For a graph on n vertices this builds a
/// single-slot quadratic program with m = n scenarios: the value matrix is 0
/// above the reverse diagonal, 1 on it, and encodes adjacency below it
/// (`y[i][j] = 1` iff `i + j = n + 1`, or `i + j > n + 1` and vertices
/// `v[n-i+1]` and `v[j]` are adjacent, 1-based). Base costs grow
/// geometrically, `d_j = base^(j-1)`, and the budget of scenario i is the
/// cost of its reverse-diagonal entry, so selecting the keywords of an
/// independent set makes every active constraint exactly tight and yields a
/// payoff equal to the set's size.
pub fn gen_from_graph(
    graph: &Graph,
    base: u64,
    kappa: u64,
    cost_rule: &CostRule,
) -> Result<QipInstance> {
    let n = graph.vertices();
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    if base < 2 {
        return Err(Error::Parse(format!("base {base} must be at least 2")));
    }
    if kappa < 1 {
        return Err(Error::Parse("kappa must be at least 1".into()));
    }
    let mut d = Vec::with_capacity(n);
    let mut current = rat_one();
    for _ in 0..n {
        d.push(current.clone());
        current *= rat_uint(base);
    }
    let kappa_rat = rat_uint(kappa);
    let costs: Vec<Vec<Rat>> = match cost_rule {
        CostRule::Default => (0..n).map(|_| d.clone()).collect(),
        CostRule::Custom(c) => {
            if c.len() != n || c.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch("custom costs must be n x n".into()));
            }
            for (i, row) in c.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let hi = &d[j] * &kappa_rat;
                    if v < &d[j] || *v > hi {
                        return Err(Error::CostOutOfRange {
                            scenario: i,
                            keyword: j,
                            cost: crate::rational::rat_to_string(v),
                            lo: crate::rational::rat_to_string(&d[j]),
                            hi: crate::rational::rat_to_string(&hi),
                        });
                    }
                }
            }
            c.clone()
        }
    };
    let mut y = vec![vec![vec![rat_zero()]; n]; n];
    let mut w = vec![vec![vec![rat_zero()]; n]; n];
    let mut cost_grid = vec![vec![vec![rat_zero()]; n]; n];
    for i in 0..n {
        for j in 0..n {
            // 1-based rule on 0-based indices: i1 = i+1, j1 = j+1
            let on_diagonal = i + j == n - 1;
            let below = i + j > n - 1 && graph.has_edge(n - 1 - i, j);
            if on_diagonal || below {
                y[i][j][0] = rat_one();
                w[i][j][0] = costs[i][j].clone();
            }
            cost_grid[i][j][0] = costs[i][j].clone();
        }
    }
    let budgets: Vec<Rat> = (0..n).map(|i| costs[i][n - 1 - i].clone()).collect();
    Ok(QipInstance {
        slots: 1,
        y,
        w,
        costs: cost_grid,
        base_costs: d.into_iter().map(|v| vec![v]).collect(),
        budgets,
        kappa,
    })
}

/// Symbolic feasible point of the vector relaxation (V): an orthonormal
/// family U_1..U_m with V_j = U_{perm[j]}, so every inner product
/// `U_i . V_j` is 0 or 1 and recorded in a table. No coordinates are ever
/// materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorCertificate {
    pub dim: usize,
    /// `V_j = U_{perm[j]}`; the gap construction uses `perm[j] = m - 1 - j`.
    pub perm: Vec<usize>,
    /// `inner[i][j] = U_i . V_j`.
    pub inner: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone)]
pub struct CertificateReport {
    /// Relaxation objective `sum_ij y[i][j] U_i . V_j`.
    pub objective: Rat,
    /// Slack `B_i - sum_j w[i][j] U_i . V_j` per scenario; the gap
    /// construction makes every constraint exactly tight.
    pub residuals: Vec<Rat>,
}

/// Relaxation-gap instance: the independent-set reduction applied to the
/// complete graph K_m (kappa = 1), whose true optimum is below 2, paired
/// with a vector-program point of objective m.
pub fn gen_sdp_gap(m: usize, base: u64) -> Result<(QipInstance, VectorCertificate)> {
    if m < 2 {
        return Err(Error::Parse("gap construction needs m >= 2".into()));
    }
    let qip = gen_from_graph(&Graph::complete(m), base, 1, &CostRule::Default)?;
    let perm: Vec<usize> = (0..m).map(|j| m - 1 - j).collect();
    let inner = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if perm[j] == i { rat_one() } else { rat_zero() })
                .collect()
        })
        .collect();
    Ok((
        qip,
        VectorCertificate {
            dim: m,
            perm,
            inner,
        },
    ))
}

/// Checks a vector certificate against an instance: the inner-product table
/// must be realizable by the claimed orthonormal family, every budget
/// constraint of (V) must hold, and the report carries the objective and the
/// per-constraint slack.
pub fn verify_vector_certificate(
    qip: &QipInstance,
    cert: &VectorCertificate,
) -> Result<CertificateReport> {
    let m = cert.dim;
    if qip.slots != 1 || qip.m() != m || qip.n() != m {
        return Err(Error::CertificateMismatch(format!(
            "certificate dimension {m} does not match a {}x{} single-slot program",
            qip.m(),
            qip.n()
        )));
    }
    let mut seen = vec![false; m];
    if cert.perm.len() != m {
        return Err(Error::CertificateMismatch("perm length != m".into()));
    }
    for &p in &cert.perm {
        if p >= m || seen[p] {
            return Err(Error::CertificateMismatch(
                "perm is not a permutation of the U family".into(),
            ));
        }
        seen[p] = true;
    }
    if cert.inner.len() != m || cert.inner.iter().any(|row| row.len() != m) {
        return Err(Error::CertificateMismatch("inner table must be m x m".into()));
    }
    for i in 0..m {
        for j in 0..m {
            let expected = if cert.perm[j] == i { rat_one() } else { rat_zero() };
            if cert.inner[i][j] != expected {
                return Err(Error::CertificateMismatch(format!(
                    "inner[{i}][{j}] = {} is not realizable by an orthonormal family \
                     with V_j = U_perm(j)",
                    crate::rational::rat_to_string(&cert.inner[i][j])
                )));
            }
        }
    }
    let mut objective = rat_zero();
    let mut residuals = Vec::with_capacity(m);
    for i in 0..m {
        let mut spend = rat_zero();
        for j in 0..m {
            let ip = &cert.inner[i][j];
            if ip.is_zero() {
                continue;
            }
            objective += &qip.y[i][j][0] * ip;
            spend += &qip.w[i][j][0] * ip;
        }
        if spend > qip.budgets[i] {
            return Err(Error::CertificateMismatch(format!(
                "constraint {i} violated: spend {} exceeds budget {}",
                crate::rational::rat_to_string(&spend),
                crate::rational::rat_to_string(&qip.budgets[i])
            )));
        }
        residuals.push(&qip.budgets[i] - spend);
    }
    Ok(CertificateReport {
        objective,
        residuals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

/// MAX-2SAT-3 formula: every clause has exactly two literals on distinct
/// variables and every variable occurs exactly three times, hence
/// m = 3n/2 clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf2Sat3 {
    pub vars: usize,
    pub clauses: Vec<(Literal, Literal)>,
}

impl Cnf2Sat3 {
    pub fn validate(&self) -> Result<()> {
        if self.vars == 0 {
            return Err(Error::InvalidFormula("no variables".into()));
        }
        if self.vars % 2 != 0 {
            return Err(Error::InvalidFormula(
                "3n occurrences split into pairs needs an even variable count".into(),
            ));
        }
        if self.clauses.len() * 2 != 3 * self.vars {
            return Err(Error::InvalidFormula(format!(
                "expected m = 3n/2 = {} clauses, got {}",
                3 * self.vars / 2,
                self.clauses.len()
            )));
        }
        let mut counts = vec![0usize; self.vars];
        for (idx, (a, b)) in self.clauses.iter().enumerate() {
            if a.var >= self.vars || b.var >= self.vars {
                return Err(Error::InvalidFormula(format!(
                    "clause {idx} references a variable out of range"
                )));
            }
            if a.var == b.var {
                return Err(Error::InvalidFormula(format!(
                    "clause {idx} repeats variable {}",
                    a.var
                )));
            }
            counts[a.var] += 1;
            counts[b.var] += 1;
        }
        for (var, &count) in counts.iter().enumerate() {
            if count != 3 {
                return Err(Error::InvalidFormula(format!(
                    "variable {var} occurs {count} times, expected exactly 3"
                )));
            }
        }
        Ok(())
    }

    /// Maximum number of simultaneously satisfiable clauses, by exhausting
    /// all truth assignments.
    pub fn max_sat_value(&self) -> Result<usize> {
        self.validate()?;
        if self.vars > 24 {
            return Err(Error::TooLarge {
                states: format!("2^{}", self.vars),
                cap: 1 << 24,
            });
        }
        let mut best = 0usize;
        for assignment in 0u32..(1u32 << self.vars) {
            let truthy = |l: &Literal| (assignment >> l.var) & 1 == l.positive as u32;
            let satisfied = self
                .clauses
                .iter()
                .filter(|(a, b)| truthy(a) || truthy(b))
                .count();
            best = best.max(satisfied);
        }
        Ok(best)
    }
}

/// Two-slot satisfiability reduction. Keyword j stands for variable z_j:
/// slot 1 is the literal z_j, slot 2 the literal not-z_j, so an integral
/// allocation is a truth assignment. Scenario i covers clause C_i and pays
/// exactly 1/m when the clause is satisfied: all costs are 1, the budget is
/// 1 and clicks sit on the two literal slots, so an over-budget scenario
/// (both literals selected) is scaled back to the same contribution. The
/// expected payoff of an optimal allocation is therefore m'/m for a formula
/// whose best assignment satisfies m' clauses.
pub fn gen_sat_instance(formula: &Cnf2Sat3) -> Result<MultiSlotInstance> {
    formula.validate()?;
    let n = formula.vars;
    let m = formula.clauses.len();
    let mut clicks = vec![vec![vec![rat_zero(); 2]; n]; m];
    for (i, (a, b)) in formula.clauses.iter().enumerate() {
        for lit in [a, b] {
            let slot = if lit.positive { 0 } else { 1 };
            clicks[i][lit.var][slot] = rat_one();
        }
    }
    let eps = vec![Rat::new(BigInt::one(), BigInt::from(m as u64)); m];
    let mut instance = MultiSlotInstance {
        budget: rat_one(),
        kappa: 1,
        slots: 2,
        eps,
        clicks,
        base_costs: vec![vec![rat_one(); 2]; n],
        real_costs: vec![vec![vec![rat_one(); 2]; n]; m],
        relaxed_integrality: false,
    };
    instance.validate()?;
    Ok(instance)
}

/// Random valid MAX-2SAT-3 formula: three occurrences of every variable are
/// shuffled and paired into clauses, re-shuffling until no clause repeats a
/// variable, with uniform literal polarities.
pub fn random_formula(vars: usize, seed: u64) -> Result<Cnf2Sat3> {
    if vars < 2 || vars % 2 != 0 {
        return Err(Error::InvalidFormula(
            "need an even variable count of at least 2".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut occurrences: Vec<usize> = (0..vars).flat_map(|v| [v, v, v]).collect();
    for _ in 0..10_000 {
        occurrences.shuffle(&mut rng);
        if occurrences.chunks(2).any(|pair| pair[0] == pair[1]) {
            continue;
        }
        let clauses = occurrences
            .chunks(2)
            .map(|pair| {
                (
                    Literal {
                        var: pair[0],
                        positive: rng.gen_bool(0.5),
                    },
                    Literal {
                        var: pair[1],
                        positive: rng.gen_bool(0.5),
                    },
                )
            })
            .collect();
        let formula = Cnf2Sat3 { vars, clauses };
        formula.validate()?;
        return Ok(formula);
    }
    Err(Error::InvalidFormula(
        "could not pair occurrences into distinct-variable clauses".into(),
    ))
}

/// Pads a single-slot program to s slots with zero-value slots, preserving
/// the optimum: the extra slots have y = 0 so no solution gains by touching
/// them.
pub fn embed_single_in_multi(qip: &QipInstance, s: usize) -> Result<QipInstance> {
    if qip.slots != 1 {
        return Err(Error::DimensionMismatch(
            "embedding starts from a single-slot program".into(),
        ));
    }
    if s == 0 {
        return Err(Error::EmptyInstance);
    }
    // value-like grids pad with zeros, cost-like grids replicate slot 1
    let pad = |grid: &Vec<Vec<Rat>>, zero_fill: bool| -> Vec<Vec<Rat>> {
        grid.iter()
            .map(|kw| {
                let mut slots = vec![kw[0].clone()];
                for _ in 1..s {
                    slots.push(if zero_fill { rat_zero() } else { kw[0].clone() });
                }
                slots
            })
            .collect()
    };
    Ok(QipInstance {
        slots: s,
        y: qip.y.iter().map(|g| pad(g, true)).collect(),
        w: qip.w.iter().map(|g| pad(g, true)).collect(),
        costs: qip.costs.iter().map(|g| pad(g, false)).collect(),
        base_costs: pad(&qip.base_costs, false),
        budgets: qip.budgets.clone(),
        kappa: qip.kappa,
    })
}

/// Parameters for the seeded random-instance generator.
#[derive(Debug, Clone)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub kappa: u64,
    /// Clicks are drawn uniformly from `0..=max_clicks`.
    pub max_clicks: u64,
    /// Base costs form a non-decreasing integer chain starting at 1 with
    /// uniform increments in `0..=max_base_step`.
    pub max_base_step: u64,
    pub seed: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            n: 4,
            m: 3,
            s: 1,
            kappa: 2,
            max_clicks: 6,
            max_base_step: 3,
            seed: 0,
        }
    }
}

fn random_eps(rng: &mut ChaCha8Rng, m: usize) -> Vec<Rat> {
    // integer weights, renormalized exactly so the probabilities sum to 1
    let weights: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=16)).collect();
    let total: u64 = weights.iter().sum();
    weights
        .iter()
        .map(|&w| Rat::new(BigInt::from(w), BigInt::from(total)))
        .collect()
}

/// Deterministic random single-slot instance; both the budget branch and the
/// scaling branch of the payoff are exercised across seeds.
pub fn random_instance(params: &RandomParams) -> Result<SingleSlotInstance> {
    let (n, m) = (params.n, params.m);
    if n == 0 || m == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let eps = random_eps(&mut rng, m);
    let mut d_int = Vec::with_capacity(n);
    let mut current = 1u64;
    for _ in 0..n {
        d_int.push(current);
        current += rng.gen_range(0..=params.max_base_step);
    }
    let clicks: Vec<Vec<Rat>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| rat_uint(rng.gen_range(0..=params.max_clicks)))
                .collect()
        })
        .collect();
    let real_costs: Vec<Vec<Rat>> = (0..m)
        .map(|_| {
            d_int
                .iter()
                .map(|&d| rat_uint(rng.gen_range(d..=params.kappa * d)))
                .collect()
        })
        .collect();
    let mut max_spend = 1u64;
    for i in 0..m {
        let mut spend = 0u64;
        for j in 0..n {
            let a: u64 = clicks[i][j].to_integer().try_into().unwrap_or(u64::MAX);
            let c: u64 = real_costs[i][j].to_integer().try_into().unwrap_or(u64::MAX);
            spend = spend.saturating_add(a.saturating_mul(c));
        }
        max_spend = max_spend.max(spend);
    }
    let budget = rat_uint(rng.gen_range(1..=max_spend));
    let mut instance = SingleSlotInstance {
        budget,
        kappa: params.kappa,
        eps,
        clicks,
        base_costs: d_int.iter().map(|&d| rat_uint(d)).collect(),
        real_costs,
        relaxed_integrality: false,
        permutation: (0..n).collect(),
    };
    instance.validate()?;
    Ok(instance)
}

/// Multi-slot counterpart of [`random_instance`]; base costs are
/// additionally non-decreasing across the slots of each keyword.
pub fn random_multi_instance(params: &RandomParams) -> Result<MultiSlotInstance> {
    let (n, m, s) = (params.n, params.m, params.s);
    if n == 0 || m == 0 || s == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let eps = random_eps(&mut rng, m);
    let mut d_int = vec![vec![0u64; s]; n];
    let mut keyword_base = 1u64;
    for j in 0..n {
        let mut current = keyword_base;
        for k in 0..s {
            d_int[j][k] = current;
            current += rng.gen_range(0..=params.max_base_step);
        }
        keyword_base += rng.gen_range(0..=params.max_base_step);
    }
    let clicks: Vec<Vec<Vec<Rat>>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    (0..s)
                        .map(|_| rat_uint(rng.gen_range(0..=params.max_clicks)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let real_costs: Vec<Vec<Vec<Rat>>> = (0..m)
        .map(|_| {
            d_int
                .iter()
                .map(|kw| {
                    kw.iter()
                        .map(|&d| rat_uint(rng.gen_range(d..=params.kappa * d)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut max_spend = 1u64;
    for i in 0..m {
        let mut spend = 0u64;
        for j in 0..n {
            // at most one slot per keyword: bound by the priciest slot
            let mut worst = 0u64;
            for k in 0..s {
                let a: u64 = clicks[i][j][k].to_integer().try_into().unwrap_or(u64::MAX);
                let c: u64 = real_costs[i][j][k]
                    .to_integer()
                    .try_into()
                    .unwrap_or(u64::MAX);
                worst = worst.max(a.saturating_mul(c));
            }
            spend = spend.saturating_add(worst);
        }
        max_spend = max_spend.max(spend);
    }
    let budget = rat_uint(rng.gen_range(1..=max_spend));
    let mut instance = MultiSlotInstance {
        budget,
        kappa: params.kappa,
        slots: s,
        eps,
        clicks,
        base_costs: d_int
            .iter()
            .map(|kw| kw.iter().map(|&d| rat_uint(d)).collect())
            .collect(),
        real_costs,
        relaxed_integrality: false,
    };
    instance.validate()?;
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{brute_int_oracle, OracleConfig};
    use crate::model::to_qip_multi;
    use crate::rational::rat_int;

    #[test]
    fn edge_graph_value_matrix() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let qip = gen_from_graph(&g, 2, 1, &CostRule::Default).unwrap();
        assert_eq!(qip.y[0][0][0], rat_zero());
        assert_eq!(qip.y[0][1][0], rat_one());
        assert_eq!(qip.y[1][0][0], rat_one());
        assert_eq!(qip.y[1][1][0], rat_one());
        assert_eq!(qip.base_costs[1][0], rat_int(2));
        // B_i = c_{i, n+1-i}
        assert_eq!(qip.budgets[0], rat_int(2));
        assert_eq!(qip.budgets[1], rat_one());
    }

    #[test]
    fn triangle_payoff_tracks_independence_number_one() {
        let qip = gen_from_graph(&Graph::complete(3), 100, 1, &CostRule::Default).unwrap();
        let sol = brute_int_oracle(&qip, &OracleConfig::default()).unwrap();
        assert!(sol.total_payoff >= rat_one());
        assert!(sol.total_payoff < rat_int(2));
    }

    #[test]
    fn path_payoff_tracks_independence_number_two() {
        let qip = gen_from_graph(&Graph::path(3), 100, 1, &CostRule::Default).unwrap();
        let sol = brute_int_oracle(&qip, &OracleConfig::default()).unwrap();
        assert!(sol.total_payoff >= rat_int(2));
        assert!(sol.total_payoff < rat_int(3));
    }

    #[test]
    fn independence_number_small_graphs() {
        assert_eq!(Graph::complete(4).max_independent_set().unwrap(), 1);
        assert_eq!(Graph::path(4).max_independent_set().unwrap(), 2);
        assert_eq!(Graph::new(3, []).unwrap().max_independent_set().unwrap(), 3);
    }

    fn small_formula() -> Cnf2Sat3 {
        // (z1 or z2), (z1 or !z2), (!z1 or z2): satisfiable, 3 occurrences each
        let lit = |var, positive| Literal { var, positive };
        Cnf2Sat3 {
            vars: 2,
            clauses: vec![
                (lit(0, true), lit(1, true)),
                (lit(0, true), lit(1, false)),
                (lit(0, false), lit(1, true)),
            ],
        }
    }

    #[test]
    fn sat_clause_maps_to_literal_slots() {
        let instance = gen_sat_instance(&small_formula()).unwrap();
        // first clause (z1 or z2): clicks at slot 1 of both keywords
        assert_eq!(instance.clicks[0][0][0], rat_one());
        assert_eq!(instance.clicks[0][1][0], rat_one());
        assert_eq!(instance.clicks[0][0][1], rat_zero());
        // second clause has !z2 on slot 2
        assert_eq!(instance.clicks[1][1][1], rat_one());
    }

    #[test]
    fn satisfiable_formula_pays_one() {
        let formula = small_formula();
        assert_eq!(formula.max_sat_value().unwrap(), 3);
        let instance = gen_sat_instance(&formula).unwrap();
        let sol = brute_int_oracle(&to_qip_multi(&instance), &OracleConfig::default()).unwrap();
        assert_eq!(sol.total_payoff, rat_one());
    }

    #[test]
    fn invalid_formulas_are_rejected() {
        let lit = |var, positive| Literal { var, positive };
        let mut formula = small_formula();
        formula.clauses[0] = (lit(0, true), lit(0, false));
        assert!(matches!(
            gen_sat_instance(&formula),
            Err(Error::InvalidFormula(_))
        ));
        let mut missing = small_formula();
        missing.clauses.pop();
        assert!(matches!(
            missing.validate(),
            Err(Error::InvalidFormula(_))
        ));
    }

    #[test]
    fn random_formulas_are_valid_and_deterministic() {
        for seed in 0..20 {
            let f1 = random_formula(6, seed).unwrap();
            let f2 = random_formula(6, seed).unwrap();
            assert_eq!(f1, f2);
            f1.validate().unwrap();
        }
    }

    #[test]
    fn sdp_gap_certificate_is_tight() {
        for m in 2..=4 {
            let (qip, cert) = gen_sdp_gap(m, 7).unwrap();
            let report = verify_vector_certificate(&qip, &cert).unwrap();
            assert_eq!(report.objective, rat_uint(m as u64));
            assert!(report.residuals.iter().all(|r| r.is_zero()));
            let oracle = brute_int_oracle(&qip, &OracleConfig::default()).unwrap();
            assert!(oracle.total_payoff < rat_int(2));
        }
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let (qip, mut cert) = gen_sdp_gap(3, 7).unwrap();
        cert.inner[0][0] = rat_one();
        assert!(matches!(
            verify_vector_certificate(&qip, &cert),
            Err(Error::CertificateMismatch(_))
        ));
    }

    #[test]
    fn embedding_preserves_the_oracle_optimum() {
        let qip = gen_from_graph(&Graph::path(3), 3, 1, &CostRule::Default).unwrap();
        let config = OracleConfig::default();
        let single = brute_int_oracle(&qip, &config).unwrap();
        let embedded = embed_single_in_multi(&qip, 3).unwrap();
        let multi = brute_int_oracle(&embedded, &config).unwrap();
        assert_eq!(single.total_payoff, multi.total_payoff);
        // padded slots carry no value, so the optimum never selects them
        for kw in &multi.allocation.x {
            assert!(kw[1].is_zero() && kw[2].is_zero());
        }
    }

    #[test]
    fn embed_s1_is_identity() {
        let qip = gen_from_graph(&Graph::path(3), 3, 1, &CostRule::Default).unwrap();
        assert_eq!(embed_single_in_multi(&qip, 1).unwrap(), qip);
    }

    #[test]
    fn random_instances_validate_and_repeat() {
        for seed in 0..50 {
            let params = RandomParams {
                seed,
                ..Default::default()
            };
            let a = random_instance(&params).unwrap();
            let b = random_instance(&params).unwrap();
            assert_eq!(a, b);
            let multi = RandomParams {
                s: 3,
                seed,
                ..Default::default()
            };
            random_multi_instance(&multi).unwrap();
        }
    }

    #[test]
    fn kappa_one_forces_costs_to_base() {
        let params = RandomParams {
            kappa: 1,
            seed: 9,
            ..Default::default()
        };
        let inst = random_instance(&params).unwrap();
        for row in &inst.real_costs {
            assert_eq!(*row, inst.base_costs);
        }
    }
}
