//! Command-line front end: solver dispatch, oracle comparisons, instance
//! generation, a benchmark harness and the dual search.
//!
//! Reports go to stdout as canonical JSON (sorted keys, rational strings,
//! byte-identical across runs with the same seed); human-readable tables and
//! timings go to stderr. Exit codes are a stable contract: 0 ok, 1 I/O,
//! 2 validation, 3 resource cap, 4 ratio-bound violation.

use crate::approx_multi::{
    flatten_and_normalize, per_scenario_multi_approx, randomized_round, solve_multi_qip,
    RoundingConfig,
};
use crate::approx_single::{
    best_scenario_approx, group_uniform_approx, solve_single_qip, truncate_kappa_qip, Mode,
};
use crate::dual::{dual_binary_search, exact_probe, DualQuery};
use crate::error::{Error, Result};
use crate::exact::{
    alpha_grid_solve, brute_int_oracle, dp_solve, frac_grid_oracle, solve_fixed_m_int,
    OracleConfig,
};
use crate::hardgen::{
    gen_from_graph, gen_sat_instance, gen_sdp_gap, random_formula, random_instance,
    random_multi_instance, CostRule, Graph, RandomParams,
};
use crate::io::{
    instance_digest, instance_to_string, read_instance, write_instance, Instance,
};
use crate::model::{
    from_qip, recheck_solution, to_qip, to_qip_multi, QipInstance, Solution,
};
use crate::rational::{parse_rational, rat_one, rat_to_string, Rat};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "stochopt", version, about = "Scenario-based stochastic budget optimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve an instance with one algorithm (or the combined solver).
    Solve(SolveArgs),
    /// Run all applicable algorithms plus an oracle and check ratio bounds.
    Compare(CompareArgs),
    /// Generate an instance from one of the built-in families.
    Gen(GenArgs),
    /// Time the combined solver over a corpus of instance files.
    Bench(BenchArgs),
    /// Minimize the budget needed for a target payoff (bi-criteria search).
    Dual(DualArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Int,
    Frac,
}

impl ModeArg {
    fn mode(self) -> Mode {
        match self {
            ModeArg::Int => Mode::Integral,
            ModeArg::Frac => Mode::Fractional,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Auto,
    BestScenario,
    Group,
    MultiFlat,
    Round,
    FixedM,
    Dp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Int,
    FracGrid,
    AlphaGrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Graph,
    Sat,
    Sdpgap,
    Random,
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Absolute-error target for the grid-based solvers, as a rational.
    #[arg(long, default_value = "1/100")]
    pub delta: String,
    /// Divisor constant for the rounding scale factor ln(m)/scale.
    #[arg(long, default_value_t = 100)]
    pub scale_constant: u64,
    /// Cap on enumerated states for oracles and grid solvers.
    #[arg(long, default_value_t = 1 << 20)]
    pub max_enumeration: usize,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Int)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
    pub algo: AlgoArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Int)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = OracleArg::Int)]
    pub oracle: OracleArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// graph family: vertex count.
    #[arg(long)]
    pub vertices: Option<usize>,
    /// graph family: comma-separated edges, e.g. "0-1,1-2".
    #[arg(long, default_value = "")]
    pub edges: String,
    /// graph/sdpgap families: geometric base for the keyword costs.
    #[arg(long, default_value_t = 3)]
    pub base: u64,
    #[arg(long, default_value_t = 1)]
    pub kappa: u64,
    /// sat family: variable count (even).
    #[arg(long)]
    pub vars: Option<usize>,
    /// sdpgap family and random family: scenario count.
    #[arg(long)]
    pub m: Option<usize>,
    /// random family: keyword count.
    #[arg(long)]
    pub n: Option<usize>,
    /// random family: slot count (1 produces a single-slot instance).
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub max_clicks: u64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    pub corpus: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct DualArgs {
    pub instance: PathBuf,
    /// Target expected payoff, as a rational.
    #[arg(long)]
    pub target: String,
    /// Probe with the exact oracle (rho = 1) or the combined approximation.
    #[arg(long, value_enum, default_value_t = ProbeArg::Oracle)]
    pub probe: ProbeArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbeArg {
    Oracle,
    Approx,
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub algorithm: String,
    pub payoff: Rat,
    pub certificate: Option<Rat>,
    pub oracle_gap: Option<Rat>,
    pub wall_ms: u128,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub digest: String,
    pub seed: u64,
    pub delta: Rat,
    pub max_enumeration: usize,
    pub oracle: Option<(String, Rat)>,
    pub rows: Vec<ReportRow>,
    pub violations: Vec<String>,
}

impl RunReport {
    /// Canonical JSON: wall times are excluded so reports with the same seed
    /// are byte-identical; timings appear in the stderr table instead.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "algorithm": r.algorithm,
                    "payoff": rat_to_string(&r.payoff),
                    "certificate": r.certificate.as_ref().map(rat_to_string),
                    "oracle_gap": r.oracle_gap.as_ref().map(rat_to_string),
                })
            })
            .collect();
        json!({
            "digest": self.digest,
            "config": {
                "seed": self.seed,
                "delta": rat_to_string(&self.delta),
                "max_enumeration": self.max_enumeration,
            },
            "oracle": self.oracle.as_ref().map(|(name, payoff)| json!({
                "algorithm": name,
                "payoff": rat_to_string(payoff),
            })),
            "rows": rows,
            "violations": self.violations,
        })
    }

    pub fn human_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("instance {}\n", &self.digest[..12.min(self.digest.len())]));
        out.push_str(&format!(
            "{:<22} {:>14} {:>14} {:>10} {:>8}\n",
            "algorithm", "payoff", "certificate", "gap", "ms"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<22} {:>14} {:>14} {:>10} {:>8}\n",
                r.algorithm,
                rat_to_string(&r.payoff),
                r.certificate.as_ref().map(rat_to_string).unwrap_or_else(|| "-".into()),
                r.oracle_gap.as_ref().map(rat_to_string).unwrap_or_else(|| "-".into()),
                r.wall_ms,
            ));
        }
        if let Some((name, payoff)) = &self.oracle {
            out.push_str(&format!("oracle {name}: {}\n", rat_to_string(payoff)));
        }
        for v in &self.violations {
            out.push_str(&format!("VIOLATION: {v}\n"));
        }
        out
    }
}

fn parse_delta(text: &str) -> Result<Rat> {
    parse_rational(text)
        .filter(|d| !d.is_zero() && d > &Rat::zero())
        .ok_or_else(|| Error::Parse(format!("invalid delta: {text}")))
}

fn oracle_config(common: &CommonArgs) -> Result<OracleConfig> {
    Ok(OracleConfig {
        grid_steps: 16,
        delta: parse_delta(&common.delta)?,
        max_enumeration: common.max_enumeration,
    })
}

fn rounding_config(common: &CommonArgs) -> RoundingConfig {
    RoundingConfig {
        seed: common.seed,
        scale_constant: Rat::from_integer(common.scale_constant.into()),
        max_retries: 16,
    }
}

fn load(path: &Path) -> Result<(Instance, QipInstance)> {
    let instance = read_instance(path)?;
    let qip = match &instance {
        Instance::Single(i) => to_qip(i),
        Instance::Multi(i) => to_qip_multi(i),
    };
    Ok((instance, qip))
}

fn run_algo(
    algo: AlgoArg,
    instance: &Instance,
    qip: &QipInstance,
    mode: Mode,
    common: &CommonArgs,
) -> Result<Solution> {
    let oracle_cfg = oracle_config(common)?;
    match algo {
        AlgoArg::Auto => match instance {
            Instance::Single(_) => solve_single_qip(qip, mode),
            Instance::Multi(_) => solve_multi_qip(qip, mode, &rounding_config(common)),
        },
        AlgoArg::BestScenario => best_scenario_approx(qip, mode),
        AlgoArg::Group => group_uniform_approx(qip),
        AlgoArg::MultiFlat => flatten_and_normalize(qip),
        AlgoArg::Round => {
            let fractional = flatten_and_normalize(qip)?;
            let outcome = randomized_round(&fractional, qip, &rounding_config(common))?;
            Ok(outcome.solution)
        }
        AlgoArg::FixedM => solve_fixed_m_int(qip, &oracle_cfg),
        AlgoArg::Dp => {
            let alpha = vec![rat_one(); qip.m()];
            dp_solve(qip, &alpha, &oracle_cfg)
        }
    }
}

fn timed_row(qip: &QipInstance, solution: Solution, started: Instant) -> Result<ReportRow> {
    // no algorithm-internal payoff is trusted: re-derive through the model
    recheck_solution(qip, &solution)?;
    Ok(ReportRow {
        algorithm: solution.algorithm.clone(),
        payoff: solution.total_payoff.clone(),
        certificate: solution.ratio_certificate.clone(),
        oracle_gap: None,
        wall_ms: started.elapsed().as_millis(),
    })
}

pub fn cmd_solve(args: &SolveArgs) -> Result<RunReport> {
    let (instance, qip) = load(&args.instance)?;
    let started = Instant::now();
    let solution = run_algo(args.algo, &instance, &qip, args.mode.mode(), &args.common)?;
    let row = timed_row(&qip, solution, started)?;
    Ok(RunReport {
        digest: instance_digest(&instance),
        seed: args.common.seed,
        delta: parse_delta(&args.common.delta)?,
        max_enumeration: args.common.max_enumeration,
        oracle: None,
        rows: vec![row],
        violations: Vec::new(),
    })
}

pub fn cmd_compare(args: &CompareArgs) -> Result<RunReport> {
    let (instance, qip) = load(&args.instance)?;
    let mode = args.mode.mode();
    let oracle_cfg = oracle_config(&args.common)?;

    let mut rows = Vec::new();
    let mut push = |result: Result<Solution>, started: Instant| -> Result<()> {
        match result {
            Ok(solution) => {
                rows.push(timed_row(&qip, solution, started)?);
                Ok(())
            }
            // grouping is defined only for kappa = 1; skip it elsewhere
            Err(Error::KappaNotOne(_)) => Ok(()),
            Err(e) => Err(e),
        }
    };
    match &instance {
        Instance::Single(_) => {
            let t = Instant::now();
            push(best_scenario_approx(&qip, mode), t)?;
            let t = Instant::now();
            push(group_uniform_approx(&qip), t)?;
            let t = Instant::now();
            push(truncate_kappa_qip(&qip).map(|(s, _)| s), t)?;
            let t = Instant::now();
            push(solve_single_qip(&qip, mode), t)?;
        }
        Instance::Multi(_) => {
            let t = Instant::now();
            push(per_scenario_multi_approx(&qip), t)?;
            let t = Instant::now();
            push(flatten_and_normalize(&qip), t)?;
            let t = Instant::now();
            push(
                solve_multi_qip(&qip, mode, &rounding_config(&args.common)),
                t,
            )?;
        }
    }

    let (oracle_name, oracle_solution) = match args.oracle {
        OracleArg::Int => ("brute-int-oracle", brute_int_oracle(&qip, &oracle_cfg)?),
        OracleArg::FracGrid => ("frac-grid-oracle", frac_grid_oracle(&qip, &oracle_cfg)?),
        OracleArg::AlphaGrid => ("alpha-grid-lp", alpha_grid_solve(&qip, &oracle_cfg)?),
    };
    recheck_solution(&qip, &oracle_solution)?;
    let oracle_payoff = oracle_solution.total_payoff.clone();

    let mut violations = Vec::new();
    for row in rows.iter_mut() {
        if !row.payoff.is_zero() {
            row.oracle_gap = Some(&oracle_payoff / &row.payoff);
        }
        // the certificate is a certified upper bound on OPT and the oracle a
        // lower bound, so oracle > certificate is a genuine bug signal
        if let Some(cert) = &row.certificate {
            if &oracle_payoff > cert {
                violations.push(format!(
                    "{}: oracle payoff {} exceeds certificate {}",
                    row.algorithm,
                    rat_to_string(&oracle_payoff),
                    rat_to_string(cert)
                ));
            }
        }
    }
    Ok(RunReport {
        digest: instance_digest(&instance),
        seed: args.common.seed,
        delta: oracle_cfg.delta.clone(),
        max_enumeration: args.common.max_enumeration,
        oracle: Some((oracle_name.into(), oracle_payoff)),
        rows,
        violations,
    })
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|pair| {
            let (u, v) = pair
                .trim()
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("invalid edge `{pair}`, expected u-v")))?;
            let u = u.trim().parse().map_err(|_| Error::Parse(format!("invalid vertex `{u}`")))?;
            let v = v.trim().parse().map_err(|_| Error::Parse(format!("invalid vertex `{v}`")))?;
            Ok((u, v))
        })
        .collect()
}

pub fn cmd_gen(args: &GenArgs) -> Result<Instance> {
    match args.family {
        FamilyArg::Graph => {
            let vertices = args
                .vertices
                .ok_or_else(|| Error::Parse("graph family needs --vertices".into()))?;
            let graph = Graph::new(vertices, parse_edges(&args.edges)?)?;
            let qip = gen_from_graph(&graph, args.base, args.kappa, &CostRule::Default)?;
            Ok(Instance::Single(from_qip(&qip)?))
        }
        FamilyArg::Sdpgap => {
            let m = args
                .m
                .ok_or_else(|| Error::Parse("sdpgap family needs --m".into()))?;
            let (qip, _cert) = gen_sdp_gap(m, args.base)?;
            Ok(Instance::Single(from_qip(&qip)?))
        }
        FamilyArg::Sat => {
            let vars = args
                .vars
                .ok_or_else(|| Error::Parse("sat family needs --vars".into()))?;
            let formula = random_formula(vars, args.seed)?;
            Ok(Instance::Multi(gen_sat_instance(&formula)?))
        }
        FamilyArg::Random => {
            let params = RandomParams {
                n: args.n.ok_or_else(|| Error::Parse("random family needs --n".into()))?,
                m: args.m.ok_or_else(|| Error::Parse("random family needs --m".into()))?,
                s: args.s,
                kappa: args.kappa,
                max_clicks: args.max_clicks,
                max_base_step: 3,
                seed: args.seed,
            };
            if args.s <= 1 {
                Ok(Instance::Single(random_instance(&params)?))
            } else {
                Ok(Instance::Multi(random_multi_instance(&params)?))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub file: String,
    pub algorithm: String,
    pub payoff: Rat,
    pub median_ms: u128,
}

pub fn cmd_bench(args: &BenchArgs) -> Result<Vec<BenchRow>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(&args.corpus)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().map_or(false, |e| e == "json"))
        .collect();
    files.sort();
    let repeat = args.repeat.max(1);
    use rayon::prelude::*;
    let rows: Vec<Result<BenchRow>> = files
        .par_iter()
        .map(|file| {
            let (instance, qip) = load(file)?;
            let mode = Mode::Integral;
            let mut timings = Vec::with_capacity(repeat);
            let mut solution = None;
            for _ in 0..repeat {
                let started = Instant::now();
                let sol = run_algo(AlgoArg::Auto, &instance, &qip, mode, &args.common)?;
                timings.push(started.elapsed().as_millis());
                solution = Some(sol);
            }
            let solution = solution.expect("repeat >= 1");
            recheck_solution(&qip, &solution)?;
            timings.sort_unstable();
            Ok(BenchRow {
                file: file
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                algorithm: solution.algorithm.clone(),
                payoff: solution.total_payoff.clone(),
                median_ms: timings[timings.len() / 2],
            })
        })
        .collect();
    rows.into_iter().collect()
}

pub fn cmd_dual(args: &DualArgs) -> Result<Value> {
    let (instance, _) = load(&args.instance)?;
    let single = match instance {
        Instance::Single(i) => i,
        Instance::Multi(_) => {
            return Err(Error::DimensionMismatch(
                "the dual search runs on single-slot instances".into(),
            ))
        }
    };
    let target = parse_rational(&args.target)
        .ok_or_else(|| Error::Parse(format!("invalid target: {}", args.target)))?;
    let oracle_cfg = oracle_config(&args.common)?;
    let (rho, result) = match args.probe {
        ProbeArg::Oracle => {
            let query = DualQuery {
                target: target.clone(),
                rho: rat_one(),
            };
            (
                rat_one(),
                dual_binary_search(&single, &query, exact_probe(&oracle_cfg))?,
            )
        }
        ProbeArg::Approx => {
            // the combined integral solver guarantees a factor of 2m
            let rho = Rat::from_integer((2 * single.m() as u64).into());
            let query = DualQuery {
                target: target.clone(),
                rho: rho.clone(),
            };
            let result = dual_binary_search(&single, &query, |probe| {
                crate::approx_single::solve_single(probe, Mode::Integral)
            })?;
            (rho, result)
        }
    };
    Ok(json!({
        "budget": rat_to_string(&result.budget),
        "payoff": rat_to_string(&result.solution.total_payoff),
        "probes": result.probes,
        "rho": rat_to_string(&rho),
        "target": rat_to_string(&target),
    }))
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => 1,
        Error::TooLarge { .. } | Error::NumericLimit => 3,
        _ => 2,
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("STOCHOPT_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Solve(args) => {
            let report = cmd_solve(args)?;
            println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("report JSON"));
            eprint!("{}", report.human_table());
            Ok(0)
        }
        Command::Compare(args) => {
            let report = cmd_compare(args)?;
            println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("report JSON"));
            eprint!("{}", report.human_table());
            Ok(if report.violations.is_empty() { 0 } else { 4 })
        }
        Command::Gen(args) => {
            let instance = cmd_gen(args)?;
            let digest = instance_digest(&instance);
            match &args.out {
                Some(path) => {
                    write_instance(path, &instance)?;
                    println!("{digest}");
                }
                None => {
                    println!("{}", instance_to_string(&instance));
                    eprintln!("{digest}");
                }
            }
            Ok(0)
        }
        Command::Bench(args) => {
            let rows = cmd_bench(args)?;
            println!("file,algorithm,payoff,median_ms");
            eprintln!(
                "{:<28} {:<22} {:>14} {:>10}",
                "file", "algorithm", "payoff", "median_ms"
            );
            for row in &rows {
                println!(
                    "{},{},{},{}",
                    row.file,
                    row.algorithm,
                    rat_to_string(&row.payoff),
                    row.median_ms
                );
                eprintln!(
                    "{:<28} {:<22} {:>14} {:>10}",
                    row.file,
                    row.algorithm,
                    rat_to_string(&row.payoff),
                    row.median_ms
                );
            }
            Ok(0)
        }
        Command::Dual(args) => {
            let value = cmd_dual(args)?;
            println!("{}", serde_json::to_string_pretty(&value).expect("dual JSON"));
            Ok(0)
        }
    }
}

/// Entry point for the binary: parses arguments, runs the command, maps
/// errors to the documented exit codes.
pub fn run() -> i32 {
    let cli = Cli::parse();
    configure_threads();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_instance;
    use std::io::Write;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
        file.write_all(contents.as_bytes()).unwrap();
        file
    }

    const TINY: &str = r#"{
        "type": "single", "n": 1, "m": 1, "budget": 12, "kappa": 2,
        "eps": [1], "d": [1], "a": [[3]], "c": [[2]]
    }"#;

    fn common() -> CommonArgs {
        CommonArgs {
            seed: 0,
            delta: "1/100".into(),
            scale_constant: 100,
            max_enumeration: 1 << 20,
        }
    }

    #[test]
    fn solve_matches_hand_calculation() {
        let file = write_temp(TINY);
        let args = SolveArgs {
            instance: file.path().into(),
            mode: ModeArg::Int,
            algo: AlgoArg::Auto,
            common: common(),
        };
        let report = cmd_solve(&args).unwrap();
        // a=3, c=2, B=12: spend 6 <= 12, payoff 3
        assert_eq!(rat_to_string(&report.rows[0].payoff), "3");
    }

    #[test]
    fn report_json_is_deterministic() {
        let file = write_temp(TINY);
        let make = || {
            let args = SolveArgs {
                instance: file.path().into(),
                mode: ModeArg::Int,
                algo: AlgoArg::Auto,
                common: common(),
            };
            serde_json::to_string(&cmd_solve(&args).unwrap().to_json()).unwrap()
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn compare_finds_no_violations_on_tiny_instance() {
        let file = write_temp(TINY);
        let args = CompareArgs {
            instance: file.path().into(),
            mode: ModeArg::Int,
            oracle: OracleArg::Int,
            common: common(),
        };
        let report = cmd_compare(&args).unwrap();
        assert!(report.violations.is_empty());
        assert!(!report.rows.is_empty());
        let oracle = &report.oracle.as_ref().unwrap().1;
        for row in &report.rows {
            assert!(&row.payoff <= oracle);
        }
    }

    #[test]
    fn gen_random_is_deterministic() {
        let args = GenArgs {
            family: FamilyArg::Random,
            out: None,
            vertices: None,
            edges: String::new(),
            base: 3,
            kappa: 2,
            vars: None,
            m: Some(3),
            n: Some(4),
            s: 1,
            seed: 7,
            max_clicks: 6,
        };
        let a = instance_to_string(&cmd_gen(&args).unwrap());
        let b = instance_to_string(&cmd_gen(&args).unwrap());
        assert_eq!(a, b);
        parse_instance(&a).unwrap();
    }

    #[test]
    fn gen_sdpgap_has_complete_graph_shape() {
        let args = GenArgs {
            family: FamilyArg::Sdpgap,
            out: None,
            vertices: None,
            edges: String::new(),
            base: 3,
            kappa: 1,
            vars: None,
            m: Some(3),
            n: None,
            s: 1,
            seed: 0,
            max_clicks: 6,
        };
        let instance = cmd_gen(&args).unwrap();
        assert_eq!(instance.m(), 3);
        assert_eq!(instance.n(), 3);
    }

    #[test]
    fn bench_empty_corpus_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let args = BenchArgs {
            corpus: dir.path().into(),
            repeat: 3,
            common: common(),
        };
        assert!(cmd_bench(&args).unwrap().is_empty());
    }

    #[test]
    fn dual_finds_minimum_budget() {
        let file = write_temp(TINY);
        let args = DualArgs {
            instance: file.path().into(),
            target: "3".into(),
            probe: ProbeArg::Oracle,
            common: common(),
        };
        let value = cmd_dual(&args).unwrap();
        assert_eq!(value["budget"], "6");
    }
}
