use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use serde_json::{json, Value};

use fairwire::geoknapsack::{solve_exact_integer, solve_fptas, FptasPath, KnapsackInput, Packing};
use fairwire::instances::{
    gen_partition_reduction, gen_random_tree, gen_random_values, parse_instance, parse_plan, plan_to_file,
    serialize_instance, serialize_plan, InstanceDoc, SupplyMode,
};
use fairwire::leximin::{solve_egalitarian, solve_leximin, OracleKind, SolveReport};
use fairwire::model::{renumber, verify_plan};
use fairwire::ratio::{format_rational, frac, is_integer, to_f64, Rational};

use crate::{Format, Mode, Oracle};

pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INTERNAL, message: message.into() }
    }
}

impl From<fairwire::Error> for Failure {
    fn from(e: fairwire::Error) -> Self {
        Failure { code: if e.is_input() { EXIT_INPUT } else { EXIT_INTERNAL }, message: e.to_string() }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<InstanceDoc, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn r(v: &Rational) -> String {
    format_rational(v)
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn report_json(mode: Mode, oracle: Oracle, eps: &Rational, report: &SolveReport) -> Value {
    let sorted: Vec<String> = report.utilities.sorted().iter().map(r).collect();
    json!({
        "mode": match mode { Mode::Leximin => "leximin", Mode::Egalitarian => "egalitarian" },
        "oracle": match oracle { Oracle::Exact => "exact", Oracle::Fptas => "fptas" },
        "epsilon": r(eps),
        "alpha": r(&report.alpha),
        "plan": serde_json::to_value(plan_to_file(&report.plan)).expect("plans serialize"),
        "utilities": report.utilities.values().iter().map(r).collect::<Vec<_>>(),
        "sorted_utilities": sorted,
        "min_utility": r(&report.min_utility()),
        "stages": report.stages.iter().map(|s| json!({
            "index": s.index,
            "level": r(&s.level),
            "locked": s.locked.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "columns_added": s.columns_added,
            "lp_solves": s.lp_solves,
            "lp_iterations": s.lp_iterations,
        })).collect::<Vec<_>>(),
        "pool_size": report.pool_size,
        "oracle_calls": report.oracle_calls,
    })
}

pub fn solve(
    input: &Path,
    output: Option<&Path>,
    mode: Mode,
    oracle: Oracle,
    eps: Option<Rational>,
    format: Format,
) -> Outcome {
    let doc = load_instance(input)?;
    let eps = eps.or(doc.epsilon.clone()).unwrap_or_else(|| frac(1, 10));
    let kind = match oracle {
        Oracle::Exact => OracleKind::Exact,
        Oracle::Fptas => OracleKind::Fptas,
    };
    let report = match mode {
        Mode::Leximin => solve_leximin(&doc.instance, &eps, kind)?,
        Mode::Egalitarian => solve_egalitarian(&doc.instance, &eps, kind)?,
    };
    let verdict = verify_plan(&doc.instance, &report.plan);
    if !verdict.is_ok() {
        return Err(Failure::internal(format!("solver produced an invalid plan: {:?}", verdict.violations)));
    }
    if let Some(path) = output {
        write(path, &serialize_plan(&report.plan))?;
    }
    match format {
        Format::Json => print_json(&report_json(mode, oracle, &eps, &report)),
        Format::Human => {
            println!("alpha: {}", r(&report.alpha));
            println!("plan:");
            for e in &report.plan.entries {
                println!("  {:<24} {}", e.config.to_string(), r(&e.time));
            }
            let list = |v: &[Rational]| v.iter().map(r).collect::<Vec<_>>().join(", ");
            println!("utilities: [{}]", list(report.utilities.values()));
            println!("sorted utilities: [{}]", list(&report.utilities.sorted()));
            println!("min utility: {}", r(&report.min_utility()));
            println!("stages:");
            for s in &report.stages {
                let locked: Vec<String> = s.locked.iter().map(|i| (i + 1).to_string()).collect();
                println!(
                    "  {:>3}  level {:<10} locked [{}]  columns +{}  lp solves {}  pivots {}",
                    s.index,
                    r(&s.level),
                    locked.join(","),
                    s.columns_added,
                    s.lp_solves,
                    s.lp_iterations
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn knapsack(input: &Path, eps: Option<Rational>, format: Format) -> Outcome {
    let doc = load_instance(input)?;
    let values = doc
        .values
        .clone()
        .ok_or_else(|| Failure::input(format!("{}: knapsack needs a value on every agent", input.display())))?;
    let ks = KnapsackInput::from_instance(&doc.instance, values)?;
    let eps = match eps {
        Some(e) => Some(e),
        None if ks.values().iter().all(is_integer) => None,
        None => Some(
            doc.epsilon
                .clone()
                .ok_or_else(|| Failure::input("fractional values need --eps or an epsilon in the file"))?,
        ),
    };
    let (packing, path, theta, stats): (Packing, &str, Option<Rational>, _) = match &eps {
        None => {
            let s = solve_exact_integer(&ks, &renumber(ks.tree()))?;
            (s.packing, "exact", None, Some(s.stats))
        }
        Some(eps) => {
            let s = solve_fptas(&ks, eps)?;
            let path = match s.path {
                FptasPath::Rounded => "rounded",
                FptasPath::Greedy => "greedy",
            };
            (s.packing, path, Some(s.rounding.theta), s.stats)
        }
    };
    let members: Vec<usize> = packing.members.iter().map(|i| i + 1).collect();
    match format {
        Format::Json => print_json(&json!({
            "members": members,
            "value": r(&packing.total_value),
            "size": packing.total_size,
            "capacity": ks.capacity(),
            "epsilon": eps.as_ref().map(r),
            "path": path,
            "theta": theta.as_ref().map(r),
            "cells": stats.map(|s| s.logical_cells),
            "work": stats.map(|s| s.work),
        })),
        Format::Human => {
            let list: Vec<String> = members.iter().map(|i| i.to_string()).collect();
            println!("packing: {{{}}}", list.join(","));
            println!("value: {}", r(&packing.total_value));
            println!("size: {} / {}", packing.total_size, ks.capacity());
            println!("epsilon: {}", eps.as_ref().map_or("none".to_string(), r));
            match &theta {
                Some(t) => println!("path: {path} (theta {})", r(t)),
                None => println!("path: {path}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(input: &Path, plan: &Path, format: Format) -> Outcome {
    let doc = load_instance(input)?;
    let plan = parse_plan(&read(plan)?).map_err(|e| Failure::input(format!("{}: {e}", plan.display())))?;
    let verdict = verify_plan(&doc.instance, &plan);
    match format {
        Format::Json => print_json(&json!({
            "ok": verdict.is_ok(),
            "violations": verdict.violations.iter().map(|v| json!({"class": v.class(), "message": v.to_string()})).collect::<Vec<_>>(),
        })),
        Format::Human => {
            if verdict.is_ok() {
                println!("ok: {} entries, times sum to 1", plan.entries.len());
            }
            for v in &verdict.violations {
                println!("{v}");
            }
        }
    }
    Ok(if verdict.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY_FAILED) })
}

pub struct GenArgs {
    pub partition: Option<Vec<u64>>,
    pub n: usize,
    pub seed: u64,
    pub demands: RangeInclusive<u64>,
    pub supply_fraction: Option<Rational>,
    pub supply: Option<u64>,
    pub values_max: Option<u64>,
    pub output: Option<PathBuf>,
}

pub fn gen(args: GenArgs) -> Outcome {
    let doc = match &args.partition {
        Some(d) => {
            let p = gen_partition_reduction(d)?;
            if p.trivially_no {
                eprintln!("note: odd demand total; no equal split exists");
            }
            InstanceDoc::new(p.instance)
        }
        None => {
            let supply = match (args.supply, args.supply_fraction) {
                (Some(s), _) => SupplyMode::Fixed(s),
                (None, Some(f)) => SupplyMode::Fraction(f),
                (None, None) => SupplyMode::default(),
            };
            let instance = gen_random_tree(args.n, args.seed, args.demands.clone(), supply)?;
            let doc = InstanceDoc::new(instance);
            match args.values_max {
                Some(max) => doc.with_values(gen_random_values(args.n, args.seed, 1..=max)?),
                None => doc,
            }
        }
    };
    let text = serialize_instance(&doc);
    match &args.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

struct BenchRun {
    n: usize,
    seed: u64,
    value_total: u64,
    cells: u64,
    cell_bound: String,
    allocated_cells: u64,
    work: u64,
    work_bound: u128,
    seconds: f64,
    value: Rational,
}

pub fn bench(sizes: &[usize], eps: &Rational, seed: u64, values_max: u64, trials: usize, format: Format) -> Outcome {
    let mut runs = Vec::new();
    for &n in sizes {
        for t in 0..trials {
            let run_seed = seed.wrapping_add(1_000 * n as u64 + t as u64);
            let instance = gen_random_tree(n, run_seed, 1..=10, SupplyMode::default())?;
            let values = gen_random_values(n, run_seed, 1..=values_max)?;
            let ks = KnapsackInput::from_instance(&instance, values)?;
            let start = Instant::now();
            let s = solve_fptas(&ks, eps)?;
            let seconds = start.elapsed().as_secs_f64();
            let stats = s.stats.unwrap_or_default();
            let cell_bound = (Rational::from_integer((n * n).into()) / eps).floor().to_integer() * n + n;
            let side = stats.value_total as u128 + 1;
            runs.push(BenchRun {
                n,
                seed: run_seed,
                value_total: stats.value_total,
                cells: stats.logical_cells,
                cell_bound: cell_bound.to_string(),
                allocated_cells: stats.allocated_cells,
                work: stats.work,
                work_bound: n as u128 * side * side,
                seconds,
                value: s.packing.total_value,
            });
        }
    }
    match format {
        Format::Json => print_json(&json!({
            "epsilon": r(eps),
            "values_max": values_max,
            "seed": seed,
            "runs": runs.iter().map(|b| json!({
                "n": b.n,
                "seed": b.seed,
                "value_total": b.value_total,
                "cells": b.cells,
                "cell_bound": b.cell_bound,
                "allocated_cells": b.allocated_cells,
                "work": b.work,
                "work_bound": b.work_bound.to_string(),
                "seconds": b.seconds,
                "value": r(&b.value),
                "value_approx": to_f64(&b.value),
            })).collect::<Vec<_>>(),
        })),
        Format::Human => {
            println!("epsilon {}  values 1..={values_max}  seed {seed}", r(eps));
            println!(
                "{:>5} {:>10} {:>8} {:>10} {:>12} {:>10} {:>12} {:>9}",
                "n", "seed", "v_N", "cells", "cell bound", "allocated", "work", "seconds"
            );
            for b in &runs {
                println!(
                    "{:>5} {:>10} {:>8} {:>10} {:>12} {:>10} {:>12} {:>9.3}",
                    b.n, b.seed, b.value_total, b.cells, b.cell_bound, b.allocated_cells, b.work, b.seconds
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
