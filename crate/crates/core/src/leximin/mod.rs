//! Leximin-optimal connection-time plans.
//!
//! Stage `k` maximizes the smallest utility among agents not yet fixed,
//! with fixed agents held at their locked levels. Columns (configurations)
//! are generated by pricing the master's duals through the
//! weighted-utilitarian oracle. After each stage every free agent is tested
//! by maximizing its own utility under the stage constraints; agents that
//! cannot rise above the stage level are locked there. A last solve over the
//! locked levels yields the plan.

mod master;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geoknapsack::{OracleMode, WeightedOracle};
use crate::model::{utilities_of, AllocationPlan, Configuration, Instance, UtilityVector};
use crate::ratio::{check_epsilon, Rational};

use master::{Goal, Master, MasterOutcome};

pub const DEFAULT_EXACT_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Exact,
    Fptas,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub index: usize,
    /// Optimal smallest utility among the agents free at this stage.
    pub level: Rational,
    /// Agents locked at `level` after this stage.
    pub locked: Vec<usize>,
    pub columns_added: usize,
    pub lp_solves: usize,
    pub lp_iterations: usize,
    /// Pricing weights and threshold from the stage's final max-min duals.
    pub weights: Vec<Rational>,
    pub threshold: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub plan: AllocationPlan,
    pub utilities: UtilityVector,
    /// Claimed approximation factor.
    pub alpha: Rational,
    pub stages: Vec<StageRecord>,
    pub pool_size: usize,
    pub oracle_calls: usize,
}

impl SolveReport {
    /// Smallest utility, the egalitarian value.
    pub fn min_utility(&self) -> Rational {
        self.utilities.min().cloned().unwrap_or_else(Rational::one)
    }
}

/// Mutable state of the stage loop.
struct StageState {
    fixed: Vec<Option<Rational>>,
    stage: usize,
}

impl StageState {
    fn free(&self) -> Vec<usize> {
        (0..self.fixed.len()).filter(|&i| self.fixed[i].is_none()).collect()
    }
}

fn oracle_for(epsilon: &Rational, kind: OracleKind) -> Result<WeightedOracle> {
    let mode = match kind {
        OracleKind::Exact => OracleMode::Exact,
        OracleKind::Fptas => {
            check_epsilon(epsilon)?;
            OracleMode::Fptas(epsilon.clone())
        }
    };
    Ok(WeightedOracle::new(mode))
}

fn seeded_master<'a>(instance: &'a Instance, oracle: WeightedOracle) -> Result<Master<'a>> {
    let n = instance.n();
    let mut master = Master::new(instance, Some(oracle));
    master.add(Configuration::empty())?;
    let mut seeds: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()).collect();
    seeds.push(vec![Rational::one(); n]);
    for w in seeds {
        if let Some((config, _)) = master.ask_oracle(&w)? {
            master.add(config)?;
        }
    }
    Ok(master)
}

fn full_pool_master(instance: &Instance, limit: usize) -> Result<Master<'_>> {
    let n = instance.n();
    if n > limit || n >= 63 {
        return Err(Error::TooLarge { n, limit });
    }
    let mut master = Master::new(instance, None);
    for mask in 0u64..(1u64 << n) {
        let config = Configuration::new((0..n).filter(|&i| mask >> i & 1 == 1));
        if instance.is_feasible(&config)? {
            master.add(config)?;
        }
    }
    Ok(master)
}

fn plan_from(master: &Master<'_>, outcome: &MasterOutcome) -> AllocationPlan {
    AllocationPlan::new(
        master.pool.iter().zip(&outcome.times).filter(|(_, t)| !t.is_zero()).map(|(c, t)| (c.clone(), t.clone())),
    )
    .normalized()
}

fn report(
    instance: &Instance,
    master: &Master<'_>,
    outcome: &MasterOutcome,
    alpha: Rational,
    stages: Vec<StageRecord>,
) -> Result<SolveReport> {
    let plan = plan_from(master, outcome);
    let utilities = utilities_of(instance, &plan)?;
    Ok(SolveReport { plan, utilities, alpha, stages, pool_size: master.pool.len(), oracle_calls: master.oracle_calls })
}

/// One max-min stage; returns the outcome and the stage record without locks.
fn run_stage(master: &mut Master<'_>, state: &StageState) -> Result<(MasterOutcome, StageRecord)> {
    let (cols, solves, iters) = (master.columns_added, master.lp_solves, master.lp_iterations);
    let outcome = master.solve(Goal::Lowest, &state.fixed)?;
    let record = StageRecord {
        index: state.stage,
        level: outcome.value.clone(),
        locked: Vec::new(),
        columns_added: master.columns_added - cols,
        lp_solves: master.lp_solves - solves,
        lp_iterations: master.lp_iterations - iters,
        weights: outcome.weights.clone(),
        threshold: outcome.threshold.clone(),
    };
    Ok((outcome, record))
}

fn run_stages(instance: &Instance, master: &mut Master<'_>, alpha: Rational) -> Result<SolveReport> {
    let n = instance.n();
    let mut state = StageState { fixed: vec![None; n], stage: 1 };
    let mut stages = Vec::new();
    while !state.free().is_empty() {
        let (cols, solves, iters) = (master.columns_added, master.lp_solves, master.lp_iterations);
        let (outcome, mut record) = run_stage(master, &state)?;
        let level = outcome.value.clone();
        let free = state.free();

        // Agents already above the level in some feasible solution cannot be saturated.
        let mut above = vec![false; n];
        for &i in &free {
            above[i] = outcome.utilities[i] > level;
        }
        let floors: Vec<Option<Rational>> =
            state.fixed.iter().map(|f| Some(f.clone().unwrap_or_else(|| level.clone()))).collect();
        let mut locked = Vec::new();
        let mut best_seen: Vec<(usize, Rational)> = Vec::new();
        for &i in &free {
            if above[i] {
                continue;
            }
            let test = master.solve(Goal::Agent(i), &floors)?;
            if test.value <= level {
                locked.push(i);
            } else {
                for &k in &free {
                    if test.utilities[k] > level {
                        above[k] = true;
                    }
                }
            }
            best_seen.push((i, test.value));
        }
        if locked.is_empty() {
            // Only reachable with an approximate oracle: lock the least improvable agents.
            let lowest = best_seen.iter().map(|(_, v)| v.clone()).min();
            match lowest {
                Some(low) => locked.extend(best_seen.iter().filter(|(_, v)| *v == low).map(|(i, _)| *i)),
                None => locked.extend(free.iter().copied().filter(|&i| outcome.utilities[i] == level)),
            }
            if locked.is_empty() {
                locked = free.clone();
            }
        }
        for &i in &locked {
            state.fixed[i] = Some(level.clone());
        }
        record.locked = locked;
        record.columns_added = master.columns_added - cols;
        record.lp_solves = master.lp_solves - solves;
        record.lp_iterations = master.lp_iterations - iters;
        stages.push(record);
        state.stage += 1;
    }

    let floors: Vec<Option<Rational>> = state.fixed.clone();
    let last = master.solve(Goal::Total, &floors)?;
    report(instance, master, &last, alpha, stages)
}

/// Approximately leximin-optimal plan with a factor of `1 - epsilon` in
/// FPTAS mode and exact in exact mode.
pub fn solve_leximin(instance: &Instance, epsilon: &Rational, oracle: OracleKind) -> Result<SolveReport> {
    let weighted = oracle_for(epsilon, oracle)?;
    let alpha = weighted.mode.alpha();
    let mut master = seeded_master(instance, weighted)?;
    run_stages(instance, &mut master, alpha)
}

/// Exact leximin over the full enumerated pool of feasible configurations.
pub fn solve_leximin_exact(instance: &Instance) -> Result<SolveReport> {
    solve_leximin_exact_with_limit(instance, crate::brute_limit(DEFAULT_EXACT_LIMIT))
}

pub fn solve_leximin_exact_with_limit(instance: &Instance, limit: usize) -> Result<SolveReport> {
    let mut master = full_pool_master(instance, limit)?;
    run_stages(instance, &mut master, Rational::one())
}

/// Only the first stage: a plan maximizing the smallest utility.
pub fn solve_egalitarian(instance: &Instance, epsilon: &Rational, oracle: OracleKind) -> Result<SolveReport> {
    let weighted = oracle_for(epsilon, oracle)?;
    let alpha = weighted.mode.alpha();
    let mut master = seeded_master(instance, weighted)?;
    let state = StageState { fixed: vec![None; instance.n()], stage: 1 };
    let (outcome, record) = run_stage(&mut master, &state)?;
    report(instance, &master, &outcome, alpha, vec![record])
}

/// Egalitarian value over the full enumerated pool.
pub fn solve_egalitarian_exact(instance: &Instance) -> Result<SolveReport> {
    let mut master = full_pool_master(instance, crate::brute_limit(DEFAULT_EXACT_LIMIT))?;
    let state = StageState { fixed: vec![None; instance.n()], stage: 1 };
    let (outcome, record) = run_stage(&mut master, &state)?;
    report(instance, &master, &outcome, Rational::one(), vec![record])
}
