//! Restricted master problems over a pool of configurations, with optional
//! column generation through the weighted-utilitarian oracle.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geoknapsack::WeightedOracle;
use crate::lp::{solve_lp, LinearProgram, LpStatus, Relation};
use crate::model::{Configuration, Instance};
use crate::ratio::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Maximize the smallest utility among agents without a floor.
    Lowest,
    /// Maximize one agent's utility.
    Agent(usize),
    /// Maximize the sum of utilities.
    Total,
}

pub(crate) struct MasterOutcome {
    pub value: Rational,
    /// Time per pool column.
    pub times: Vec<Rational>,
    pub utilities: Vec<Rational>,
    /// Oracle weights from the final duals.
    pub weights: Vec<Rational>,
    /// Dual of the convexity row; a column prices out iff its weight exceeds it.
    pub threshold: Rational,
}

pub(crate) struct Master<'a> {
    instance: &'a Instance,
    oracle: Option<WeightedOracle>,
    pub pool: Vec<Configuration>,
    seen: HashSet<Configuration>,
    pub lp_solves: usize,
    pub lp_iterations: usize,
    pub columns_added: usize,
    pub oracle_calls: usize,
}

impl<'a> Master<'a> {
    pub fn new(instance: &'a Instance, oracle: Option<WeightedOracle>) -> Self {
        Master {
            instance,
            oracle,
            pool: Vec::new(),
            seen: HashSet::new(),
            lp_solves: 0,
            lp_iterations: 0,
            columns_added: 0,
            oracle_calls: 0,
        }
    }

    /// Adds a column; `false` if it was already present.
    pub fn add(&mut self, config: Configuration) -> Result<bool> {
        if !self.instance.is_feasible(&config)? {
            return Err(Error::Lp(format!("infeasible column {config} offered to the master")));
        }
        if self.seen.contains(&config) {
            return Ok(false);
        }
        self.seen.insert(config.clone());
        self.pool.push(config);
        Ok(true)
    }

    pub fn ask_oracle(&mut self, weights: &[Rational]) -> Result<Option<(Configuration, Rational)>> {
        let Some(oracle) = &self.oracle else {
            return Ok(None);
        };
        self.oracle_calls += 1;
        let answer = oracle.answer(self.instance, weights)?;
        Ok(Some((answer.config, answer.value)))
    }

    /// `floors[i] = None` marks agent `i` as bound to the `Lowest` level.
    pub fn solve(&mut self, goal: Goal, floors: &[Option<Rational>]) -> Result<MasterOutcome> {
        loop {
            let outcome = self.solve_restricted(goal, floors)?;
            let Some((config, _)) = self.ask_oracle(&outcome.weights)? else {
                return Ok(outcome);
            };
            let value: Rational = config.members().iter().map(|&i| &outcome.weights[i]).sum();
            if value <= outcome.threshold || !self.add(config)? {
                return Ok(outcome);
            }
            self.columns_added += 1;
        }
    }

    fn solve_restricted(&mut self, goal: Goal, floors: &[Option<Rational>]) -> Result<MasterOutcome> {
        let n = self.instance.n();
        let cols = self.pool.len();
        let with_level = goal == Goal::Lowest;
        let width = cols + usize::from(with_level);

        let goal_weight = |i: usize| -> Rational {
            match goal {
                Goal::Lowest => Rational::zero(),
                Goal::Agent(a) => {
                    if a == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }
                Goal::Total => Rational::one(),
            }
        };
        let mut objective: Vec<Rational> =
            self.pool.iter().map(|c| c.members().iter().map(|&i| goal_weight(i)).sum()).collect();
        if with_level {
            objective.push(Rational::one());
        }
        let mut lp = LinearProgram::maximize(objective);
        lp = lp.with(
            (0..width).map(|j| if j < cols { Rational::one() } else { Rational::zero() }).collect(),
            Relation::Eq,
            Rational::one(),
        );
        for (i, floor) in floors.iter().enumerate().take(n) {
            let mut row: Vec<Rational> =
                self.pool.iter().map(|c| if c.contains(i) { Rational::one() } else { Rational::zero() }).collect();
            match floor {
                Some(level) => {
                    if with_level {
                        row.push(Rational::zero());
                    }
                    lp = lp.with(row, Relation::Ge, level.clone());
                }
                None => {
                    if !with_level {
                        return Err(Error::Lp("agent without a floor outside a max-min problem".into()));
                    }
                    row.push(-Rational::one());
                    lp = lp.with(row, Relation::Ge, Rational::zero());
                }
            }
        }

        let solution = solve_lp(&lp)?;
        self.lp_solves += 1;
        self.lp_iterations += solution.iterations;
        match solution.status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => return Err(Error::Lp("restricted master problem is infeasible".into())),
            LpStatus::Unbounded => return Err(Error::Lp("restricted master problem is unbounded".into())),
        }

        let times = solution.primal[..cols].to_vec();
        let mut utilities = vec![Rational::zero(); n];
        for (c, t) in self.pool.iter().zip(&times) {
            if t.is_zero() {
                continue;
            }
            for &i in c.members() {
                utilities[i] += t;
            }
        }
        // Covering rows are `>=` rows of a maximization, so their duals are <= 0.
        let weights = (0..n)
            .map(|i| {
                let w = goal_weight(i) - &solution.duals[1 + i];
                if w.is_negative() {
                    Rational::zero()
                } else {
                    w
                }
            })
            .collect();
        Ok(MasterOutcome { value: solution.objective, times, utilities, weights, threshold: solution.duals[0].clone() })
    }
}
