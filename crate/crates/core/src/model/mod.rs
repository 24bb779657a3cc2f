//! Instances, configurations, allocation plans, utilities and the leximin order.

mod renumber;
mod tree;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{format_rational, Rational};

pub use renumber::{renumber, RenumberedTree};
pub use tree::{Node, Tree};

/// Demands, supply and the distribution tree. Agents are 0-based internally
/// and printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    demands: Vec<u64>,
    supply: u64,
    tree: Tree,
}

impl Instance {
    pub fn new(demands: Vec<u64>, supply: u64, edges: Vec<(Node, Node)>) -> Result<Self> {
        let tree = Tree::new(demands.len(), edges)?;
        Self::with_tree(demands, supply, tree)
    }

    pub fn with_tree(demands: Vec<u64>, supply: u64, tree: Tree) -> Result<Self> {
        if tree.n() != demands.len() {
            return Err(Error::input(format!("tree has {} agents but {} demands were given", tree.n(), demands.len())));
        }
        if let Some(i) = demands.iter().position(|&d| d == 0) {
            return Err(Error::input(format!("agent {} has zero demand; demands must be positive", i + 1)));
        }
        Ok(Instance { demands, supply, tree })
    }

    pub fn n(&self) -> usize {
        self.demands.len()
    }

    pub fn demands(&self) -> &[u64] {
        &self.demands
    }

    pub fn supply(&self) -> u64 {
        self.supply
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn total_demand(&self) -> u64 {
        self.demands.iter().sum()
    }

    pub fn is_oversubscribed(&self) -> bool {
        self.total_demand() > self.supply
    }

    /// Demand and geographic constraints of a set of agents.
    pub fn is_feasible(&self, config: &Configuration) -> Result<bool> {
        Ok(self.check(config)?.is_none())
    }

    /// `None` when feasible, otherwise which constraints fail.
    fn check(&self, config: &Configuration) -> Result<Option<Infeasibility>> {
        let n = self.n();
        let mut in_set = vec![false; n];
        let mut demand = 0u64;
        for &i in config.members() {
            if i >= n {
                return Err(Error::UnknownAgent { agent: i + 1, n });
            }
            in_set[i] = true;
            demand += self.demands[i];
        }
        let over_supply = demand > self.supply;
        let disconnected: Vec<usize> =
            config.members().iter().copied().filter(|&i| self.tree.parent(i).is_some_and(|p| !in_set[p])).collect();
        if !over_supply && disconnected.is_empty() {
            return Ok(None);
        }
        Ok(Some(Infeasibility { demand: over_supply.then_some(demand), disconnected }))
    }
}

struct Infeasibility {
    demand: Option<u64>,
    disconnected: Vec<usize>,
}

/// A set of agents connected simultaneously.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    members: Vec<usize>,
}

impl Configuration {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Configuration { members }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorted, duplicate-free 0-based agent indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, agent: usize) -> bool {
        self.members.binary_search(&agent).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.members.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanEntry {
    pub config: Configuration,
    pub time: Rational,
}

/// Connection time per configuration; a feasible plan has times summing to 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AllocationPlan {
    pub entries: Vec<PlanEntry>,
}

impl AllocationPlan {
    pub fn new(entries: impl IntoIterator<Item = (Configuration, Rational)>) -> Self {
        AllocationPlan { entries: entries.into_iter().map(|(config, time)| PlanEntry { config, time }).collect() }
    }

    pub fn total_time(&self) -> Rational {
        self.entries.iter().map(|e| &e.time).sum()
    }

    /// Drops zero-time entries and merges duplicate configurations.
    pub fn normalized(&self) -> Self {
        let mut merged: std::collections::BTreeMap<Configuration, Rational> = Default::default();
        for e in &self.entries {
            *merged.entry(e.config.clone()).or_insert_with(Rational::zero) += &e.time;
        }
        Self::new(merged.into_iter().filter(|(_, t)| !t.is_zero()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownAgent { entry: usize, agent: usize },
    Demand { entry: usize, demand: u64, supply: u64 },
    Geographic { entry: usize, disconnected: Vec<usize> },
    Time { entry: usize, time: Rational },
    Sum { total: Rational },
}

impl Violation {
    /// Short class name used in reports.
    pub fn class(&self) -> &'static str {
        match self {
            Violation::UnknownAgent { .. } => "unknown-agent",
            Violation::Demand { .. } => "demand",
            Violation::Geographic { .. } => "geographic",
            Violation::Time { .. } => "time",
            Violation::Sum { .. } => "sum",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownAgent { entry, agent } => write!(f, "unknown-agent: entry {entry} names agent {agent}"),
            Violation::Demand { entry, demand, supply } => {
                write!(f, "demand: entry {entry} draws {demand} > supply {supply}")
            }
            Violation::Geographic { entry, disconnected } => {
                let ids: Vec<String> = disconnected.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "geographic: entry {entry} has agents cut off from s: {}", ids.join(","))
            }
            Violation::Time { entry, time } => {
                write!(f, "time: entry {entry} has time {} outside [0,1]", format_rational(time))
            }
            Violation::Sum { total } => write!(f, "sum: times add up to {} instead of 1", format_rational(total)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every infeasible entry, out-of-range time and a wrong total.
pub fn verify_plan(instance: &Instance, plan: &AllocationPlan) -> Verdict {
    let mut violations = Vec::new();
    for (entry, e) in plan.entries.iter().enumerate() {
        if e.time.is_negative() || e.time > Rational::one() {
            violations.push(Violation::Time { entry, time: e.time.clone() });
        }
        match instance.check(&e.config) {
            Err(_) => {
                let agent = e.config.members().iter().find(|&&i| i >= instance.n()).map_or(0, |i| i + 1);
                violations.push(Violation::UnknownAgent { entry, agent });
            }
            Ok(None) => {}
            Ok(Some(bad)) => {
                if let Some(demand) = bad.demand {
                    violations.push(Violation::Demand { entry, demand, supply: instance.supply() });
                }
                if !bad.disconnected.is_empty() {
                    violations.push(Violation::Geographic { entry, disconnected: bad.disconnected });
                }
            }
        }
    }
    let total = plan.total_time();
    if !total.is_one() {
        violations.push(Violation::Sum { total });
    }
    Verdict { violations }
}

/// Per-agent utilities, i.e. the total time each agent is connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtilityVector(pub Vec<Rational>);

impl UtilityVector {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sorted(&self) -> Vec<Rational> {
        let mut v = self.0.clone();
        v.sort();
        v
    }

    pub fn min(&self) -> Option<&Rational> {
        self.0.iter().min()
    }
}

pub fn utilities_of(instance: &Instance, plan: &AllocationPlan) -> Result<UtilityVector> {
    let n = instance.n();
    let mut u = vec![Rational::zero(); n];
    for e in &plan.entries {
        for &i in e.config.members() {
            if i >= n {
                return Err(Error::UnknownAgent { agent: i + 1, n });
            }
            u[i] += &e.time;
        }
    }
    Ok(UtilityVector(u))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeximinOrder {
    FirstPreferred,
    SecondPreferred,
    Equivalent,
}

/// Compares sorted utility vectors lexicographically from the smallest entry.
pub fn leximin_compare(a: &UtilityVector, b: &UtilityVector) -> Result<LeximinOrder> {
    if a.len() != b.len() {
        return Err(Error::input(format!("utility vectors differ in length: {} vs {}", a.len(), b.len())));
    }
    Ok(match a.sorted().cmp(&b.sorted()) {
        Ordering::Greater => LeximinOrder::FirstPreferred,
        Ordering::Less => LeximinOrder::SecondPreferred,
        Ordering::Equal => LeximinOrder::Equivalent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};
    use Node::{Agent as A, Station as S};

    /// Three households of demand 2, supply 4, edges s-1, 1-2, s-3.
    fn example() -> Instance {
        Instance::new(vec![2, 2, 2], 4, vec![(S, A(0)), (A(0), A(1)), (S, A(2))]).unwrap()
    }

    fn cfg(ids: &[usize]) -> Configuration {
        Configuration::new(ids.iter().map(|i| i - 1))
    }

    #[test]
    fn feasibility_of_example_configurations() {
        let inst = example();
        assert!(inst.is_feasible(&cfg(&[1, 2])).unwrap());
        assert!(!inst.is_feasible(&cfg(&[1, 2, 3])).unwrap());
        assert!(!inst.is_feasible(&cfg(&[2])).unwrap());
        assert!(inst.is_feasible(&Configuration::empty()).unwrap());
        let feasible: Vec<Vec<usize>> = (0u32..8)
            .map(|m| Configuration::new((0..3).filter(|i| m >> i & 1 == 1)))
            .filter(|c| !c.is_empty() && inst.is_feasible(c).unwrap())
            .map(|c| c.members().iter().map(|i| i + 1).collect())
            .collect();
        assert_eq!(feasible, vec![vec![1], vec![1, 2], vec![3], vec![1, 3]]);
        assert!(matches!(inst.is_feasible(&cfg(&[4])), Err(Error::UnknownAgent { agent: 4, n: 3 })));
    }

    #[test]
    fn singleton_next_to_station() {
        let inst = Instance::new(vec![5, 1], 4, vec![(S, A(0)), (S, A(1))]).unwrap();
        assert!(!inst.is_feasible(&cfg(&[1])).unwrap());
        assert!(inst.is_feasible(&cfg(&[2])).unwrap());
    }

    #[test]
    fn example_plan_utilities() {
        let inst = example();
        let plan = AllocationPlan::new([(cfg(&[1, 2]), frac(1, 2)), (cfg(&[1, 3]), frac(1, 2))]);
        assert!(verify_plan(&inst, &plan).is_ok());
        assert_eq!(utilities_of(&inst, &plan).unwrap().0, vec![int(1), frac(1, 2), frac(1, 2)]);

        let nobody = AllocationPlan::new([(Configuration::empty(), int(1))]);
        assert_eq!(utilities_of(&inst, &nobody).unwrap().0, vec![int(0); 3]);
        let one = AllocationPlan::new([(cfg(&[1]), int(1))]);
        assert_eq!(utilities_of(&inst, &one).unwrap().0, vec![int(1), int(0), int(0)]);
    }

    #[test]
    fn verify_reports_each_class() {
        let inst = example();
        let geo = AllocationPlan::new([(cfg(&[2, 3]), frac(1, 3)), (cfg(&[1]), frac(2, 3))]);
        let v = verify_plan(&inst, &geo);
        assert_eq!(v.violations.iter().map(Violation::class).collect::<Vec<_>>(), vec!["geographic"]);

        let short = AllocationPlan::new([(cfg(&[1]), frac(9, 10))]);
        assert_eq!(verify_plan(&inst, &short).violations, vec![Violation::Sum { total: frac(9, 10) }]);

        let heavy = AllocationPlan::new([(cfg(&[1, 2, 3]), int(1))]);
        let classes: Vec<_> = verify_plan(&inst, &heavy).violations.iter().map(Violation::class).collect();
        assert_eq!(classes, vec!["demand"]);

        let neg = AllocationPlan::new([(cfg(&[1]), frac(3, 2)), (cfg(&[3]), frac(-1, 2))]);
        let classes: Vec<_> = verify_plan(&inst, &neg).violations.iter().map(Violation::class).collect();
        assert_eq!(classes, vec!["time", "time"]);

        let unknown = AllocationPlan::new([(cfg(&[7]), int(1))]);
        assert_eq!(verify_plan(&inst, &unknown).violations, vec![Violation::UnknownAgent { entry: 0, agent: 7 }]);
    }

    #[test]
    fn leximin_order_examples() {
        let u = |v: &[Rational]| UtilityVector(v.to_vec());
        assert_eq!(
            leximin_compare(&u(&[int(1), int(2), int(3)]), &u(&[int(3), int(1), int(2)])).unwrap(),
            LeximinOrder::Equivalent
        );
        assert_eq!(
            leximin_compare(&u(&[frac(1, 2), frac(1, 2)]), &u(&[frac(2, 5), frac(3, 5)])).unwrap(),
            LeximinOrder::FirstPreferred
        );
        assert_eq!(
            leximin_compare(&u(&[int(1), frac(1, 2), frac(1, 2)]), &u(&[int(1), int(1), int(0)])).unwrap(),
            LeximinOrder::FirstPreferred
        );
        assert_eq!(
            leximin_compare(&u(&[int(1), int(1), int(0)]), &u(&[int(1), frac(1, 2), frac(1, 2)])).unwrap(),
            LeximinOrder::SecondPreferred
        );
        assert!(leximin_compare(&u(&[int(1)]), &u(&[])).is_err());
    }

    #[test]
    fn zero_demand_rejected() {
        assert!(Instance::new(vec![0], 1, vec![(S, A(0))]).is_err());
    }

    #[test]
    fn normalized_merges_and_drops() {
        let plan = AllocationPlan::new([(cfg(&[1]), frac(1, 4)), (cfg(&[3]), int(0)), (cfg(&[1]), frac(3, 4))]);
        assert_eq!(plan.normalized(), AllocationPlan::new([(cfg(&[1]), int(1))]));
    }
}
