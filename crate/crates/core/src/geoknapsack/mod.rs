//! Geographic Knapsack on trees: the exact table algorithm for integer
//! values, value rounding for the approximation scheme, an enumeration
//! oracle, and the weighted-utilitarian oracle built on top of them.

mod brute;
mod dp;
mod fptas;
mod oracle;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{Instance, Tree};
use crate::ratio::Rational;

pub use brute::{solve_bruteforce, DEFAULT_BRUTE_LIMIT};
pub use dp::{solve_exact_integer, Cell, Choice, DpStats, DpTable, ExactSolution};
pub use fptas::{
    admissible_items, greedy_maximal_packing, round_values, solve_fptas, FptasPath, FptasSolution, Rounding,
};
pub use oracle::{weighted_utilitarian_oracle, OracleAnswer, OracleMode, WeightedOracle};

/// Items on a tree rooted at the station.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackInput {
    sizes: Vec<u64>,
    values: Vec<Rational>,
    capacity: u64,
    tree: Tree,
}

impl KnapsackInput {
    pub fn new(sizes: Vec<u64>, values: Vec<Rational>, capacity: u64, tree: Tree) -> Result<Self> {
        if sizes.len() != values.len() || sizes.len() != tree.n() {
            return Err(Error::input(format!(
                "{} sizes, {} values and {} tree nodes must agree",
                sizes.len(),
                values.len(),
                tree.n()
            )));
        }
        if let Some(i) = values.iter().position(Signed::is_negative) {
            return Err(Error::input(format!("item {} has a negative value", i + 1)));
        }
        Ok(KnapsackInput { sizes, values, capacity, tree })
    }

    /// Items are the agents, sizes their demands, capacity the supply.
    pub fn from_instance(instance: &Instance, values: Vec<Rational>) -> Result<Self> {
        Self::new(instance.demands().to_vec(), values, instance.supply(), instance.tree().clone())
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn packing(&self, members: impl IntoIterator<Item = usize>) -> Packing {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let total_value = members.iter().map(|&i| &self.values[i]).sum();
        let total_size = members.iter().map(|&i| self.sizes[i]).sum();
        Packing { members, total_value, total_size }
    }

    /// Capacity plus connectivity to the station.
    pub fn is_legal(&self, members: &[usize]) -> bool {
        let mut in_set = vec![false; self.n()];
        let mut size = 0u64;
        for &i in members {
            if i >= self.n() {
                return false;
            }
            in_set[i] = true;
            size += self.sizes[i];
        }
        size <= self.capacity && self.tree.connects_to_station(&in_set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    /// Sorted 0-based item indices.
    pub members: Vec<usize>,
    /// Value under the original (unrounded) values.
    pub total_value: Rational,
    pub total_size: u64,
}

impl Packing {
    pub fn empty() -> Self {
        Packing { members: Vec::new(), total_value: Rational::zero(), total_size: 0 }
    }
}
