use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, Node, Tree};
use crate::ratio::{floor_u64, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupplyMode {
    /// `floor(f * total demand)`.
    Fraction(Rational),
    Fixed(u64),
}

impl Default for SupplyMode {
    fn default() -> Self {
        SupplyMode::Fraction(Rational::new(1.into(), 2.into()))
    }
}

/// Uniform random attachment tree: agent `k` hangs off the station or one of
/// the agents before it, chosen uniformly. Deterministic per seed.
pub fn gen_random_tree(n: usize, seed: u64, demand_range: RangeInclusive<u64>, supply: SupplyMode) -> Result<Instance> {
    if n == 0 {
        return Err(Error::input("random instances need at least one agent"));
    }
    if demand_range.is_empty() || *demand_range.start() == 0 {
        return Err(Error::input(format!(
            "demand range {}..={} must be non-empty and positive",
            demand_range.start(),
            demand_range.end()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n);
    for k in 0..n {
        let p = rng.gen_range(0..=k);
        edges.push((if p == 0 { Node::Station } else { Node::Agent(p - 1) }, Node::Agent(k)));
    }
    let demands: Vec<u64> = (0..n).map(|_| rng.gen_range(demand_range.clone())).collect();
    let total: u64 = demands.iter().sum();
    let supply = match supply {
        SupplyMode::Fixed(s) => s,
        SupplyMode::Fraction(f) => {
            floor_u64(&(f * int(total as i64))).ok_or_else(|| Error::input("supply fraction must be non-negative"))?
        }
    };
    Instance::new(demands, supply, edges)
}

/// Integer item values drawn uniformly from `range`, seeded independently of the tree.
pub fn gen_random_values(n: usize, seed: u64, range: RangeInclusive<u64>) -> Result<Vec<Rational>> {
    if range.is_empty() {
        return Err(Error::input(format!("value range {}..={} is empty", range.start(), range.end())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05ee_d0f7_a1e5);
    Ok((0..n).map(|_| int(rng.gen_range(range.clone()) as i64)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInstance {
    pub instance: Instance,
    /// The demand total is odd, so no equal-sum split can exist.
    pub trivially_no: bool,
}

/// Star around the station with supply half the total demand (rounded down
/// for odd totals, which are flagged).
pub fn gen_partition_reduction(demands: &[u64]) -> Result<PartitionInstance> {
    if let Some(k) = demands.iter().position(|&d| d == 0) {
        return Err(Error::input(format!("demand {} is not positive", k + 1)));
    }
    let total: u64 = demands.iter().sum();
    let instance = Instance::with_tree(demands.to_vec(), total / 2, Tree::star(demands.len()))?;
    Ok(PartitionInstance { instance, trivially_no: total % 2 == 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_agent_tree() {
        let inst = gen_random_tree(1, 3, 1..=5, SupplyMode::default()).unwrap();
        assert_eq!(inst.tree().edges(), &[(Node::Station, Node::Agent(0))]);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = gen_random_tree(10, 7, 1..=9, SupplyMode::default()).unwrap();
        let b = gen_random_tree(10, 7, 1..=9, SupplyMode::default()).unwrap();
        assert_eq!(a, b);
        let c = gen_random_tree(10, 8, 1..=9, SupplyMode::default()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn half_supply_is_oversubscribed() {
        for seed in 0..50 {
            let inst = gen_random_tree(10, seed, 1..=9, SupplyMode::default()).unwrap();
            assert!(inst.is_oversubscribed());
            assert_eq!(inst.supply(), inst.total_demand() / 2);
        }
    }

    #[test]
    fn fixed_supply_and_bad_ranges() {
        assert_eq!(gen_random_tree(3, 1, 2..=2, SupplyMode::Fixed(5)).unwrap().supply(), 5);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=2;
        assert!(gen_random_tree(3, 1, empty, SupplyMode::default()).is_err());
        assert!(gen_random_tree(3, 1, 0..=2, SupplyMode::default()).is_err());
        assert!(gen_random_tree(0, 1, 1..=2, SupplyMode::default()).is_err());
    }

    #[test]
    fn partition_instances() {
        let p = gen_partition_reduction(&[2, 2, 2, 2]).unwrap();
        assert_eq!(p.instance.supply(), 4);
        assert!(!p.trivially_no);
        assert!(p.instance.tree().station_children().len() == 4);
        assert_eq!(gen_partition_reduction(&[1, 1]).unwrap().instance.supply(), 1);
        let odd = gen_partition_reduction(&[1, 2]).unwrap();
        assert!(odd.trivially_no);
        assert_eq!(odd.instance.supply(), 1);
        assert!(gen_partition_reduction(&[1, 0]).is_err());
    }
}
