//! Leximin-fair division of electricity connection time among households on
//! a tree-shaped distribution network.
//!
//! The core pieces are the Geographic Knapsack table algorithm with its
//! approximation scheme ([`geoknapsack`]), a small exact simplex solver
//! ([`lp`]), and the stage-wise column-generation leximin solver
//! ([`leximin`]) that uses the knapsack as its pricing oracle.

pub mod error;
pub mod geoknapsack;
pub mod instances;
pub mod leximin;
pub mod lp;
pub mod model;
pub mod ratio;

pub use error::{Error, Result};

/// Environment variable overriding the size caps of the enumeration oracles.
pub const BRUTE_LIMIT_ENV: &str = "FAIRWIRE_BRUTE_LIMIT";

/// `FAIRWIRE_BRUTE_LIMIT` when set to a valid number, otherwise `default`.
pub fn brute_limit(default: usize) -> usize {
    std::env::var(BRUTE_LIMIT_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}
