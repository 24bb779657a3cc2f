use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::brute::{solve_bruteforce, DEFAULT_BRUTE_LIMIT};
use super::dp::solve_with_values;
use super::fptas::solve_fptas;
use super::KnapsackInput;
use crate::error::{Error, Result};
use crate::model::{renumber, Configuration, Instance};
use crate::ratio::{check_epsilon, common_denominator, Rational};

/// Largest scaled value total the exact table path will accept.
const EXACT_TABLE_VALUE_CAP: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// Optimal answers (enumeration for small n, scaled integer table otherwise).
    Exact,
    /// `(1 - epsilon)`-approximate answers through value rounding.
    Fptas(Rational),
}

impl OracleMode {
    /// Guaranteed approximation factor.
    pub fn alpha(&self) -> Rational {
        match self {
            OracleMode::Exact => Rational::one(),
            OracleMode::Fptas(eps) => Rational::one() - eps,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    pub config: Configuration,
    /// Weighted value `sum of weights over members`, exact.
    pub value: Rational,
    pub alpha: Rational,
}

/// Weighted-utilitarian oracle: a feasible configuration maximizing the
/// total weight of its members, up to the mode's factor.
#[derive(Clone, Debug)]
pub struct WeightedOracle {
    pub mode: OracleMode,
    /// Enumeration is used in exact mode up to this many agents.
    pub brute_limit: usize,
}

impl WeightedOracle {
    pub fn new(mode: OracleMode) -> Self {
        WeightedOracle { mode, brute_limit: crate::brute_limit(DEFAULT_BRUTE_LIMIT) }
    }

    pub fn answer(&self, instance: &Instance, weights: &[Rational]) -> Result<OracleAnswer> {
        if weights.len() != instance.n() {
            return Err(Error::input(format!("{} weights for {} agents", weights.len(), instance.n())));
        }
        if let Some(i) = weights.iter().position(Signed::is_negative) {
            return Err(Error::input(format!("weight of agent {} is negative", i + 1)));
        }
        let input = KnapsackInput::from_instance(instance, weights.to_vec())?;
        let packing = match &self.mode {
            OracleMode::Fptas(eps) => {
                check_epsilon(eps)?;
                solve_fptas(&input, eps)?.packing
            }
            OracleMode::Exact if instance.n() <= self.brute_limit => solve_bruteforce(&input, self.brute_limit)?,
            OracleMode::Exact => {
                let den = common_denominator(weights);
                let scaled = weights
                    .iter()
                    .map(|w| (w * Rational::from_integer(den.clone())).to_integer())
                    .collect::<Vec<BigInt>>();
                let total: BigInt = scaled.iter().sum();
                if total > BigInt::from(EXACT_TABLE_VALUE_CAP) {
                    return Err(Error::TableTooLarge(format!(
                        "exact oracle needs a value table of width {total}; use the approximate oracle"
                    )));
                }
                let values: Vec<u64> = scaled.iter().map(|v| v.to_u64().unwrap_or(0)).collect();
                if total.is_zero() {
                    super::Packing::empty()
                } else {
                    solve_with_values(&input, &values, &renumber(input.tree()))?.packing
                }
            }
        };
        Ok(OracleAnswer {
            config: Configuration::new(packing.members),
            value: packing.total_value,
            alpha: self.mode.alpha(),
        })
    }
}

pub fn weighted_utilitarian_oracle(
    instance: &Instance,
    weights: &[Rational],
    mode: &OracleMode,
) -> Result<OracleAnswer> {
    WeightedOracle::new(mode.clone()).answer(instance, weights)
}
