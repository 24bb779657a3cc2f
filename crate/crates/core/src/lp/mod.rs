//! Dense two-phase simplex with Bland's rule, over exact rationals or `f64`.
//!
//! Built for the small master problems of the leximin solver: a handful of
//! rows and at most a few hundred columns. Duals follow the usual convention
//! for maximization: `y >= 0` on `<=` rows, `y <= 0` on `>=` rows, free on
//! `=` rows, and `A^T y >= c` at optimality.

mod simplex;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::ratio::Rational;

pub use simplex::solve_lp;

/// Number type the simplex can pivot on.
pub trait LpScalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Feasibility tolerance; zero for exact types.
    fn tolerance() -> Self;

    fn is_pos(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn near_zero(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

impl LpScalar for Rational {
    fn tolerance() -> Self {
        Rational::zero()
    }

    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }

    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }

    fn near_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Float tolerance used for feasibility and pivoting.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl LpScalar for f64 {
    fn tolerance() -> Self {
        FLOAT_TOLERANCE
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T> Constraint<T> {
    pub fn new(coeffs: Vec<T>, relation: Relation, rhs: T) -> Self {
        Constraint { coeffs, relation, rhs }
    }
}

/// `maximize c·x` subject to the rows, `x >= 0`, and optional upper bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
    pub upper_bounds: Vec<Option<T>>,
}

impl<T: LpScalar> LinearProgram<T> {
    pub fn maximize(objective: Vec<T>) -> Self {
        let n = objective.len();
        LinearProgram { objective, constraints: Vec::new(), upper_bounds: vec![None; n] }
    }

    pub fn with(mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> Self {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Empty unless optimal.
    pub primal: Vec<T>,
    /// One per constraint row; empty unless optimal.
    pub duals: Vec<T>,
    /// One per variable (zero where no upper bound); empty unless optimal.
    pub bound_duals: Vec<T>,
    pub objective: T,
    pub iterations: usize,
}

impl<T: LpScalar> LpSolution<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// `b·y + u·y_u`, equal to the primal objective at optimality.
    pub fn dual_objective(&self, lp: &LinearProgram<T>) -> T {
        let rows =
            lp.constraints.iter().zip(&self.duals).fold(T::zero(), |acc, (c, y)| acc + c.rhs.clone() * y.clone());
        lp.upper_bounds.iter().zip(&self.bound_duals).fold(rows, |acc, (u, y)| match u {
            Some(u) => acc + u.clone() * y.clone(),
            None => acc,
        })
    }
}
