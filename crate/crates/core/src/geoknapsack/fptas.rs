use std::collections::VecDeque;

use num_traits::Zero;

use super::dp::{solve_with_values, DpStats};
use super::{KnapsackInput, Packing};
use crate::error::{Error, Result};
use crate::model::renumber;
use crate::ratio::{check_epsilon, floor_u64, int, Rational};

/// Integer values `floor(v_i / theta)` with `theta = epsilon * v_max / n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rounding {
    pub values: Vec<u64>,
    /// Zero when `degenerate`.
    pub theta: Rational,
    /// All values are zero, so `theta` is undefined.
    pub degenerate: bool,
}

pub fn round_values(values: &[Rational], epsilon: &Rational) -> Result<Rounding> {
    check_epsilon(epsilon)?;
    let v_max = values.iter().max().cloned().unwrap_or_else(Rational::zero);
    if v_max.is_zero() {
        return Ok(Rounding { values: vec![0; values.len()], theta: Rational::zero(), degenerate: true });
    }
    let theta = epsilon * &v_max / int(values.len() as i64);
    let values = values
        .iter()
        .map(|v| floor_u64(&(v / &theta)).ok_or_else(|| Error::input("values must be non-negative")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Rounding { values, theta, degenerate: false })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FptasPath {
    /// Table run over rounded values.
    Rounded,
    /// All values zero; a maximal legal packing was taken greedily.
    Greedy,
}

#[derive(Clone, Debug)]
pub struct FptasSolution {
    pub packing: Packing,
    pub rounding: Rounding,
    pub path: FptasPath,
    /// Optimal rounded value reached by the table.
    pub rounded_value: u64,
    pub stats: Option<DpStats>,
}

/// Items whose path from the station fits in the capacity on its own; all
/// other items belong to no legal packing.
pub fn admissible_items(input: &KnapsackInput) -> Vec<bool> {
    let tree = input.tree();
    let mut path_size = vec![0u64; input.n()];
    let mut ok = vec![false; input.n()];
    let mut queue: VecDeque<usize> = tree.station_children().iter().copied().collect();
    while let Some(i) = queue.pop_front() {
        path_size[i] = input.sizes()[i].saturating_add(tree.parent(i).map_or(0, |p| path_size[p]));
        ok[i] = path_size[i] <= input.capacity();
        queue.extend(tree.children(i).iter().copied());
    }
    ok
}

/// Legal packing worth at least `(1 - epsilon)` of the optimum.
///
/// Values of items outside every legal packing are zeroed before rounding,
/// so the largest remaining value is a lower bound on the optimum.
pub fn solve_fptas(input: &KnapsackInput, epsilon: &Rational) -> Result<FptasSolution> {
    let admissible = admissible_items(input);
    let values: Vec<Rational> =
        input.values().iter().zip(&admissible).map(|(v, &ok)| if ok { v.clone() } else { Rational::zero() }).collect();
    let rounding = round_values(&values, epsilon)?;
    if rounding.degenerate {
        return Ok(FptasSolution {
            packing: greedy_maximal_packing(input),
            rounding,
            path: FptasPath::Greedy,
            rounded_value: 0,
            stats: None,
        });
    }
    let numbering = renumber(input.tree());
    let exact = solve_with_values(input, &rounding.values, &numbering)?;
    Ok(FptasSolution {
        packing: exact.packing,
        rounding,
        path: FptasPath::Rounded,
        rounded_value: exact.value,
        stats: Some(exact.stats),
    })
}

/// Breadth-first from the station, taking every reachable item that still fits.
/// The result is maximal by inclusion among legal packings.
pub fn greedy_maximal_packing(input: &KnapsackInput) -> Packing {
    let tree = input.tree();
    let mut left = input.capacity();
    let mut members = Vec::new();
    let mut queue: VecDeque<usize> = tree.station_children().iter().copied().collect();
    while let Some(i) = queue.pop_front() {
        let d = input.sizes()[i];
        if d <= left {
            left -= d;
            members.push(i);
            queue.extend(tree.children(i).iter().copied());
        }
    }
    input.packing(members)
}
