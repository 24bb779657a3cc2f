//! Minimum-size table over (position, exact value) for integer values.
//!
//! `F(k, j)` is the smallest-size set `C` of positions `<= k` with value
//! exactly `j` such that `C` plus the parent of `k` is connected. Cells keep
//! only the size and how they were formed; sets are rebuilt by backtracking.

use num_traits::ToPrimitive;

use super::{KnapsackInput, Packing};
use crate::error::{Error, Result};
use crate::model::RenumberedTree;
use crate::ratio::is_integer;

/// How a present cell was formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    /// The empty set (value 0).
    Empty,
    /// `{k}` for a leaf that is a first child.
    Leaf,
    /// `F(k-1, j)`: `k` left out, earlier siblings carry the value.
    Skip,
    /// `F(k-1, j - v_k) ∪ {k}` for a leaf with earlier siblings.
    AfterSiblings,
    /// `F(c(k), j - v_k) ∪ {k}` for a first child with children.
    OverChildren,
    /// `F(k-1, z) ∪ F(c(k), j - v_k - z) ∪ {k}`.
    Split(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub size: u64,
    pub choice: Choice,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DpStats {
    pub n: usize,
    /// Sum of all (integer) item values, the table's last column index.
    pub value_total: u64,
    /// `n * (value_total + 1)`, the logical table size.
    pub logical_cells: u64,
    /// Cells actually stored; rows stop at the largest reachable value.
    pub allocated_cells: u64,
    /// Cell evaluations plus inner split iterations.
    pub work: u64,
}

#[derive(Clone, Debug)]
pub struct DpTable {
    rows: Vec<Vec<Option<Cell>>>,
    values: Vec<u64>,
    stats: DpStats,
}

impl DpTable {
    /// `sizes` and `values` are indexed by original item index.
    pub fn build(sizes: &[u64], values: &[u64], numbering: &RenumberedTree) -> Result<Self> {
        let n = numbering.len();
        let value_total = values.iter().try_fold(0u64, |acc, &v| acc.checked_add(v));
        let value_total = match value_total {
            Some(t) if t <= u32::MAX as u64 => t,
            _ => return Err(Error::TableTooLarge("sum of item values exceeds 2^32".into())),
        };
        let val: Vec<u64> = numbering.order().iter().map(|&a| values[a]).collect();
        let size: Vec<u64> = numbering.order().iter().map(|&a| sizes[a]).collect();

        // Largest value any set counted by row k can reach.
        let mut reach = vec![0u64; n];
        for k in 0..n {
            let siblings = if numbering.is_first_child(k) { 0 } else { reach[k - 1] };
            let below = numbering.highest_child(k).map_or(0, |c| reach[c]);
            reach[k] = siblings + val[k] + below;
        }

        let mut rows: Vec<Vec<Option<Cell>>> = Vec::with_capacity(n);
        let mut work = 0u64;
        let at = |rows: &Vec<Vec<Option<Cell>>>, k: usize, j: u64| -> Option<Cell> {
            rows[k].get(j as usize).copied().flatten()
        };
        for k in 0..n {
            let first = numbering.is_first_child(k);
            let child = numbering.highest_child(k);
            let (v, d) = (val[k], size[k]);
            let mut row = vec![None; reach[k] as usize + 1];
            row[0] = Some(Cell { size: 0, choice: Choice::Empty });
            work += 1;

            if first && child.is_none() {
                if v > 0 {
                    row[v as usize] = Some(Cell { size: d, choice: Choice::Leaf });
                }
                rows.push(row);
                continue;
            }

            for j in 1..=reach[k] {
                work += 1;
                let without =
                    if first { None } else { at(&rows, k - 1, j).map(|c| Cell { size: c.size, choice: Choice::Skip }) };
                let with = if v > j {
                    None
                } else {
                    let rest = j - v;
                    match (first, child) {
                        (false, None) => {
                            at(&rows, k - 1, rest).map(|c| Cell { size: c.size + d, choice: Choice::AfterSiblings })
                        }
                        (true, Some(c)) => {
                            at(&rows, c, rest).map(|cell| Cell { size: cell.size + d, choice: Choice::OverChildren })
                        }
                        (false, Some(c)) => {
                            // Only splits where both parts can be present.
                            let lo = rest.saturating_sub(reach[c]);
                            let hi = rest.min(reach[k - 1]);
                            let mut best: Option<(u64, u64)> = None;
                            for z in lo..=hi {
                                work += 1;
                                if let (Some(s), Some(ch)) = (at(&rows, k - 1, z), at(&rows, c, rest - z)) {
                                    let total = s.size + ch.size;
                                    if best.is_none_or(|(b, _)| total < b) {
                                        best = Some((total, z));
                                    }
                                }
                            }
                            best.map(|(total, z)| Cell { size: total + d, choice: Choice::Split(z as u32) })
                        }
                        (true, None) => unreachable!("first-child leaves are base cases"),
                    }
                };
                row[j as usize] = match (without, with) {
                    (Some(a), Some(b)) => Some(if b.size < a.size { b } else { a }),
                    (a, b) => a.or(b),
                };
            }
            rows.push(row);
        }

        let allocated_cells = rows.iter().map(|r| r.len() as u64).sum();
        let stats = DpStats { n, value_total, logical_cells: n as u64 * (value_total + 1), allocated_cells, work };
        Ok(DpTable { rows, values: val, stats })
    }

    pub fn stats(&self) -> DpStats {
        self.stats
    }

    pub fn get(&self, position: usize, value: u64) -> Option<Cell> {
        self.rows.get(position)?.get(usize::try_from(value).ok()?).copied().flatten()
    }

    /// Positions of the set stored at `F(position, value)`.
    pub fn reconstruct(&self, numbering: &RenumberedTree, position: usize, value: u64) -> Option<Vec<usize>> {
        self.get(position, value)?;
        let mut members = Vec::new();
        let mut stack = vec![(position, value)];
        while let Some((k, j)) = stack.pop() {
            let cell = self.get(k, j).expect("backtracking only visits present cells");
            let v = self.values[k];
            match cell.choice {
                Choice::Empty => {}
                Choice::Leaf => members.push(k),
                Choice::Skip => stack.push((k - 1, j)),
                Choice::AfterSiblings => {
                    members.push(k);
                    stack.push((k - 1, j - v));
                }
                Choice::OverChildren => {
                    members.push(k);
                    stack.push((numbering.highest_child(k).expect("inner node"), j - v));
                }
                Choice::Split(z) => {
                    let z = z as u64;
                    members.push(k);
                    stack.push((k - 1, z));
                    stack.push((numbering.highest_child(k).expect("inner node"), j - v - z));
                }
            }
        }
        members.sort_unstable();
        Some(members)
    }

    /// Largest value `j` whose last-row set fits in `capacity`, with that set
    /// as original item indices.
    pub fn best_within(&self, numbering: &RenumberedTree, capacity: u64) -> (u64, Vec<usize>) {
        let Some(last) = self.rows.len().checked_sub(1) else {
            return (0, Vec::new());
        };
        for j in (1..self.rows[last].len() as u64).rev() {
            if let Some(cell) = self.get(last, j) {
                if cell.size <= capacity {
                    let positions = self.reconstruct(numbering, last, j).expect("present cell");
                    let mut items: Vec<usize> = positions.into_iter().map(|k| numbering.agent_at(k)).collect();
                    items.sort_unstable();
                    return (j, items);
                }
            }
        }
        (0, Vec::new())
    }
}

#[derive(Clone, Debug)]
pub struct ExactSolution {
    pub packing: Packing,
    /// Optimal total of the integer values.
    pub value: u64,
    pub stats: DpStats,
}

pub(crate) fn integer_values(input: &KnapsackInput) -> Result<Vec<u64>> {
    input
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if !is_integer(v) {
                return Err(Error::input(format!("item {} has non-integer value {v}", i + 1)));
            }
            v.to_integer()
                .to_u64()
                .ok_or_else(|| Error::TableTooLarge(format!("item {} value {v} does not fit in 64 bits", i + 1)))
        })
        .collect()
}

pub(crate) fn solve_with_values(
    input: &KnapsackInput,
    values: &[u64],
    numbering: &RenumberedTree,
) -> Result<ExactSolution> {
    let table = DpTable::build(input.sizes(), values, numbering)?;
    let (value, members) = table.best_within(numbering, input.capacity());
    Ok(ExactSolution { packing: input.packing(members), value, stats: table.stats() })
}

/// Maximum-value legal packing for integer values; among those, one of
/// minimum total size.
pub fn solve_exact_integer(input: &KnapsackInput, numbering: &RenumberedTree) -> Result<ExactSolution> {
    if numbering.len() != input.n() {
        return Err(Error::input("numbering does not match the input tree"));
    }
    let values = integer_values(input)?;
    solve_with_values(input, &values, numbering)
}
