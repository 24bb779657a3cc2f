//! Bottom-up node numbering for the tree knapsack table.
//!
//! Positions are 0-based; position `k` carries the number `k + 1`. Deeper
//! nodes get smaller positions and siblings occupy consecutive positions.
//! Within a depth class, sibling groups follow the order of their parents
//! and siblings are ordered by ascending original index.

use super::tree::Tree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenumberedTree {
    /// position -> original agent index
    order: Vec<usize>,
    /// original agent index -> position
    position: Vec<usize>,
    /// parent position, `None` for the station
    parent: Vec<Option<usize>>,
    /// highest-positioned child
    highest_child: Vec<Option<usize>>,
    first_child: Vec<bool>,
}

pub fn renumber(tree: &Tree) -> RenumberedTree {
    let n = tree.n();
    // Top-down: each depth class in parent order, siblings by ascending index.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = tree.station_children().to_vec();
    while !current.is_empty() {
        let next: Vec<usize> = current.iter().flat_map(|&u| tree.children(u).iter().copied()).collect();
        classes.push(std::mem::replace(&mut current, next));
    }
    // Farthest class first.
    let order: Vec<usize> = classes.into_iter().rev().flatten().collect();
    debug_assert_eq!(order.len(), n);

    let mut position = vec![0; n];
    for (k, &agent) in order.iter().enumerate() {
        position[agent] = k;
    }
    let parent: Vec<Option<usize>> = order.iter().map(|&a| tree.parent(a).map(|p| position[p])).collect();
    let mut highest_child = vec![None; n];
    for (k, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            highest_child[p] = Some(highest_child[p].map_or(k, |c: usize| c.max(k)));
        }
    }
    let first_child = (0..n).map(|k| k == 0 || parent[k] != parent[k - 1]).collect();
    RenumberedTree { order, position, parent, highest_child, first_child }
}

impl RenumberedTree {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Original agent index at `position`.
    pub fn agent_at(&self, position: usize) -> usize {
        self.order[position]
    }

    pub fn position_of(&self, agent: usize) -> usize {
        self.position[agent]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn parent(&self, position: usize) -> Option<usize> {
        self.parent[position]
    }

    pub fn highest_child(&self, position: usize) -> Option<usize> {
        self.highest_child[position]
    }

    pub fn is_first_child(&self, position: usize) -> bool {
        self.first_child[position]
    }

    pub fn is_leaf(&self, position: usize) -> bool {
        self.highest_child[position].is_none()
    }
}
