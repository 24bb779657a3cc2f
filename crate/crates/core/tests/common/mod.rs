#![allow(dead_code)]

use std::collections::VecDeque;

use fairwire::model::{Instance, Node, Tree};

/// Whether `members` plus `anchor` induce a connected subgraph of the tree,
/// by breadth-first search over the undirected edge list.
pub fn induces_connected(tree: &Tree, members: &[usize], anchor: Node) -> bool {
    let n = tree.n();
    let slot = |node: Node| match node {
        Node::Station => n,
        Node::Agent(i) => i,
    };
    let mut allowed = vec![false; n + 1];
    allowed[slot(anchor)] = true;
    for &m in members {
        allowed[m] = true;
    }
    let mut adj = vec![Vec::new(); n + 1];
    for &(a, b) in tree.edges() {
        adj[slot(a)].push(slot(b));
        adj[slot(b)].push(slot(a));
    }
    let mut seen = vec![false; n + 1];
    let start = slot(anchor);
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if allowed[v] && !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == members.len() + 1
}

/// All feasible configurations by enumeration, using the independent connectivity check.
pub fn feasible_subsets(instance: &Instance) -> Vec<Vec<usize>> {
    let n = instance.n();
    (0u64..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|c| {
            c.iter().map(|&i| instance.demands()[i]).sum::<u64>() <= instance.supply()
                && induces_connected(instance.tree(), c, Node::Station)
        })
        .collect()
}

/// Equal-sum bipartition by subset-sum reachability.
pub fn has_equal_split(d: &[u64]) -> bool {
    let total: u64 = d.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &x in d {
        let x = x as usize;
        for s in (x..=half).rev() {
            reach[s] |= reach[s - x];
        }
    }
    reach[half]
}
