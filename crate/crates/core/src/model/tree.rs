use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Endpoint of a network edge: the station `s` or a 0-based agent index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Station,
    Agent(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Station => write!(f, "s"),
            Node::Agent(i) => write!(f, "{}", i + 1),
        }
    }
}

/// A tree on the agents plus the station, rooted at the station.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(Node, Node)>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    station_children: Vec<usize>,
    depth: Vec<usize>,
}

impl Tree {
    /// Validates that `edges` form a spanning tree on `n` agents plus the station.
    pub fn new(n: usize, edges: Vec<(Node, Node)>) -> Result<Self> {
        // Union-find over n agents plus the station at index n.
        let slot = |node: Node| match node {
            Node::Station => n,
            Node::Agent(i) => i,
        };
        let mut uf: Vec<usize> = (0..=n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(a, b) in &edges {
            for node in [a, b] {
                if let Node::Agent(i) = node {
                    if i >= n {
                        return Err(Error::UnknownAgent { agent: i + 1, n });
                    }
                }
            }
            if a == b {
                return Err(Error::NotATree(format!("self-loop at {a}")));
            }
            let (ra, rb) = (find(&mut uf, slot(a)), find(&mut uf, slot(b)));
            if ra == rb {
                return Err(Error::NotATree(format!("edge {a}-{b} closes a cycle")));
            }
            uf[ra] = rb;
            adjacency[slot(a)].push(slot(b));
            adjacency[slot(b)].push(slot(a));
        }
        if edges.len() != n {
            let root = find(&mut uf, n);
            let missing = (0..n).find(|&i| find(&mut uf, i) != root).map_or(0, |i| i + 1);
            return Err(Error::NotATree(format!(
                "{} edges for {n} agents; agent {missing} is not connected to s",
                edges.len()
            )));
        }

        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut children = vec![Vec::new(); n];
        let mut station_children = Vec::new();
        let mut seen = vec![false; n + 1];
        seen[n] = true;
        let mut queue = VecDeque::from([n]);
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                if u == n {
                    depth[v] = 1;
                    station_children.push(v);
                } else {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some(u);
                    children[u].push(v);
                }
                queue.push_back(v);
            }
        }
        station_children.sort_unstable();
        children.iter_mut().for_each(|c| c.sort_unstable());
        Ok(Tree { edges, parent, children, station_children, depth })
    }

    /// Star centred at the station.
    pub fn star(n: usize) -> Self {
        Tree::new(n, (0..n).map(|i| (Node::Station, Node::Agent(i))).collect()).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    /// Parent agent, or `None` when the parent is the station.
    pub fn parent(&self, agent: usize) -> Option<usize> {
        self.parent[agent]
    }

    pub fn children(&self, agent: usize) -> &[usize] {
        &self.children[agent]
    }

    pub fn station_children(&self) -> &[usize] {
        &self.station_children
    }

    /// Edge distance from the station (station children have depth 1).
    pub fn depth(&self, agent: usize) -> usize {
        self.depth[agent]
    }

    /// `members ∪ {s}` is connected iff every member's parent is the station or a member.
    pub fn connects_to_station(&self, in_set: &[bool]) -> bool {
        (0..self.n()).all(|i| !in_set[i] || self.parent[i].is_none_or(|p| in_set[p]))
    }
}
