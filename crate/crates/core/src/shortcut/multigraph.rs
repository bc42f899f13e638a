use std::collections::BTreeMap;

use crate::instance::Instance;
use crate::{Cost, Vertex};

/// Undirected multigraph without self-loops. Parallel edges are stored as a
/// multiplicity on both endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    adj: Vec<BTreeMap<Vertex, usize>>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph {
            adj: vec![BTreeMap::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = MultiGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds one copy of `(u, v)`. Self-loops are ignored.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if u == v {
            return;
        }
        *self.adj[u].entry(v).or_insert(0) += 1;
        *self.adj[v].entry(u).or_insert(0) += 1;
    }

    /// Removes one copy of `(u, v)`; returns false if there was none.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if self.multiplicity(u, v) == 0 {
            return false;
        }
        for (a, b) in [(u, v), (v, u)] {
            let m = self.adj[a].get_mut(&b).expect("symmetric adjacency");
            *m -= 1;
            if *m == 0 {
                self.adj[a].remove(&b);
            }
        }
        true
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.adj[u].get(&v).copied().unwrap_or(0)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].values().sum()
    }

    /// Distinct neighbours with their multiplicities, in increasing order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.adj[v].iter().map(|(&w, &m)| (w, m))
    }

    /// Every edge copy once, as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for (&v, &m) in nbrs.range(u + 1..) {
                out.extend(std::iter::repeat_n((u, v), m));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.values().sum::<usize>()).sum::<usize>() / 2
    }

    pub fn cost(&self, inst: &Instance) -> Cost {
        self.edges().into_iter().map(|(u, v)| inst.cost(u, v)).sum()
    }

    /// Disjoint union of edge multisets.
    pub fn merge(&mut self, other: &MultiGraph) {
        for (u, v) in other.edges() {
            self.add_edge(u, v);
        }
    }

    pub fn odd_vertices(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.degree(v) % 2 == 1).collect()
    }

    /// True when every vertex with at least one edge lies in one component.
    pub fn edges_connected(&self) -> bool {
        let Some(start) = (0..self.n()).find(|&v| !self.adj[v].is_empty()) else {
            return true;
        };
        let reached = self.reach(start);
        (0..self.n()).all(|v| self.adj[v].is_empty() || reached[v])
    }

    /// True when all `n` vertices lie in one component.
    pub fn spans(&self) -> bool {
        self.n() <= 1 || self.reach(0).iter().all(|&r| r)
    }

    fn reach(&self, start: Vertex) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &w in self.adj[u].keys() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}
