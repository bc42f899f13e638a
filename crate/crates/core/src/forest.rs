//! Minimum spanning forest with one tree per designated root.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::shortcut::multigraph::MultiGraph;
use crate::{Cost, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    /// Edges as `(parent, child)` in the order they were attached.
    pub edges: Vec<(Vertex, Vertex)>,
    pub roots: Vec<Vertex>,
    pub cost: Cost,
    /// Root of the tree containing each spanned vertex.
    pub component_of: BTreeMap<Vertex, Vertex>,
}

impl RootedForest {
    pub fn to_multigraph(&self, n: usize) -> MultiGraph {
        MultiGraph::from_edges(n, self.edges.iter().copied())
    }
}

fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// Minimum-cost spanning forest of `inst[vertices]` in which every tree holds
/// exactly one root.
///
/// All roots are contracted into a single super-vertex and a dense Prim runs
/// from it; the edge chosen from the super-vertex to `v` is the cheapest root
/// edge of `v`, which also decides `v`'s tree. O(|vertices|^2). Ties prefer
/// the lexicographically smaller `(min, max)` endpoint pair.
pub fn rooted_msf(inst: &Instance, vertices: &[Vertex], roots: &[Vertex]) -> Result<RootedForest> {
    let vertex_set: BTreeSet<Vertex> = vertices.iter().copied().collect();
    let root_set: BTreeSet<Vertex> = roots.iter().copied().collect();
    if root_set.is_empty() {
        return Err(Error::contract("rooted forest needs at least one root"));
    }
    if let Some(&v) = vertex_set.iter().find(|&&v| v >= inst.n()) {
        return Err(Error::contract(format!("forest vertex {v} outside the instance")));
    }
    if let Some(r) = root_set.difference(&vertex_set).next() {
        return Err(Error::contract(format!("root {r} is not among the forest vertices")));
    }

    let others: Vec<Vertex> = vertex_set.difference(&root_set).copied().collect();
    // best[i] = (cost, edge key, attach point) of the cheapest link from the tree to others[i].
    let mut best: Vec<(Cost, (Vertex, Vertex), Vertex)> = others
        .iter()
        .map(|&v| {
            root_set
                .iter()
                .map(|&r| (inst.cost(r, v), edge_key(r, v), r))
                .min()
                .expect("roots are non-empty")
        })
        .collect();
    let mut in_tree = vec![false; others.len()];
    let mut component_of: BTreeMap<Vertex, Vertex> = root_set.iter().map(|&r| (r, r)).collect();
    let mut edges = Vec::with_capacity(others.len());
    let mut cost = 0;

    for _ in 0..others.len() {
        let (i, &(c, _, parent)) = best
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_tree[*i])
            .min_by_key(|(_, b)| (b.0, b.1))
            .expect("a vertex remains");
        in_tree[i] = true;
        let v = others[i];
        cost += c;
        edges.push((parent, v));
        let root = component_of[&parent];
        component_of.insert(v, root);
        for (j, &w) in others.iter().enumerate() {
            if !in_tree[j] {
                let cand = (inst.cost(v, w), edge_key(v, w), v);
                if (cand.0, cand.1) < (best[j].0, best[j].1) {
                    best[j] = cand;
                }
            }
        }
    }

    Ok(RootedForest {
        edges,
        roots: root_set.into_iter().collect(),
        cost,
        component_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::{inst4, sq4};

    #[test]
    fn inst4_forests() {
        let inst = inst4();
        let f = rooted_msf(&inst, &[2, 3], &[2]).unwrap();
        assert_eq!((f.edges.clone(), f.cost), (vec![(2, 3)], 5));
        let f = rooted_msf(&inst, &[1, 3], &[1]).unwrap();
        assert_eq!((f.edges.clone(), f.cost), (vec![(1, 3)], 6));
        assert_eq!(f.component_of[&3], 1);
    }

    #[test]
    fn roots_only_is_empty() {
        let f = rooted_msf(&inst4(), &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert!(f.edges.is_empty());
        assert_eq!(f.cost, 0);
    }

    #[test]
    fn single_root_is_an_mst() {
        let f = rooted_msf(&sq4(), &[0, 1, 2, 3], &[0]).unwrap();
        assert_eq!(f.cost, 6);
        assert_eq!(f.edges, vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn contract_errors() {
        let inst = inst4();
        assert!(rooted_msf(&inst, &[0, 1], &[]).is_err());
        assert!(rooted_msf(&inst, &[0, 1], &[2]).is_err());
        assert!(rooted_msf(&inst, &[0, 9], &[0]).is_err());
    }

    #[test]
    fn each_tree_has_one_root() {
        // Two far-apart clusters around roots 0 and 3.
        let pts = [0i64, 1, 2, 100, 101, 102];
        let inst = Instance::from_fn("line", 6, |u, v| (pts[u] - pts[v]).abs()).unwrap();
        let f = rooted_msf(&inst, &[0, 1, 2, 3, 4, 5], &[0, 3]).unwrap();
        assert_eq!(f.cost, 4);
        assert_eq!(f.edges.len(), 4);
        for v in [1, 2] {
            assert_eq!(f.component_of[&v], 0);
        }
        for v in [4, 5] {
            assert_eq!(f.component_of[&v], 3);
        }
    }
}
