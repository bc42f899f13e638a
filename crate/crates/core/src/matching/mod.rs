//! Minimum-cost perfect matching on a vertex subset of an [`Instance`].

mod blossom;
mod brute;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::shortcut::multigraph::MultiGraph;
use crate::{Cost, Vertex};

pub use brute::{brute_matching, BRUTE_LIMIT};

/// Perfect matching as sorted `(u, v)` pairs with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Matching {
    pub pairs: Vec<(Vertex, Vertex)>,
    pub cost: Cost,
}

impl Matching {
    pub(crate) fn from_pairs(inst: &Instance, mut pairs: Vec<(Vertex, Vertex)>) -> Self {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let cost = pairs.iter().map(|&(u, v)| inst.cost(u, v)).sum();
        Matching { pairs, cost }
    }

    pub fn to_multigraph(&self, n: usize) -> MultiGraph {
        MultiGraph::from_edges(n, self.pairs.iter().copied())
    }

    /// True if the pairs cover every vertex of `set` exactly once and nothing else.
    pub fn is_perfect_on(&self, set: &[Vertex]) -> bool {
        let mut covered: Vec<Vertex> = self.pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        covered.sort_unstable();
        let mut want = set.to_vec();
        want.sort_unstable();
        covered == want
    }
}

pub(crate) fn check_odd_set(inst: &Instance, odd: &[Vertex]) -> Result<()> {
    if odd.len() % 2 == 1 {
        return Err(Error::contract(format!(
            "perfect matching requested on {} vertices",
            odd.len()
        )));
    }
    let mut sorted = odd.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::contract("matching vertex set has duplicates"));
    }
    if let Some(&v) = sorted.last().filter(|&&v| v >= inst.n()) {
        return Err(Error::contract(format!("vertex {v} out of range")));
    }
    Ok(())
}

/// Exact minimum-cost perfect matching on the complete graph induced by
/// `odd`, using the blossom algorithm.
///
/// Costs are turned into weights `W + 1 - c` with `W` the largest cost in
/// the subgraph, so a maximum-weight maximum-cardinality matching is the
/// cheapest perfect one.
pub fn min_cost_perfect_matching(inst: &Instance, odd: &[Vertex]) -> Result<Matching> {
    check_odd_set(inst, odd)?;
    if odd.is_empty() {
        return Ok(Matching::default());
    }
    let m = odd.len();
    let mut top = 0;
    for i in 0..m {
        for j in i + 1..m {
            top = top.max(inst.cost(odd[i], odd[j]));
        }
    }
    let mut edges = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            edges.push((i, j, top + 1 - inst.cost(odd[i], odd[j])));
        }
    }
    let mate = blossom::max_weight_matching(m, edges, true);
    let mut pairs = Vec::with_capacity(m / 2);
    for (i, mi) in mate.iter().enumerate() {
        match *mi {
            Some(j) if i < j => pairs.push((odd[i], odd[j])),
            Some(_) => {}
            None => return Err(Error::contract("blossom returned an imperfect matching")),
        }
    }
    Ok(Matching::from_pairs(inst, pairs))
}
