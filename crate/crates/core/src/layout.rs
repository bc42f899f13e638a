//! Guesses of how the bad vertices sit in an optimal tour.
//!
//! A guess is a cyclic order of the bad vertices cut into chains; each chain
//! ends at a root `b_e(q_i)` where a path of good vertices takes over. The
//! downstream pipeline only depends on the undirected cycle through the bad
//! vertices and on the root set, so the enumeration yields exactly one
//! [`ChainLayout`] per distinct (cycle, root set) pair.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::audit::TriangleAudit;
use crate::instance::Instance;
use crate::shortcut::multigraph::MultiGraph;
use crate::tour::canonical_cycle;
use crate::{Cost, Vertex};

/// Ordered bad chains `(q_1, ..., q_t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ChainLayout {
    chains: Vec<Vec<Vertex>>,
}

impl ChainLayout {
    /// Wraps explicit chains without canonicalizing them.
    pub fn from_chains(chains: Vec<Vec<Vertex>>) -> Result<Self> {
        if chains.is_empty() || chains.iter().any(|c| c.is_empty()) {
            return Err(Error::contract("layouts need at least one chain and no empty chains"));
        }
        let layout = ChainLayout { chains };
        let mut all = layout.order();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::contract("a vertex appears in two chains"));
        }
        Ok(layout)
    }

    /// Canonical layout for a cyclic order of bad vertices and a root set.
    ///
    /// The cycle is rotated to start at its smallest vertex. Of the two
    /// orientations, the one in which that vertex begins a chain is used; if
    /// both or neither qualify, the one whose second vertex is smaller than
    /// the last wins. Chains end at each root and `q_1` is the chain holding
    /// the smallest vertex.
    pub fn from_cycle(cycle: &[Vertex], is_root: impl Fn(Vertex) -> bool) -> Result<Self> {
        let m = cycle.len();
        if m == 0 || !cycle.iter().any(|&v| is_root(v)) {
            return Err(Error::contract(
                "a layout needs a non-empty cycle with at least one root",
            ));
        }
        let forward = canonical_cycle(cycle);
        let orient = if m >= 3 && !is_root(forward[m - 1]) && is_root(forward[1]) {
            let mut rev = vec![forward[0]];
            rev.extend(forward[1..].iter().rev());
            rev
        } else {
            forward
        };
        let mut chains = Vec::new();
        let mut current = Vec::new();
        for &v in &orient {
            current.push(v);
            if is_root(v) {
                chains.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            current.extend_from_slice(&chains[0]);
            chains[0] = current;
        }
        ChainLayout::from_chains(chains)
    }

    pub fn chains(&self) -> &[Vec<Vertex>] {
        &self.chains
    }

    pub fn t(&self) -> usize {
        self.chains.len()
    }

    pub fn starts(&self) -> Vec<Vertex> {
        self.chains.iter().map(|c| c[0]).collect()
    }

    /// Chain end vertices `b_e(q_i)`, which root the spanning forest.
    pub fn ends(&self) -> Vec<Vertex> {
        self.chains.iter().map(|c| c[c.len() - 1]).collect()
    }

    pub fn roots(&self) -> Vec<Vertex> {
        let mut r = self.ends();
        r.sort_unstable();
        r
    }

    /// Concatenation `q_1 q_2 ... q_t`, which is also the cyclic order of `C`.
    pub fn order(&self) -> Vec<Vertex> {
        self.chains.iter().flatten().copied().collect()
    }

    /// The same layout in canonical form.
    pub fn canonical(&self) -> ChainLayout {
        let ends = self.ends();
        ChainLayout::from_cycle(&self.order(), |v| ends.contains(&v)).expect("layout has a root")
    }

    /// Checks that the chains partition `bad` exactly.
    pub fn check_partition(&self, bad: &[Vertex]) -> Result<()> {
        let mut all = self.order();
        all.sort_unstable();
        if all != bad {
            return Err(Error::contract(format!(
                "layout {:?} does not partition bad set {bad:?}",
                self.chains
            )));
        }
        Ok(())
    }
}

/// Undirected Hamiltonian cycles on `bad`, each once: rotations start at the
/// smallest vertex and, for three or more vertices, the second vertex is
/// smaller than the last. Lexicographic order.
#[derive(Debug, Clone)]
pub struct Cycles {
    head: Vertex,
    rest: Vec<Vertex>,
    started: bool,
    done: bool,
}

pub fn enumerate_cycles(bad: &[Vertex]) -> Cycles {
    let mut sorted = bad.to_vec();
    sorted.sort_unstable();
    let done = sorted.is_empty();
    Cycles {
        head: sorted.first().copied().unwrap_or(0),
        rest: sorted.get(1..).map(<[Vertex]>::to_vec).unwrap_or_default(),
        started: false,
        done,
    }
}

fn next_permutation(v: &mut [Vertex]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl Iterator for Cycles {
    type Item = Vec<Vertex>;

    fn next(&mut self) -> Option<Vec<Vertex>> {
        loop {
            if self.done {
                return None;
            }
            if self.started {
                if !next_permutation(&mut self.rest) {
                    self.done = true;
                    return None;
                }
            } else {
                self.started = true;
            }
            let r = &self.rest;
            if r.len() >= 2 && r[0] > r[r.len() - 1] {
                continue;
            }
            let mut cycle = Vec::with_capacity(r.len() + 1);
            cycle.push(self.head);
            cycle.extend_from_slice(r);
            return Some(cycle);
        }
    }
}

/// Lazy stream of canonical layouts over `audit.bad`.
///
/// Yields one layout per (undirected cycle, non-empty root set) pair, with
/// root sets larger than `good_count` pruned: a guess matching an optimal
/// tour has a good vertex between consecutive chains.
#[derive(Debug, Clone)]
pub struct Layouts {
    bad: Vec<Vertex>,
    cycles: Cycles,
    cycle: Option<Vec<Vertex>>,
    mask: u64,
    good_count: usize,
}

pub fn enumerate_layouts(audit: &TriangleAudit, good_count: usize) -> Layouts {
    layouts_over(&audit.bad, good_count)
}

/// [`enumerate_layouts`] for an explicit bad-vertex set.
pub fn layouts_over(bad: &[Vertex], good_count: usize) -> Layouts {
    let mut sorted = bad.to_vec();
    sorted.sort_unstable();
    assert!(sorted.len() < 64, "bad set too large to enumerate");
    let mut cycles = enumerate_cycles(&sorted);
    let cycle = cycles.next();
    Layouts {
        bad: sorted,
        cycles,
        cycle,
        mask: 0,
        good_count,
    }
}

impl Iterator for Layouts {
    type Item = ChainLayout;

    fn next(&mut self) -> Option<ChainLayout> {
        let m = self.bad.len();
        let full = 1u64 << m;
        loop {
            let cycle = self.cycle.as_ref()?;
            self.mask += 1;
            if self.mask >= full {
                self.cycle = self.cycles.next();
                self.mask = 0;
                continue;
            }
            if self.mask.count_ones() as usize > self.good_count {
                continue;
            }
            let (bad, mask) = (&self.bad, self.mask);
            let is_root = |v: Vertex| bad.binary_search(&v).map(|i| mask >> i & 1 == 1).unwrap_or(false);
            return Some(ChainLayout::from_cycle(cycle, is_root).expect("mask is non-empty"));
        }
    }
}

/// Cycle `C` through the bad vertices: chain edges plus `(b_e(q_i), b_s(q_{i+1}))`.
///
/// One bad vertex gives no edges; two give a doubled edge.
pub fn build_bad_cycle(layout: &ChainLayout, inst: &Instance) -> Result<MultiGraph> {
    let order = layout.order();
    if let Some(&v) = order.iter().find(|&&v| v >= inst.n()) {
        return Err(Error::contract(format!(
            "layout vertex {v} outside instance of size {}",
            inst.n()
        )));
    }
    let m = order.len();
    let mut c = MultiGraph::new(inst.n());
    if m >= 2 {
        for i in 0..m {
            c.add_edge(order[i], order[(i + 1) % m]);
        }
    }
    Ok(c)
}

/// `c(C)` without materializing the multigraph.
pub fn cycle_cost(layout: &ChainLayout, inst: &Instance) -> Cost {
    let order = layout.order();
    if order.len() < 2 {
        0
    } else {
        inst.walk_cost(&order)
    }
}
