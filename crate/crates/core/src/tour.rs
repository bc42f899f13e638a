use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::layout::ChainLayout;
use crate::{Cost, Vertex};

/// Which routine produced a tour.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    /// n <= 3: only one Hamiltonian cycle exists.
    Trivial,
    Christofides,
    /// Every vertex is bad; the best cycle over the bad-vertex orders.
    BadCycle,
    /// The per-layout pipeline for this layout.
    Layout {
        layout: ChainLayout,
    },
    HeldKarp,
    /// Produced directly by the shortcut routine, outside the solver.
    Shortcut,
}

/// Hamiltonian cycle as a vertex order; the closing edge is implied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tour {
    pub order: Vec<Vertex>,
    pub cost: Cost,
    pub provenance: Provenance,
}

impl Tour {
    /// Checks that `order` is a permutation of all vertices and prices it.
    pub fn new(inst: &Instance, order: Vec<Vertex>, provenance: Provenance) -> Result<Self> {
        check_permutation(inst.n(), &order)?;
        let cost = inst.walk_cost(&order);
        Ok(Tour {
            order,
            cost,
            provenance,
        })
    }

    /// Recomputes the cost and the permutation property against `inst`.
    pub fn verify(&self, inst: &Instance) -> Result<()> {
        check_permutation(inst.n(), &self.order)?;
        let cost = inst.walk_cost(&self.order);
        if cost != self.cost {
            return Err(Error::contract(format!(
                "stored tour cost {} but walk costs {cost}",
                self.cost
            )));
        }
        Ok(())
    }

    /// Rotation starting at the smallest vertex, oriented so the second
    /// vertex is smaller than the last.
    pub fn canonical_order(&self) -> Vec<Vertex> {
        canonical_cycle(&self.order)
    }

    pub fn canonicalize(mut self) -> Self {
        self.order = canonical_cycle(&self.order);
        self
    }
}

pub(crate) fn canonical_cycle(order: &[Vertex]) -> Vec<Vertex> {
    let len = order.len();
    let Some(start) = order.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i) else {
        return Vec::new();
    };
    let forward: Vec<Vertex> = (0..len).map(|i| order[(start + i) % len]).collect();
    if len >= 3 && forward[1] > forward[len - 1] {
        let mut rev = Vec::with_capacity(len);
        rev.push(forward[0]);
        rev.extend(forward[1..].iter().rev());
        rev
    } else {
        forward
    }
}

fn check_permutation(n: usize, order: &[Vertex]) -> Result<()> {
    if order.len() != n {
        return Err(Error::contract(format!(
            "tour visits {} vertices, instance has {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::contract(format!("tour is not a permutation (vertex {v})")));
        }
    }
    Ok(())
}
