use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::{Cost, Vertex};

/// Largest vertex set [`brute_rooted_msf`] accepts.
pub const BRUTE_FOREST_LIMIT: usize = 10;

/// Minimum rooted spanning forest cost by exhaustive search.
///
/// Every forest with one root per tree is a parent function: each non-root
/// points at another vertex and following parents always ends at a root.
/// All parent functions are enumerated with cost pruning. Returns the cost
/// and the `(parent, child)` edges of one optimum.
pub fn brute_rooted_msf(
    inst: &Instance,
    vertices: &[Vertex],
    roots: &[Vertex],
) -> Result<(Cost, Vec<(Vertex, Vertex)>)> {
    let vs: Vec<Vertex> = vertices.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let rs: BTreeSet<Vertex> = roots.iter().copied().collect();
    if vs.len() > BRUTE_FOREST_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force forest",
            n: vs.len(),
            limit: BRUTE_FOREST_LIMIT,
        });
    }
    if rs.is_empty() || !rs.iter().all(|r| vs.contains(r)) {
        return Err(Error::contract("roots must be a non-empty subset of the vertices"));
    }
    let others: Vec<Vertex> = vs.iter().copied().filter(|v| !rs.contains(v)).collect();
    let mut parent: Vec<Option<Vertex>> = vec![None; inst.n()];
    let mut best = (Cost::MAX, Vec::new());
    search(inst, &vs, &rs, &others, 0, 0, &mut parent, &mut best);
    Ok(best)
}

fn reaches_root(parent: &[Option<Vertex>], roots: &BTreeSet<Vertex>, mut v: Vertex, limit: usize) -> bool {
    for _ in 0..=limit {
        if roots.contains(&v) {
            return true;
        }
        match parent[v] {
            Some(p) => v = p,
            None => return false,
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn search(
    inst: &Instance,
    vs: &[Vertex],
    roots: &BTreeSet<Vertex>,
    others: &[Vertex],
    i: usize,
    cost: Cost,
    parent: &mut Vec<Option<Vertex>>,
    best: &mut (Cost, Vec<(Vertex, Vertex)>),
) {
    if cost >= best.0 {
        return;
    }
    if i == others.len() {
        if others.iter().all(|&v| reaches_root(parent, roots, v, vs.len())) {
            let edges = others.iter().map(|&v| (parent[v].expect("assigned"), v)).collect();
            *best = (cost, edges);
        }
        return;
    }
    let v = others[i];
    for &p in vs {
        if p == v {
            continue;
        }
        parent[v] = Some(p);
        search(inst, vs, roots, others, i + 1, cost + inst.cost(v, p), parent, best);
    }
    parent[v] = None;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::rooted_msf;
    use crate::instance::fixtures::{inst4, sq4};

    #[test]
    fn fixtures() {
        assert_eq!(brute_rooted_msf(&inst4(), &[2, 3], &[2]).unwrap().0, 5);
        assert_eq!(brute_rooted_msf(&inst4(), &[1, 3], &[1]).unwrap().0, 6);
        assert_eq!(brute_rooted_msf(&sq4(), &[0, 1, 2, 3], &[0]).unwrap().0, 6);
        assert_eq!(brute_rooted_msf(&sq4(), &[0, 2], &[0, 2]).unwrap().0, 0);
    }

    #[test]
    fn matches_prim_on_a_grid() {
        let inst = Instance::from_fn("g", 7, |u, v| ((u * 13 + v * 7) % 11 + 1) as Cost).unwrap();
        for roots in [vec![0], vec![1, 5], vec![2, 3, 6]] {
            let all: Vec<_> = (0..7).collect();
            let fast = rooted_msf(&inst, &all, &roots).unwrap();
            assert_eq!(brute_rooted_msf(&inst, &all, &roots).unwrap().0, fast.cost);
        }
    }
}
