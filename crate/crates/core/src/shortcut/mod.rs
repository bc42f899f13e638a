//! From the Eulerian multigraph `H = C + F + M` to a Hamiltonian cycle.
//!
//! Every step either keeps the walk cost or lowers it via a triangle that
//! contains a good vertex. Steps that cannot be justified that way are still
//! carried out, but the result is marked uncertified.

pub mod multigraph;

use crate::error::{Error, Result};
use crate::forest::RootedForest;
use crate::instance::audit::TriangleAudit;
use crate::instance::Instance;
use crate::matching::Matching;
use crate::tour::{Provenance, Tour};
use crate::{Cost, Vertex};

use multigraph::MultiGraph;

/// `C + F + M` as one edge multiset, checked to be Eulerian and spanning.
pub fn assemble_h(cycle: &MultiGraph, forest: &RootedForest, matching: &Matching) -> Result<MultiGraph> {
    let n = cycle.n();
    let mut h = cycle.clone();
    h.merge(&forest.to_multigraph(n));
    h.merge(&matching.to_multigraph(n));
    let odd = h.odd_vertices();
    if !odd.is_empty() {
        return Err(Error::contract(format!("H has odd-degree vertices {odd:?}")));
    }
    if !h.spans() {
        return Err(Error::contract("H does not span every vertex"));
    }
    Ok(h)
}

/// One reroute: a copy of `(b, other)` and the edge `(b, good)` were
/// replaced by `(good, other)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reroute {
    pub b: Vertex,
    pub other: Vertex,
    pub good: Vertex,
}

#[derive(Debug, Clone)]
pub struct Repair {
    pub graph: MultiGraph,
    pub reroutes: Vec<Reroute>,
    /// False if some doubled bad–bad edge had no good neighbour on either end.
    pub certified: bool,
    /// Multigraph cost before the first and after every reroute.
    pub trace: Vec<Cost>,
}

/// Removes doubled edges between two bad vertices.
///
/// For a doubled `(b, b')` one copy is dropped and a good neighbour `g` of
/// either endpoint is used to swap `(b, g)` for `(g, b')`. Degrees stay even,
/// connectivity is kept through the surviving copy, and the cost change
/// `c(g, b') - c(g, b) - c(b, b')` is never positive. Among all candidate
/// `(endpoint, g)` choices the most negative change wins, then the smaller
/// endpoint, then the smaller `g`.
pub fn repair_double_bad_edges(h: &MultiGraph, audit: &TriangleAudit, inst: &Instance) -> Repair {
    let mut g = h.clone();
    let mut trace = vec![g.cost(inst)];
    let mut reroutes = Vec::new();
    let mut certified = true;
    let mut stuck: Vec<(Vertex, Vertex)> = Vec::new();

    loop {
        let doubled = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| audit.is_bad(u) && audit.is_bad(v) && g.multiplicity(u, v) >= 2)
            .find(|e| !stuck.contains(e));
        let Some((u, v)) = doubled else { break };

        let mut choice: Option<(Cost, Vertex, Vertex, Vertex)> = None;
        for (b, other) in [(u, v), (v, u)] {
            for (w, _) in g.neighbors(b) {
                if !audit.is_good(w) {
                    continue;
                }
                let delta = inst.cost(w, other) - inst.cost(w, b) - inst.cost(b, other);
                let key = (delta, b, w, other);
                if choice.is_none_or(|c| key < c) {
                    choice = Some(key);
                }
            }
        }
        match choice {
            Some((_, b, good, other)) => {
                g.remove_edge(b, other);
                g.remove_edge(b, good);
                g.add_edge(good, other);
                reroutes.push(Reroute { b, other, good });
                trace.push(g.cost(inst));
            }
            None => {
                certified = false;
                stuck.push((u, v));
            }
        }
    }

    Repair {
        graph: g,
        reroutes,
        certified,
        trace,
    }
}

/// Structure of a repaired `H`: every bad vertex has at most
/// three bad edge ends and no bad–bad edge is doubled. Returns a witness on
/// failure.
pub fn check_bad_structure(h: &MultiGraph, audit: &TriangleAudit) -> std::result::Result<(), String> {
    for &b in &audit.bad {
        let mut bad_ends = 0;
        for (w, m) in h.neighbors(b) {
            if audit.is_bad(w) {
                if m >= 2 {
                    return Err(format!("bad edge ({b},{w}) has multiplicity {m}"));
                }
                bad_ends += m;
            }
        }
        if bad_ends > 3 {
            return Err(format!("bad vertex {b} has {bad_ends} bad neighbours"));
        }
    }
    Ok(())
}

/// Closed Euler walk of `h` by Hierholzer's algorithm (the return to the
/// start is left implicit). Starts at the smallest vertex with an edge and
/// always leaves through the smallest remaining neighbour.
pub fn euler_tour(h: &MultiGraph) -> Result<Vec<Vertex>> {
    if let Some(&v) = h.odd_vertices().first() {
        return Err(Error::contract(format!("vertex {v} has odd degree")));
    }
    if !h.edges_connected() {
        return Err(Error::contract("multigraph edges are not connected"));
    }
    let Some(start) = (0..h.n()).find(|&v| h.degree(v) > 0) else {
        return Ok(Vec::new());
    };
    let mut g = h.clone();
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(h.edge_count() + 1);
    while let Some(&u) = stack.last() {
        let next = g.neighbors(u).next().map(|(w, _)| w);
        match next {
            Some(w) => {
                g.remove_edge(u, w);
                stack.push(w);
            }
            None => circuit.push(stack.pop().expect("non-empty stack")),
        }
    }
    circuit.reverse();
    circuit.pop();
    Ok(circuit)
}

/// A shortened closed walk with its cost history.
#[derive(Debug, Clone)]
pub struct Splice {
    pub walk: Vec<Vertex>,
    /// Walk cost before the first and after every splice.
    pub trace: Vec<Cost>,
    /// False if some splice had no good neighbour to lean on.
    pub certified: bool,
}

fn collapse(walk: &mut Vec<Vertex>) {
    walk.dedup();
    while walk.len() > 1 && walk.first() == walk.last() {
        walk.pop();
    }
}

/// Splices out repeated bad vertices until each occurs once.
///
/// A candidate is an occurrence of a repeated bad vertex `b` between `x` and
/// `y`; replacing `x b y` by `x y` changes the cost by
/// `c(x, y) - c(x, b) - c(b, y)`. Only occurrences with a good `x` or `y` are
/// safe, and of those the most negative change (then the earliest position)
/// is taken. If no safe occurrence exists the best unsafe one is used and the
/// result is uncertified.
pub fn splice_bad(walk: &[Vertex], audit: &TriangleAudit, inst: &Instance) -> Splice {
    let mut s = walk.to_vec();
    collapse(&mut s);
    let mut trace = vec![inst.walk_cost(&s)];
    let mut certified = true;
    let mut count = vec![0usize; inst.n()];
    for &v in &s {
        count[v] += 1;
    }

    loop {
        let len = s.len();
        let mut safe: Option<(Cost, usize)> = None;
        let mut unsafe_: Option<(Cost, usize)> = None;
        for i in 0..len {
            let b = s[i];
            if !audit.is_bad(b) || count[b] < 2 {
                continue;
            }
            let x = s[(i + len - 1) % len];
            let y = s[(i + 1) % len];
            let delta = inst.cost(x, y) - inst.cost(x, b) - inst.cost(b, y);
            let slot = if audit.is_good(x) || audit.is_good(y) {
                &mut safe
            } else {
                &mut unsafe_
            };
            if slot.is_none_or(|c| (delta, i) < c) {
                *slot = Some((delta, i));
            }
        }
        let i = match (safe, unsafe_) {
            (Some((_, i)), _) => i,
            (None, Some((_, i))) => {
                certified = false;
                i
            }
            (None, None) => break,
        };
        count[s[i]] -= 1;
        s.remove(i);
        let before = s.len();
        let mut kept = Vec::with_capacity(before);
        for &v in &s {
            kept.push(v);
        }
        collapse(&mut kept);
        if kept.len() != before {
            count.iter_mut().for_each(|c| *c = 0);
            for &v in &kept {
                count[v] += 1;
            }
        }
        s = kept;
        trace.push(inst.walk_cost(&s));
    }

    Splice {
        walk: s,
        trace,
        certified,
    }
}

/// Keeps the first occurrence of every vertex. Each skipped occurrence is a
/// good vertex, so each splice runs through a metric triangle.
pub fn splice_good(walk: &[Vertex], audit: &TriangleAudit, inst: &Instance) -> Result<(Tour, Vec<Cost>)> {
    let mut s = walk.to_vec();
    let mut trace = vec![inst.walk_cost(&s)];
    let mut seen = vec![false; inst.n()];
    let mut i = 0;
    while i < s.len() {
        let v = s[i];
        if seen[v] {
            if audit.is_bad(v) {
                return Err(Error::contract(format!("bad vertex {v} repeats after bad splicing")));
            }
            s.remove(i);
            trace.push(inst.walk_cost(&s));
        } else {
            seen[v] = true;
            i += 1;
        }
    }
    let tour = Tour::new(inst, s, Provenance::Shortcut)?;
    Ok((tour, trace))
}

/// Result of the complete shortcut routine on one multigraph.
#[derive(Debug, Clone)]
pub struct Shortcut {
    pub tour: Tour,
    pub certified: bool,
    /// Cost of `H`, then after every reroute, then the Euler walk and every splice.
    pub trace: Vec<Cost>,
    pub repaired: MultiGraph,
}

/// Repair, Euler tour, bad splicing and good splicing in sequence.
pub fn shortcut(h: &MultiGraph, audit: &TriangleAudit, inst: &Instance) -> Result<Shortcut> {
    let repair = repair_double_bad_edges(h, audit, inst);
    let walk = euler_tour(&repair.graph)?;
    let bad = splice_bad(&walk, audit, inst);
    let (tour, good_trace) = splice_good(&bad.walk, audit, inst)?;
    let mut trace = repair.trace;
    trace.extend(bad.trace);
    trace.extend(good_trace.into_iter().skip(1));
    Ok(Shortcut {
        tour,
        certified: repair.certified && bad.certified,
        trace,
        repaired: repair.graph,
    })
}
