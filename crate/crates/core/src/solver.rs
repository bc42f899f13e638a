//! End-to-end solver: audit, enumerate layouts, run the per-layout pipeline
//! and keep the cheapest tour.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::rooted_msf;
use crate::instance::audit::{audit_triangles, TriangleAudit};
use crate::instance::Instance;
use crate::layout::{build_bad_cycle, enumerate_cycles, enumerate_layouts, ChainLayout};
use crate::matching::min_cost_perfect_matching;
use crate::shortcut::{assemble_h, check_bad_structure, shortcut};
use crate::tour::{canonical_cycle, Provenance, Tour};
use crate::{Cost, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Refuse instances with more bad vertices than this.
    pub max_bad: usize,
    /// Worker threads for layout evaluation; 1 runs inline.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_bad: 9, jobs: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// At most three vertices.
    Trivial,
    /// No violating triangle.
    Christofides,
    /// No good vertex: the cheapest cycle through the bad vertices.
    BadCycle,
    Layouts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub k: usize,
    #[serde(rename = "k_T")]
    pub k_t: usize,
    pub layouts_evaluated: usize,
    pub certified_layouts: usize,
    pub regime: Regime,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Everything one layout produced.
#[derive(Debug, Clone)]
pub struct LayoutOutcome {
    pub layout: ChainLayout,
    pub cycle_cost: Cost,
    pub forest_cost: Cost,
    pub matching_cost: Cost,
    /// `C + F + M` before repair.
    pub h_cost: Cost,
    pub tour: Tour,
    pub certified: bool,
    /// Walk cost at every repair and splice step, starting from `h_cost`.
    pub trace: Vec<Cost>,
    /// Bad-vertex structure of the repaired multigraph.
    pub structure: std::result::Result<(), String>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub tour: Tour,
    pub stats: SolveStats,
    /// The winning layout's pipeline, in the layout regime.
    pub best: Option<LayoutOutcome>,
}

/// Runs the full pipeline for one layout.
pub fn evaluate_layout(inst: &Instance, audit: &TriangleAudit, layout: &ChainLayout) -> Result<LayoutOutcome> {
    layout.check_partition(&audit.bad)?;
    let n = inst.n();
    let cycle = build_bad_cycle(layout, inst)?;
    let roots = layout.roots();
    let mut vertices = audit.good.clone();
    vertices.extend_from_slice(&roots);
    let forest = rooted_msf(inst, &vertices, &roots)?;

    let mut g = cycle.clone();
    g.merge(&forest.to_multigraph(n));
    let matching = min_cost_perfect_matching(inst, &g.odd_vertices())?;
    let h = assemble_h(&cycle, &forest, &matching)?;
    let h_cost = h.cost(inst);

    let out = shortcut(&h, audit, inst)?;
    let structure = check_bad_structure(&out.repaired, audit);
    let tour = Tour {
        provenance: Provenance::Layout { layout: layout.clone() },
        ..out.tour
    };
    Ok(LayoutOutcome {
        layout: layout.clone(),
        cycle_cost: cycle.cost(inst),
        forest_cost: forest.cost,
        matching_cost: matching.cost,
        h_cost,
        tour,
        certified: out.certified,
        trace: out.trace,
        structure,
    })
}

/// Christofides' algorithm for instances without violating triangles.
pub fn christofides(inst: &Instance) -> Result<Tour> {
    let audit = audit_triangles(inst);
    if !audit.is_metric() {
        return Err(Error::contract(format!(
            "christofides needs a metric instance, found {} violating triangles",
            audit.k
        )));
    }
    let n = inst.n();
    if n <= 3 {
        return Tour::new(inst, (0..n).collect(), Provenance::Christofides);
    }
    let all: Vec<Vertex> = (0..n).collect();
    let tree = rooted_msf(inst, &all, &[0])?;
    let g = tree.to_multigraph(n);
    let matching = min_cost_perfect_matching(inst, &g.odd_vertices())?;
    let h = assemble_h(&crate::MultiGraph::new(n), &tree, &matching)?;
    let out = shortcut(&h, &audit, inst)?;
    Ok(Tour {
        provenance: Provenance::Christofides,
        ..out.tour
    })
}

type Key = (Cost, Vec<Vertex>);

fn key(tour: &Tour) -> Key {
    (tour.cost, canonical_cycle(&tour.order))
}

#[derive(Default)]
struct Acc {
    best: Option<(Key, LayoutOutcome)>,
    evaluated: usize,
    certified: usize,
}

impl Acc {
    fn push(mut self, outcome: LayoutOutcome) -> Self {
        self.evaluated += 1;
        self.certified += usize::from(outcome.certified);
        let k = key(&outcome.tour);
        self.best = Some(match self.best.take() {
            Some(b) if (&b.0, &b.1.layout) <= (&k, &outcome.layout) => b,
            _ => (k, outcome),
        });
        self
    }

    fn merge(mut self, other: Acc) -> Self {
        self.evaluated += other.evaluated;
        self.certified += other.certified;
        self.best = match (self.best.take(), other.best) {
            (Some(a), Some(b)) => Some(if (&a.0, &a.1.layout) <= (&b.0, &b.1.layout) {
                a
            } else {
                b
            }),
            (a, b) => a.or(b),
        };
        self
    }
}

fn run_layouts(inst: &Instance, audit: &TriangleAudit, jobs: usize) -> Result<Acc> {
    let layouts = enumerate_layouts(audit, audit.good.len());
    if jobs <= 1 {
        let mut acc = Acc::default();
        for layout in layouts {
            acc = acc.push(evaluate_layout(inst, audit, &layout)?);
        }
        return Ok(acc);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| {
        layouts
            .par_bridge()
            .try_fold(Acc::default, |acc, layout| {
                evaluate_layout(inst, audit, &layout).map(|o| acc.push(o))
            })
            .try_reduce(Acc::default, |a, b| Ok(a.merge(b)))
    })
}

/// Approximate tour within 2.5 times the optimum.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<Solution> {
    let started = Instant::now();
    let audit = audit_triangles(inst);
    let n = inst.n();
    let mut stats = SolveStats {
        k: audit.k,
        k_t: audit.k_t,
        layouts_evaluated: 0,
        certified_layouts: 0,
        regime: Regime::Trivial,
        wall_time: Duration::ZERO,
    };
    let mut best = None;

    let tour = if n <= 3 {
        Tour::new(inst, (0..n).collect(), Provenance::Trivial)?
    } else if audit.is_metric() {
        stats.regime = Regime::Christofides;
        christofides(inst)?
    } else if audit.bad.len() > opts.max_bad {
        return Err(Error::TooManyBad {
            bad: audit.bad.len(),
            limit: opts.max_bad,
        });
    } else if audit.good.is_empty() {
        stats.regime = Regime::BadCycle;
        let mut top: Option<Key> = None;
        for cycle in enumerate_cycles(&audit.bad) {
            stats.layouts_evaluated += 1;
            let k = (inst.walk_cost(&cycle), canonical_cycle(&cycle));
            if top.as_ref().is_none_or(|t| k < *t) {
                top = Some(k);
            }
        }
        let (_, order) = top.expect("at least one cycle");
        Tour::new(inst, order, Provenance::BadCycle)?
    } else {
        stats.regime = Regime::Layouts;
        let acc = run_layouts(inst, &audit, opts.jobs)?;
        stats.layouts_evaluated = acc.evaluated;
        stats.certified_layouts = acc.certified;
        let (_, outcome) = acc.best.ok_or_else(|| Error::contract("no layout was evaluated"))?;
        let tour = outcome.tour.clone();
        best = Some(outcome);
        tour
    };

    stats.wall_time = started.elapsed();
    Ok(Solution {
        tour: tour.canonicalize(),
        stats,
        best,
    })
}
