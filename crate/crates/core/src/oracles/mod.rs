//! Exact references used by the test suites: Held–Karp, brute-force rooted
//! forests, layouts read off an optimal tour, and the lemma checks built on
//! top of them.

mod forest;
mod held_karp;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::audit::{audit_triangles, TriangleAudit};
use crate::instance::Instance;
use crate::layout::ChainLayout;
use crate::solver::{evaluate_layout, LayoutOutcome};
use crate::tour::Tour;
use crate::{Cost, Vertex};

pub use forest::{brute_rooted_msf, BRUTE_FOREST_LIMIT};
pub use held_karp::{held_karp, HELD_KARP_LIMIT};

/// Largest instance [`lemma_suite`] accepts.
pub const LEMMA_LIMIT: usize = 14;

/// Layout of the bad vertices along `tour`: maximal runs of consecutive bad
/// vertices become chains in tour order, in canonical form.
pub fn extract_layout(tour: &Tour, audit: &TriangleAudit) -> Result<ChainLayout> {
    extract_from_order(&tour.order, audit)
}

fn extract_from_order(order: &[Vertex], audit: &TriangleAudit) -> Result<ChainLayout> {
    if audit.bad.is_empty() || audit.good.is_empty() {
        return Err(Error::contract("layout extraction needs both bad and good vertices"));
    }
    let len = order.len();
    let start = order
        .iter()
        .position(|&v| audit.is_good(v))
        .ok_or_else(|| Error::contract("tour has no good vertex"))?;
    let mut chains: Vec<Vec<Vertex>> = Vec::new();
    let mut run = Vec::new();
    for i in 1..=len {
        let v = order[(start + i) % len];
        if audit.is_bad(v) {
            run.push(v);
        } else if !run.is_empty() {
            chains.push(std::mem::take(&mut run));
        }
    }
    let layout = ChainLayout::from_chains(chains)?;
    layout.check_partition(&audit.bad)?;
    Ok(layout.canonical())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Reversed,
}

/// One exact inequality `scale * lhs <= rhs` with its witness values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub lhs: Cost,
    pub rhs: Cost,
    pub holds: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub opt_cost: Cost,
    pub opt_order: Vec<Vertex>,
    pub layout: ChainLayout,
    pub direction: Direction,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&LemmaCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "opt {} layout {:?} ({:?})",
            self.opt_cost,
            self.layout.chains(),
            self.direction
        )?;
        for c in &self.checks {
            write!(
                f,
                "; {} {} ({} vs {})",
                c.name,
                if c.holds { "ok" } else { "FAIL" },
                c.lhs,
                c.rhs
            )?;
        }
        Ok(())
    }
}

fn check(name: &'static str, lhs: Cost, rhs: Cost, witness: String) -> LemmaCheck {
    LemmaCheck {
        name,
        lhs,
        rhs,
        holds: lhs <= rhs,
        witness,
    }
}

/// Runs the pipeline on the layout of an optimal tour and checks each bound
/// exactly:
///
/// * `cycle`: c(C) <= c(OPT)
/// * `forest`: c(F) <= c(OPT)
/// * `matching`: 2 c(M) <= c(OPT)
/// * `structure`: after repair no bad vertex has more than three bad
///   neighbours and no bad–bad edge is doubled
/// * `ratio`: 2 c(tour) <= 5 c(OPT)
///
/// Both directions of the optimal tour are tried; the first one whose
/// pipeline is certified is reported.
pub fn lemma_suite(inst: &Instance) -> Result<LemmaReport> {
    let n = inst.n();
    if n > LEMMA_LIMIT {
        return Err(Error::TooLarge {
            what: "lemma suite",
            n,
            limit: LEMMA_LIMIT,
        });
    }
    let audit = audit_triangles(inst);
    if audit.is_metric() {
        return Err(Error::contract("lemma suite needs at least one violating triangle"));
    }
    if audit.good.is_empty() {
        return Err(Error::contract("lemma suite needs at least one good vertex"));
    }
    let opt = held_karp(inst)?;
    let mut reversed = opt.order.clone();
    reversed.reverse();

    let mut runs: Vec<(Direction, LayoutOutcome)> = Vec::with_capacity(2);
    for (dir, order) in [(Direction::Forward, &opt.order), (Direction::Reversed, &reversed)] {
        let layout = extract_from_order(order, &audit)?;
        runs.push((dir, evaluate_layout(inst, &audit, &layout)?));
    }
    let pick = runs.iter().position(|(_, o)| o.certified).unwrap_or(0);
    let (direction, out) = runs.swap_remove(pick);

    let c = opt.cost;
    let structure = match (&out.structure, out.certified) {
        (Ok(()), true) => check("structure", 0, 0, "ok".into()),
        (Ok(()), false) => check("structure", 1, 0, "pipeline not certified".into()),
        (Err(w), _) => check("structure", 1, 0, w.clone()),
    };
    let checks = vec![
        check("cycle", out.cycle_cost, c, format!("c(C) = {}", out.cycle_cost)),
        check("forest", out.forest_cost, c, format!("c(F) = {}", out.forest_cost)),
        check(
            "matching",
            2 * out.matching_cost,
            c,
            format!("c(M) = {}", out.matching_cost),
        ),
        structure,
        check(
            "ratio",
            2 * out.tour.cost,
            5 * c,
            format!("c(tour) = {}", out.tour.cost),
        ),
    ];
    Ok(LemmaReport {
        opt_cost: c,
        opt_order: opt.order,
        layout: out.layout,
        direction,
        checks,
    })
}
