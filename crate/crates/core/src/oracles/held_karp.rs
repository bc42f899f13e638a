use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tour::{Provenance, Tour};
use crate::{Cost, Vertex};

/// Largest instance [`held_karp`] accepts.
pub const HELD_KARP_LIMIT: usize = 18;

const INF: Cost = Cost::MAX / 4;

/// Exact optimal tour by dynamic programming over subsets, O(n^2 2^n).
///
/// Vertex 0 is fixed as the start; `dp[S][j]` is the cheapest path from 0
/// through the set `S` of other vertices ending at `j`. Reconstruction takes
/// the smallest predecessor among equal costs, so the result is deterministic.
pub fn held_karp(inst: &Instance) -> Result<Tour> {
    let n = inst.n();
    if n > HELD_KARP_LIMIT {
        return Err(Error::TooLarge {
            what: "Held-Karp",
            n,
            limit: HELD_KARP_LIMIT,
        });
    }
    if n <= 3 {
        return Tour::new(inst, (0..n).collect(), Provenance::HeldKarp);
    }
    let m = n - 1;
    let full = (1usize << m) - 1;
    // Index vertex v >= 1 as bit v - 1.
    let mut dp = vec![INF; (full + 1) * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = inst.cost(0, j + 1);
    }
    for mask in 1..=full {
        for j in 0..m {
            let here = dp[mask * m + j];
            if here >= INF || mask & (1 << j) == 0 {
                continue;
            }
            let row = inst.row(j + 1);
            let mut rest = full & !mask;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let slot = &mut dp[(mask | 1 << x) * m + x];
                let cand = here + row[x + 1];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }

    let close = |j: usize| dp[full * m + j] + inst.cost(j + 1, 0);
    let mut last = (0..m).min_by_key(|&j| (close(j), j)).expect("n >= 4");
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut mask = full;
    loop {
        order.push(last + 1);
        let prev_mask = mask & !(1 << last);
        if prev_mask == 0 {
            break;
        }
        let target = dp[mask * m + last];
        let prev = (0..m)
            .find(|&p| {
                prev_mask & (1 << p) != 0
                    && dp[prev_mask * m + p] < INF
                    && dp[prev_mask * m + p] + inst.cost(p + 1, last + 1) == target
            })
            .expect("predecessor on an optimal path");
        mask = prev_mask;
        last = prev;
    }
    order.push(0);
    order.reverse();
    Ok(Tour::new(inst, order, Provenance::HeldKarp)?.canonicalize())
}
