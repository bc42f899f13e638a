use super::{check_odd_set, Matching};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::Vertex;

/// Largest vertex set [`brute_matching`] accepts.
pub const BRUTE_LIMIT: usize = 16;

/// Exact minimum-cost perfect matching by dynamic programming over subsets.
/// Always pairs the lowest unmatched position first.
pub fn brute_matching(inst: &Instance, odd: &[Vertex]) -> Result<Matching> {
    check_odd_set(inst, odd)?;
    let m = odd.len();
    if m > BRUTE_LIMIT {
        return Err(Error::TooLarge {
            what: "bitmask matching",
            n: m,
            limit: BRUTE_LIMIT,
        });
    }
    let full = (1usize << m) - 1;
    let mut best = vec![i64::MAX; full + 1];
    let mut choice = vec![(0usize, 0usize); full + 1];
    best[0] = 0;
    for mask in 0..full {
        if best[mask] == i64::MAX {
            continue;
        }
        let i = (!mask).trailing_zeros() as usize;
        for j in i + 1..m {
            if mask & (1 << j) != 0 {
                continue;
            }
            let next = mask | (1 << i) | (1 << j);
            let cost = best[mask] + inst.cost(odd[i], odd[j]);
            if cost < best[next] {
                best[next] = cost;
                choice[next] = (i, j);
            }
        }
    }
    let mut pairs = Vec::with_capacity(m / 2);
    let mut mask = full;
    while mask != 0 {
        let (i, j) = choice[mask];
        pairs.push((odd[i], odd[j]));
        mask &= !((1 << i) | (1 << j));
    }
    let matching = Matching::from_pairs(inst, pairs);
    debug_assert_eq!(matching.cost, best[full]);
    Ok(matching)
}
