//! Fixed workloads shared by the criterion benches.

use tspk_core::{gen_planted, Instance};

/// Planted instance with exactly `bad` bad vertices, found by scanning seeds
/// upward from `seed`.
pub fn planted_exact(n: usize, bad: usize, seed: u64) -> (Instance, u64) {
    (seed..)
        .find_map(|s| {
            let p = gen_planted(n, bad, s).ok()?;
            (p.audit.bad.len() == bad).then_some((p.instance, s))
        })
        .expect("some seed plants the requested bad set")
}

/// Vertex set `0..m` of a planted instance, used as a matching workload.
pub fn matching_set(m: usize) -> Vec<usize> {
    (0..m).collect()
}
