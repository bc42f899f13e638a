//! Seeded instance generators: metric point sets and planted violations.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::audit::{audit_triangles, TriangleAudit};
use super::Instance;
use crate::error::{Error, Result};
use crate::{Cost, Vertex};

const SPAN: i64 = 1000;
const METRIC_ATTEMPTS: usize = 64;
const PLANT_ATTEMPTS: usize = 512;

/// A planted instance together with the vertex subset that received the
/// inflated edges and its audit.
#[derive(Debug, Clone)]
pub struct Planted {
    pub instance: Instance,
    pub chosen: Vec<Vertex>,
    pub audit: TriangleAudit,
}

fn ceil_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

fn random_points(n: usize, rng: &mut impl Rng) -> Vec<(i64, i64)> {
    (0..n)
        .map(|_| (rng.gen_range(0..SPAN), rng.gen_range(0..SPAN)))
        .collect()
}

/// Euclidean distances rounded up. Ceiling preserves the triangle inequality,
/// the post-hoc audit below still guards the contract.
fn euclidean(name: &str, pts: &[(i64, i64)]) -> Result<Instance> {
    Instance::from_fn(name, pts.len(), |u, v| {
        let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
        ceil_sqrt((dx * dx + dy * dy) as u64) as Cost
    })
}

fn metric_from(n: usize, name: &str, rng: &mut impl Rng) -> Result<Instance> {
    let mut pts = random_points(n, rng);
    for _ in 0..METRIC_ATTEMPTS {
        let inst = euclidean(name, &pts)?;
        if audit_triangles(&inst).is_metric() {
            return Ok(inst);
        }
        for p in pts.iter_mut() {
            p.0 = (p.0 + rng.gen_range(-2..=2)).clamp(0, SPAN - 1);
            p.1 = (p.1 + rng.gen_range(-2..=2)).clamp(0, SPAN - 1);
        }
    }
    Err(Error::RetryLimit {
        attempts: METRIC_ATTEMPTS,
    })
}

/// Random points in the plane with rounded Euclidean distances; always metric.
pub fn gen_metric(n: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    metric_from(n, &format!("metric_n{n}_s{seed}"), &mut rng)
}

/// Metric instance with violations planted inside a random subset of
/// `target_bad` vertices.
///
/// Every inflated or deflated edge `(u, v)` inside the subset stays within
/// `[max_g |c(u,g) - c(v,g)|, min_g c(u,g) + c(g,v)]` over the vertices `g`
/// outside it, so triangles through an outside vertex remain metric and
/// `bad ⊆ chosen`. Attempts that make every chosen vertex bad are
/// preferred; otherwise the fullest one is returned. The achieved `k` is
/// whatever the audit finds.
pub fn gen_planted(n: usize, target_bad: usize, seed: u64) -> Result<Planted> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "planted instances need n >= 4, got {n}"
        )));
    }
    if target_bad < 3 || target_bad > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "need 3 <= bad <= n - 1 = {}, got {target_bad}",
            n - 1
        )));
    }
    let name = format!("planted_n{n}_b{target_bad}_s{seed}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base = metric_from(n, &name, &mut rng)?;
    let mut fallback: Option<Planted> = None;
    for attempt in 0..PLANT_ATTEMPTS {
        if attempt > 0 && attempt % 32 == 0 {
            base = metric_from(n, &name, &mut rng)?;
        }
        let mut chosen: Vec<Vertex> = sample(&mut rng, n, target_bad).into_vec();
        chosen.sort_unstable();
        let inst = plant(&base, &chosen, &mut rng)?;
        let audit = audit_triangles(&inst);
        if audit.k == 0 || !audit.bad.iter().all(|v| chosen.binary_search(v).is_ok()) {
            continue;
        }
        let planted = Planted {
            instance: inst,
            chosen,
            audit,
        };
        if planted.audit.bad.len() == target_bad {
            return Ok(planted);
        }
        // Keep the fullest partial plant in case no attempt covers the subset.
        if fallback
            .as_ref()
            .is_none_or(|f| f.audit.bad.len() < planted.audit.bad.len())
        {
            fallback = Some(planted);
        }
    }
    fallback.ok_or(Error::RetryLimit {
        attempts: PLANT_ATTEMPTS,
    })
}

fn plant(base: &Instance, chosen: &[Vertex], rng: &mut impl Rng) -> Result<Instance> {
    let n = base.n();
    let outside: Vec<Vertex> = (0..n).filter(|v| chosen.binary_search(v).is_err()).collect();
    let lower = |u: Vertex, v: Vertex| {
        outside
            .iter()
            .map(|&g| (base.cost(u, g) - base.cost(v, g)).abs())
            .max()
            .unwrap_or(0)
    };
    let upper = |u: Vertex, v: Vertex| {
        outside
            .iter()
            .map(|&g| base.cost(u, g) + base.cost(g, v))
            .min()
            .unwrap_or(Cost::MAX)
    };

    let mut matrix = base.matrix();
    let mut set = |u: Vertex, v: Vertex, c: Cost| {
        matrix[u][v] = c;
        matrix[v][u] = c;
    };
    for (i, &u) in chosen.iter().enumerate() {
        for &v in &chosen[i + 1..] {
            match rng.gen_range(0..3) {
                0 => {}
                1 => set(u, v, lower(u, v)),
                _ => set(u, v, upper(u, v)),
            }
        }
    }
    // Force a violation through every chosen vertex: long edge x-a with a
    // short detour x-w-a.
    let mut order = chosen.to_vec();
    order.shuffle(rng);
    for &x in &order {
        let others: Vec<Vertex> = chosen.iter().copied().filter(|&v| v != x).collect();
        let pick = sample(rng, others.len(), 2);
        let (a, w) = (others[pick.index(0)], others[pick.index(1)]);
        set(x, a, upper(x, a));
        set(x, w, lower(x, w));
        set(w, a, lower(w, a));
    }
    Instance::new(base.name(), matrix)
}
