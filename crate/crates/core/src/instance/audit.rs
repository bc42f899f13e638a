use serde::Serialize;

use super::Instance;
use crate::Vertex;

/// Triangle-inequality audit of an instance.
///
/// A triple is violating when one of its three edges is strictly longer than
/// the other two combined. Bad vertices lie on at least one violating triple;
/// every triangle with a good vertex is metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleAudit {
    pub k: usize,
    #[serde(rename = "k_T")]
    pub k_t: usize,
    pub bad: Vec<Vertex>,
    pub good: Vec<Vertex>,
    pub violating: Vec<[Vertex; 3]>,
    #[serde(skip)]
    is_bad: Vec<bool>,
}

impl TriangleAudit {
    pub fn is_bad(&self, v: Vertex) -> bool {
        self.is_bad[v]
    }

    pub fn is_good(&self, v: Vertex) -> bool {
        !self.is_bad[v]
    }

    pub fn n(&self) -> usize {
        self.is_bad.len()
    }

    pub fn is_metric(&self) -> bool {
        self.k == 0
    }
}

/// True when the triangle `u, v, w` violates the triangle inequality.
pub fn violates(inst: &Instance, u: Vertex, v: Vertex, w: Vertex) -> bool {
    let (a, b, c) = (inst.cost(u, v), inst.cost(v, w), inst.cost(u, w));
    a > b + c || b > a + c || c > a + b
}

/// Scans all triples in O(n^3).
pub fn audit_triangles(inst: &Instance) -> TriangleAudit {
    let n = inst.n();
    let mut violating = Vec::new();
    let mut is_bad = vec![false; n];
    for u in 0..n {
        for v in u + 1..n {
            let uv = inst.cost(u, v);
            for w in v + 1..n {
                let (vw, uw) = (inst.cost(v, w), inst.cost(u, w));
                if uv > vw + uw || vw > uv + uw || uw > uv + vw {
                    violating.push([u, v, w]);
                    is_bad[u] = true;
                    is_bad[v] = true;
                    is_bad[w] = true;
                }
            }
        }
    }
    let bad: Vec<Vertex> = (0..n).filter(|&v| is_bad[v]).collect();
    let good: Vec<Vertex> = (0..n).filter(|&v| !is_bad[v]).collect();
    TriangleAudit {
        k: violating.len(),
        k_t: bad.len(),
        bad,
        good,
        violating,
        is_bad,
    }
}
