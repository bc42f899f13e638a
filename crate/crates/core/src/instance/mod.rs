//! Cost matrices, triangle audits, file formats and generators.

pub mod audit;
pub mod generate;
mod io;
mod tsplib;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Cost, Vertex};

/// Complete undirected graph given by a symmetric, non-negative integer cost
/// matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "io::InstanceFile", into = "io::InstanceFile")]
pub struct Instance {
    name: String,
    n: usize,
    cost: Vec<Cost>,
}

impl Instance {
    /// Validates and builds an instance from a row-major matrix.
    pub fn new(name: impl Into<String>, matrix: Vec<Vec<Cost>>) -> Result<Self> {
        let n = matrix.len();
        Self::with_dimension(name, n, matrix)
    }

    pub(crate) fn with_dimension(name: impl Into<String>, n: usize, matrix: Vec<Vec<Cost>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        if matrix.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.len(),
                context: "number of rows".into(),
            });
        }
        let mut cost = Vec::with_capacity(n * n);
        for (u, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                    context: format!("length of row {u}"),
                });
            }
            cost.extend_from_slice(row);
        }
        let inst = Instance {
            name: name.into(),
            n,
            cost,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Builds an instance from a cost function on unordered pairs.
    pub fn from_fn(name: impl Into<String>, n: usize, mut f: impl FnMut(Vertex, Vertex) -> Cost) -> Result<Self> {
        let mut matrix = vec![vec![0; n]; n];
        #[allow(clippy::needless_range_loop)]
        for u in 0..n {
            for v in u + 1..n {
                let c = f(u, v);
                matrix[u][v] = c;
                matrix[v][u] = c;
            }
        }
        Self::new(name, matrix)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for u in 0..n {
            let d = self.cost[u * n + u];
            if d != 0 {
                return Err(Error::NonZeroDiagonal { v: u, cost: d });
            }
            for v in 0..n {
                let uv = self.cost[u * n + v];
                if uv < 0 {
                    return Err(Error::NegativeCost { u, v, cost: uv });
                }
                let vu = self.cost[v * n + u];
                if uv != vu {
                    return Err(Error::Asymmetric { u, v, uv, vu });
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn cost(&self, u: Vertex, v: Vertex) -> Cost {
        self.cost[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[Cost] {
        &self.cost[u * self.n..(u + 1) * self.n]
    }

    pub fn matrix(&self) -> Vec<Vec<Cost>> {
        (0..self.n).map(|u| self.row(u).to_vec()).collect()
    }

    pub fn max_cost(&self) -> Cost {
        self.cost.iter().copied().max().unwrap_or(0)
    }

    /// Cost of the closed walk visiting `walk` in order and returning to its start.
    pub fn walk_cost(&self, walk: &[Vertex]) -> Cost {
        match walk.len() {
            0 | 1 => 0,
            len => (0..len).map(|i| self.cost(walk[i], walk[(i + 1) % len])).sum(),
        }
    }

    /// Parses either the native JSON format or the supported TSPLIB subset.
    pub fn load(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
            at: io::position_of(bytes, e.valid_up_to()),
            message: "input is not valid UTF-8".into(),
        })?;
        if text.trim_start().starts_with('{') {
            io::from_json(text)
        } else {
            tsplib::parse(text)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        io::from_json(text)
    }

    pub fn from_tsplib(text: &str) -> Result<Self> {
        tsplib::parse(text)
    }

    /// Native JSON encoding: `{"name": .., "n": .., "cost": [[..]]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization is infallible")
    }

    pub fn save(&self) -> Vec<u8> {
        let mut out = self.to_json().into_bytes();
        out.push(b'\n');
        out
    }
}
