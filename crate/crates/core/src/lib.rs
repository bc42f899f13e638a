//! Approximation toolkit for the traveling salesperson problem on instances
//! that are "almost metric": only `k` triangles violate the triangle
//! inequality.
//!
//! The solver enumerates the possible orders of the bad vertices (those on a
//! violating triangle) and how they group into chains, and for every guess
//! builds an Eulerian multigraph out of a cycle on the bad vertices, a rooted
//! spanning forest of the good ones and a minimum-cost perfect matching. The
//! multigraph is then shortcut into a Hamiltonian cycle using only triangles
//! that contain a good vertex. The best tour over all guesses costs at most
//! 2.5 times the optimum.
//!
//! Exact references (Held–Karp, bitmask matching, brute-force forests) live
//! in [`oracles`] and [`matching`] and back the test suites.

pub mod error;
pub mod forest;
pub mod instance;
pub mod layout;
pub mod matching;
pub mod oracles;
pub mod shortcut;
pub mod solver;
pub mod tour;

pub use error::{Error, Result};
pub use forest::{rooted_msf, RootedForest};
pub use instance::audit::{audit_triangles, TriangleAudit};
pub use instance::generate::{gen_metric, gen_planted, Planted};
pub use instance::Instance;
pub use layout::{build_bad_cycle, enumerate_layouts, ChainLayout};
pub use matching::{brute_matching, min_cost_perfect_matching, Matching};
pub use oracles::{extract_layout, held_karp, lemma_suite, LemmaReport};
pub use shortcut::multigraph::MultiGraph;
pub use solver::{christofides, solve, Regime, Solution, SolveOptions, SolveStats};
pub use tour::{Provenance, Tour};

/// Vertex index into an [`Instance`].
pub type Vertex = usize;

/// Edge or tour cost. Costs are exact integers so every bound is checked
/// without tolerance.
pub type Cost = i64;
