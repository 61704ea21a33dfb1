//! Cores, independence numbers and matching numbers of trees, forests and
//! unicyclic graphs, each fast path paired with a slower definitional route
//! and an exhaustive oracle for small graphs.
//!
//! ```
//! use unicore::{core, fixture, CoreMethod};
//!
//! let g = fixture("fig2_G").unwrap();
//! let r = core(&g).unwrap();
//! assert_eq!(r.method, CoreMethod::StructuralDecomposition);
//! assert_eq!(r.core.into_iter().collect::<Vec<_>>(), ["a", "b"]);
//! ```

pub mod cli;
pub mod core;
pub mod error;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod solver;
pub mod verify;

pub use crate::core::{
    check_structural_consistency, core, core_by_deletion, core_tree_by_matching, core_unicyclic, CoreMethod,
    CoreResult,
};
pub use error::{Error, Result};
pub use gen::{fixture, gen_forest, gen_tree, gen_unicyclic, GenKind, GenSpec};
pub use graph::{parse_graph, CycleInfo, Edge, Graph, GraphClass};
pub use oracle::{oracle_analyze, OracleReport};
pub use solver::{alpha, cycle_alpha_critical_edges, is_alpha_critical, is_koenig_egervary, max_matching, mu, MatchingResult};
