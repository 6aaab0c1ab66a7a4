//! Witness search, line/AP hypergraph coloring, and certificates.

mod certificate;
mod hypergraph;
mod numbers;
mod solver;
mod symmetry;
mod witness;

use thiserror::Error;

use crate::instances::{ColoringError, InstanceError};

pub use certificate::{CertInstance, Certificate, VerifyError, CERTIFICATE_FORMAT};
pub use hypergraph::{ap_hypergraph, line_hypergraph, Hypergraph};
pub use numbers::{
    hj_check, hj_number, vdw_check, vdw_number, NumberOutcome, NumberReport, SearchConfig, Step, StepResult,
};
pub use solver::{solve, vertex_order, Budget, SolveOutcome, SolveReport};
pub use symmetry::{canonical_prune, SymmetryGroup, SymmetrySpec, UNCOLORED};
pub use witness::{vdw_via_hj, witness_search, WitnessInstance, WitnessOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("edge {0} is empty, repeats a vertex, or names a missing vertex")]
    BadEdge(usize),
    #[error("instance too large")]
    TooLarge,
    #[error("color count {0} outside 1..=32")]
    BadColorCount(u8),
    #[error("unknown symmetry {0:?} (expected colors, coordinates, alphabet, none or full)")]
    BadSymmetry(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("invalid coloring: {0}")]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}
