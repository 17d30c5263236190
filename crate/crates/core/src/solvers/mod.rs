//! Deterministic constraint searches.

mod decomposition;
mod fusion;
mod powermaps;
mod problems;
mod sylow;

use thiserror::Error;

pub use decomposition::{solve_decomposition, Candidate, Constraint, DecompositionProblem};
pub use fusion::{group_by_restriction, possible_fusions};
pub use powermaps::{
    blank_entries, complete_power_maps, contains_truth, refine_power_maps, refine_power_maps_with,
    with_blank_maps, Ambiguity, PowerMapReport, QuadraticField,
};
pub use problems::{
    parse_decomp, parse_fusion_problem, parse_power_problem, parse_sylow, DecompSpec,
    FusionProblemSpec, PowerProblemSpec,
};
pub use sylow::{sylow_feasible, SylowProblem, SylowResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("inconsistent seed: {0}")]
    InconsistentSeed(String),
    #[error("inconsistent head data: {0}")]
    InconsistentHead(String),
}
