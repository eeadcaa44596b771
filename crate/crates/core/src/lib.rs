//! Exact combinatorics for permutation codes in `S_n` under the Kendall tau
//! metric and its cyclic variant: distance computation, ball enumeration,
//! code verification and construction, perfect-code nonexistence
//! certificates through covering linear systems and exact-cover search, and
//! code-anticode bounds. Everything is exact: big integers and rationals
//! throughout, no floating point in any verdict.
//!
//! The data-parallel kernels (coverage counting and pairwise distance scans)
//! run on rayon when the default `parallel` feature is enabled and fall back
//! to sequential loops without it. The `parallel_vs_seq` criterion bench
//! compares the two.

pub mod anticode;
pub mod budget;
pub mod classes;
pub mod clique;
pub mod code;
pub mod cover;
pub mod linalg;
pub mod metric;
pub mod nonexist;
pub mod perm;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("position {pos} out of range for n = {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("rank {index} out of range for n = {n} (max {max})")]
    RankOutOfRange { index: u64, n: usize, max: u64 },
    #[error("n = {n} exceeds the capacity limit {limit}")]
    CapacityExceeded { n: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariance check failed: {0}")]
    InvarianceViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use anticode::{
    code_anticode_bound, construct_diameter3_anticode, diameter, distance_regularity_probe,
    half_space_anticode, optimal_anticode_search, reverse_pair_code, verify_diameter_perfect,
    Anticode, AnticodeSearchOutcome, BoundReport, MidpointProbe,
};
pub use budget::SearchBudget;
pub use classes::{
    class_distance, class_graph, class_of, lift_class_code, project_class_code, ClassGraph,
    RotationClass,
};
pub use code::{
    ball_size, cyclic_prime_code, exact_cover_perfect_search, max_code_search,
    s5_perfect_cyclic_code, verify_perfect, CodeBook, MaxCodeMethod, MaxCodeResult,
    PerfectionReport,
};
pub use metric::{
    ball, build_distance_table, cyclic_kendall_distance, distance, distance_table,
    kendall_ball_size, kendall_distance, kendall_distance_direct, mahonian, mahonian_row,
    DistanceTable, Metric,
};
pub use nonexist::{
    basic_nonexistence_check, build_basic_system, build_pattern_system, gerschgorin_nonsingular,
    pattern_nonexistence_check, recheck, verify_regularity, Certificate, CoveringSystem, Method,
    RegularityReport, Verdict,
};
pub use perm::{factorial, iter_sn, PermRank, Permutation};
