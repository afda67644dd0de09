//! Geometric measure of entanglement for pure multipartite quantum states.
//!
//! A pure state on m parties is a dense complex tensor; its geometric
//! entanglement E = 1 − |λ|² comes from the best rank-one approximation,
//! where λ is the maximal overlap with a product state. This crate provides
//! the tensor core, the alternating rank-one optimizer with random restarts,
//! closed-form oracles for the named benchmark states, partition hierarchies
//! by index merging, and Monte Carlo search over equal-amplitude supports.
//!
//! The `parallel` feature (on by default) runs restarts, partition
//! evaluations, search samples, and sweep points on rayon; results are
//! bit-identical to the sequential fallback because every work item seeds
//! its own ChaCha substream.

pub mod error;
pub mod hierarchy;
pub mod io;
pub mod optimizer;
mod parallel;
pub mod partition;
pub mod search;
pub mod states;
pub mod tensor;

pub use error::{GmeError, Result};
pub use hierarchy::{hierarchy_report, partition_gme, HierarchyReport, HierarchyRow};
pub use io::{load_state, save_state, StateFile};
pub use optimizer::{
    best_rank_one, best_rank_one_sequential, matrix_svd_oracle, real_bound_check, GmeResult,
    OptimizerConfig,
};
pub use partition::{enumerate_partitions, Partition};
pub use search::{
    exhaustive_search, linear_grid, mc_search, support_state, sweep, SearchConfig, SearchHit,
    SweepPoint, SweepSpec,
};
pub use states::{FamilyName, StateFamily};
pub use tensor::{ComplexTensor, RankOneState};
