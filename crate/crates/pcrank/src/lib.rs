//! Priority vectors from pairwise comparison matrices.
//!
//! A pairwise comparison matrix records how strongly each alternative is
//! preferred over each other one as a grid of positive ratios with
//! `c_ij * c_ji = 1`. This crate derives ranking vectors from such matrices by
//! the two standard routes, measures how inconsistent the judgments are, and
//! verifies that the divergence between the two rankings stays inside the
//! envelopes that the inconsistency level dictates.
//!
//! - [`matrix`]: reciprocal matrices, priority vectors, text parsing.
//! - [`priority`]: the eigenvalue method (power iteration) and the geometric
//!   mean method.
//! - [`inconsistency`]: Saaty's CI/CR and Koczkodaj's triad index KI.
//! - [`similarity`]: compatibility indices and Manhattan / Chebyshev /
//!   Kendall distances between rankings.
//! - [`bounds`]: inconsistency-based envelopes for the divergence between
//!   the two rankings, with per-matrix checks.
//! - [`montecarlo`]: seeded random-matrix experiments over a disturbance
//!   grid, with deterministic CSV output.
//!
//! ```
//! use pcrank::{evm, gmm, manhattan, EvmOptions, PcMatrix};
//!
//! let c = PcMatrix::parse("1 1/2 2 5\n2 1 4 4\n1/2 1/4 1 5\n1/5 1/4 1/5 1\n")?;
//! let ev = evm(&c, EvmOptions::default())?;
//! let gm = gmm(&c);
//! assert!(ev.lambda_max >= 4.0);
//! assert!(manhattan(&ev.weights, &gm)? < 0.03);
//! # Ok::<(), pcrank::Error>(())
//! ```
//!
//! Every type is immutable after construction and every operation is a pure
//! function, so values can be shared and used across threads freely.

pub mod bounds;
pub mod error;
pub mod inconsistency;
pub mod matrix;
pub mod montecarlo;
pub mod priority;
pub mod similarity;

pub use bounds::{
    check_bounds, envelope, matched_ratio_bounds, BoundCheckReport, BoundEnvelope,
};
pub use error::{Error, Result};
pub use inconsistency::{
    consistency_ratio, estimate_ri, inconsistency_report, koczkodaj_ki, koczkodaj_local, saaty_ci,
    InconsistencyReport, RiTable, Triad,
};
pub use matrix::{PcMatrix, PriorityVector, Tolerance};
pub use montecarlo::{
    disturb, generate_matrix, random_weight_vector, run_experiment, summarize, ExperimentConfig,
    ExperimentRecord, ExperimentSummary, FactorMode, GeneratorConfig, WeightMode,
};
pub use priority::{evm, gmm, EvmOptions, EvmResult};
pub use similarity::{
    beta_grid, chebyshev, comp_lower_matrices, comp_matrices, comp_max_matrices,
    comp_upper_matrices, comp_vectors, kendall_distance, manhattan, BetaGrid, CompatibilityReport,
};
