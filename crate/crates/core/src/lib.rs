//! Verification toolkit for the Bell and Wigner inequalities.
//!
//! The crate has three layers:
//!
//! * [`data_inequality`] proves, in exact integer arithmetic, that any three
//!   (or four) cross-correlated `±1` data sets satisfy the data-level Bell
//!   inequality.
//! * [`analytic`] evaluates the entangled-pair joint probabilities, the
//!   conditional third-pair probabilities and correlation, and the Bell and
//!   Wigner margins in both the conditional (`paper`) and the conventional
//!   (`naive`) substitution.
//! * [`sampler`] and [`sweep`] realise those quantities by Monte Carlo and
//!   over angle grids. Both run on an [`Executor`], which fans work out over
//!   rayon when the `parallel` feature is on and produces identical results
//!   for any worker count.
//!
//! [`cli`] wires everything into the `bellwig` binary.

pub mod analytic;
pub mod cli;
pub mod data_inequality;
pub mod dataset_csv;
mod error;
pub mod exec;
pub mod sampler;
pub mod sweep;
pub mod types;

pub use error::{Error, Result};
pub use exec::Executor;
pub use types::{
    AngleConfig, AngleConvention, ConvergenceRecord, DataSetTriple, InequalityKind,
    InequalityReport, JointProbabilities, Mode, Outcome, TheoryMode, TrialQuad, TrialTriple,
};

/// Absolute tolerance used for floating point probability and correlation invariants.
pub const FLOAT_TOLERANCE: f64 = 1e-12;
