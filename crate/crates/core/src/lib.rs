//! Feature selection through the linear Minimal Complexity Machine (MCM).
//!
//! The MCM is a hyperplane classifier trained by a linear program that
//! minimizes the ratio between the largest and smallest functional margin
//! (plus a slack penalty). Because the optimum is an LP vertex, most weights
//! come out exactly zero, and the features with nonzero weight form the
//! selected subset.
//!
//! The crate is organised bottom-up:
//!
//! - [`dataset`]: loading, standardization, stratified folds.
//! - [`linprog`]: two-phase revised simplex.
//! - [`mcm`]: MCM linear program, training, discriminant, selection.
//! - [`filters`]: ReliefF and FCBF baselines.
//! - [`svm`]: Gaussian-kernel SVM trained by SMO, with grid search.
//! - [`eval`]: cross-validated comparison of the selectors and report output.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod dataset;
pub mod error;
pub mod eval;
pub mod filters;
pub mod linprog;
pub mod mcm;
pub mod svm;
pub mod synthetic;

pub use dataset::{Dataset, FoldPlan, Standardizer};
pub use error::{Error, Result};
pub use filters::{FeatureRanking, RankingMethod};
pub use linprog::{LinearProgram, LpSolution, LpStatus, Relation};
pub use mcm::{McmConfig, McmModel, McmVariant};
pub use svm::SvmModel;
