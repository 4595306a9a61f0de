//! Triangular-matrix summability means of Fourier series.
//!
//! The crate is organized around four layers:
//!
//! - [`matrix`] / [`classes`]: lower-triangular row-stochastic weight tables
//!   (Fejér, Nörlund, and the Nörlund-type double-sum mean), their tail sums,
//!   and classification of rows into the bounded-variation sequence classes
//!   RBVS, HBVS and their mean-averaged relaxations MRBVS, MHBVS.
//! - [`kernels`]: safe Dirichlet-kernel evaluation and grid checks of the
//!   classical kernel bounds and the weighted kernel-sum estimate.
//! - [`fourier`] / [`moduli`]: periodic test functions, Fourier coefficients,
//!   the matrix transform of partial sums in multiplier and direct form,
//!   `L^p` norms, and the generalized modulus of continuity with its
//!   associated integral conditions.
//! - [`harness`]: rate-of-approximation experiments comparing measured errors
//!   against the theoretical bound expressions, with log-log slope fitting.

pub mod classes;
pub mod fourier;
pub mod harness;
pub mod kernels;
pub mod matrix;
pub mod moduli;
pub mod numeric;

mod error;

pub use classes::{classify, find_separating_witness, ClassReport, SequenceClass};
pub use error::{Error, Result};
pub use fourier::{
    a_transform, a_transform_direct, coefficients, corpus, corpus_item, lp_norm, partial_sum,
    FourierCoefficients, PeriodicFunction, TransformRow,
};
pub use harness::{
    bound_value, corollary_suite, run_pointwise_experiment, run_rate_experiment, BoundVariant,
    CorollaryEntry, CorollaryStatus, ExperimentKind, Orientation, RateReport, RateRow,
};
pub use kernels::{check_lemma1, check_lemma2, dirichlet, kernel_sum, KernelBoundReport};
pub use matrix::{GrowthMode, NorlundWeights, SummabilityMatrix, TailSums};
pub use moduli::{
    evaluate_condition, membership_constant, omega_beta, phi, ConditionId, ConditionReport,
    ExperimentParams, ModulusSpec, XDomain,
};
