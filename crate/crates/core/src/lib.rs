//! Regularity of core-free subgroup tuples in permutation groups.
//!
//! A tuple `(H₁,…,H_k)` of core-free subgroups of `G` is *regular* when some
//! conjugates `H_i^{g_i}` intersect trivially. This crate decides that
//! question, computes base sizes `b(G,H)`, base numbers `B(G)` and regularity
//! numbers `R(G)`, and evaluates the exact fixed-point-ratio certificates.

pub mod actions;
pub mod grp;
pub mod perm;
pub mod qhat;
pub mod regularity;
pub mod search;
pub mod symalt;
pub mod util;

use num_rational::BigRational;

pub use actions::{CosetAction, UniformPartition};
pub use grp::{ClassDatum, PermGroup};
pub use perm::Perm;
pub use qhat::{QhatReport, Scalar};
pub use regularity::{RegularityVerdict, SubgroupTuple};

/// Certificates are only ever issued from exact arithmetic.
pub type ExactQhat = QhatReport<BigRational>;
/// Floating-point estimate of the same sum, for quick screening.
pub type FloatQhat = QhatReport<f64>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image array is not a permutation")]
    NotAPermutation,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("index {index} exceeds the configured ceiling {ceiling}")]
    IndexCeiling { index: String, ceiling: String },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("order mismatch: expected {expected}, computed {computed}")]
    OrderMismatch { expected: String, computed: String },
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("incomplete class data: {0}")]
    IncompleteClasses(String),
}
