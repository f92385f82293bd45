//! Exact finite verification of differential modalities.
//!
//! The crate realizes two differential modalities as degree-truncated
//! matrix fragments: the multiset modality on finite relations and the
//! symmetric-algebra modality on polynomial rings. A generic engine checks
//! the comonad, comonoid and differential axioms, their higher-order
//! consequences, and the cokernel-based extraction of filtered modalities.

pub mod combinatorics;
pub mod engine;
pub mod error;
pub mod fragment;
pub mod linalg;
pub mod poly_model;
pub mod rel_model;

pub use combinatorics::{Multiset, SetPartition};
pub use engine::{run_suite, CheckResult, Counterexample, Report, RunConfig, Status};
pub use error::{Error, Result};
pub use fragment::{ModelFragment, Obj, Term};
pub use linalg::{Elem, GradedMatrix, Scalar, ScalarDomain};
pub use poly_model::{PolyFragment, Polynomial};
pub use rel_model::RelFragment;
