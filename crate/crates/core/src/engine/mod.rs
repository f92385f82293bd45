//! The generic verifier: every identity is stated once over a
//! [`ModelFragment`](crate::fragment::ModelFragment) and checked row by row.

mod checks;
mod report;
mod suite;
mod syntax;

pub use checks::{check_comonad, check_comonoid_and_rules, check_extraction, check_higher_order};
pub use report::{CheckResult, Counterexample, ModelKind, ParamValue, Params, Report, RunConfig, Status};
pub use suite::{run_suite, run_suite_on};
pub use syntax::{Grading, Syntax};
