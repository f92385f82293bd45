//! Exact dense linear algebra over the Boolean semiring, ℚ and prime fields.

mod basis;
mod matrix;
mod scalar;
mod solve;

pub use basis::{Elem, OrderedBasis};
pub use matrix::{perm_matrix, GradedMatrix};
pub use scalar::{Scalar, ScalarDomain};
pub use solve::{bool_cokernel, factor_through, kernel_basis};
