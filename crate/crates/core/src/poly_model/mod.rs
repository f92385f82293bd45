//! The symmetric algebra `SE ≅ k[x₁,…,x_v]` over a field, as a model of the
//! differential modality in the opposite category of vector spaces.

mod fragment;
mod kernel;
mod polynomial;

pub use fragment::{build_structure, fragment_as_model, PolyFragment, PolyStructure, SAMPLE_SEED};
pub use kernel::{kernel_slice, monomial_kernel_predicate};
pub use polynomial::{
    basis_order, dstar, multisets_of_size, partial, poly_add, poly_mul, taylor_reconstruct, DerivativeFamily, Monomial,
    Polynomial,
};
