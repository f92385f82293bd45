use std::sync::Arc;

use serde::Serialize;

use super::object::Obj;
use super::sparse::SparseVec;
use super::structure::generic_row;
use super::term::{Gen, Sample};
use crate::error::Result;
use crate::linalg::{Elem, ScalarDomain};

/// Whether morphisms of the category are read in the direction of the
/// underlying linear maps (`Direct`) or against it (`Opposite`, for
/// `Vec^op`). Rows are always produced in the direction of the category,
/// so the engine's diagrams need no adjustment; the flag is recorded in
/// reports and used when translating counterexamples.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Direct,
    Opposite,
}

/// A degree-truncated presentation of a differential modality that the
/// engine can verify.
pub trait ModelFragment {
    /// Short model name, e.g. `rel`.
    fn name(&self) -> &str;

    fn scalars(&self) -> ScalarDomain;

    fn orientation(&self) -> Orientation;

    /// The base object `A`.
    fn base(&self) -> Obj;

    /// Truncation bound `D` on element weight.
    fn bound(&self) -> usize;

    /// Row at codomain element `c` of a structure map at object `at`.
    fn row(&self, g: Gen, at: &Obj, c: &Elem) -> Result<SparseVec> {
        let _ = at;
        generic_row(self.scalars(), g, c)
    }

    /// Morphisms between base objects used to test naturality.
    fn samples(&self) -> Vec<Arc<Sample>>;

    /// Elements of `!_{≤n}A` within the bound, computed by the model's own
    /// dense linear algebra (cokernel or kernel of `∂^{n+1}`).
    fn dense_kept(&self, n: usize) -> Result<Vec<Elem>>;

    /// The model's closed-form description of `!_{≤n}A` membership.
    fn expected_kept(&self, n: usize, c: &Elem) -> bool;
}
