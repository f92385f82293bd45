//! Object and morphism expressions over a model fragment, and their exact
//! row-by-row evaluation.

mod eval;
mod model;
mod object;
mod sparse;
mod structure;
mod term;

pub use eval::{Comparison, Evaluator, Mismatch};
pub use model::{ModelFragment, Orientation};
pub use object::Obj;
pub use sparse::{accumulate, combine, unit_vec, SparseVec};
pub use structure::{arrangements, generic_row};
pub use term::{ExtGen, Gen, Sample, Term};
