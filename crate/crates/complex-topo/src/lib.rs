//! Regular complexes and the two front-ends over the feedback Morse engine:
//! optimal Morse matchings and erasibility of 2-complexes.
//!
//! A gradient vector field of a complex is exactly a feedback Morse matching
//! of its Hasse diagram: each face/coface pair reverses one cover arc, and
//! acyclicity of the reversed diagram is what makes the field a gradient.
//! Unpaired cells are the critical ones, so minimizing their total weight is
//! the engine's objective verbatim.

mod complex;
mod erase;
#[cfg(test)]
mod fixtures;
mod format;
mod hasse;
mod morse;

pub use complex::{Cell, ComplexError, RegularComplex};
pub use erase::{solve_erasibility, solve_erasibility_on, ErasibilityAnswer, ErasibilityInstance};
pub use format::{read_sc, write_sc, ScError};
pub use hasse::hasse_diagram;
pub use morse::{solve_omm, solve_omm_on, verify_gradient_field, GradientField, OmmSolution};
