//! Operads with multiplication, cyclic unital comp modules and the
//! noncommutative calculus they carry, over exact fields.

pub mod algebra;
pub mod calculus;
pub mod comp_module;
pub mod element;
pub mod error;
pub mod exec;
pub mod hochschild;
pub mod homology;
pub mod mutation;
pub mod operad;
pub mod poisson;
pub mod random;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
