//! Exact computations with modules over the quantum plane, i.e. matrix pairs
//! `(A, B)` with `AB = qBA`.

pub mod classifier;
pub mod cli;
pub mod components;
pub mod error;
pub mod exact_matrix;
pub mod git_quotient;
pub mod jordan_spec;
pub mod json;
pub mod poly;
pub mod qchains;
pub mod qcommutant;
pub mod qscalar;

pub use error::{Error, Result};
pub use exact_matrix::QMatrix;
pub use poly::ScalarPoly;
pub use qscalar::{q_equivalent, Ell, FieldContext, QScalar};
