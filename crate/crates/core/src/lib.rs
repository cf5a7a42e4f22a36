//! Exact construction of twisted multiloop algebras, their enveloping algebras
//! and the integral forms spanned by ordered monomials in divided powers,
//! Λ-elements and Cartan binomials.

pub mod chevalley;
pub mod cli;
pub mod enveloping;
pub mod error;
pub mod integral;
pub mod integral_verify;
pub mod multiloop;
pub mod parse;
pub mod exact;
pub mod linalg;
pub mod report;
pub mod roots;
pub mod structure_verify;
pub mod twisted;
pub mod twisted_verify;

pub use error::{Error, Result};
