//! Nested propositional circumscription.
//!
//! Parses L_CIRC formulas and nested abnormality theories (NATs), translates
//! them to quantified Boolean formulas, answers model-checking, inference and
//! satisfiability queries, and offers polynomial paths for Horn theories.

pub mod encodings;
pub mod engine;
pub mod error;
pub mod horn;
pub mod qbf;
pub mod semantics;
pub mod syntax;
pub mod transforms;

pub use error::{Error, Result};
