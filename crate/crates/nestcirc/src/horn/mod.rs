//! Polynomial algorithms for Horn theories.

mod cnf;
mod engine;
mod flatten;
mod xhorn;

pub use cnf::{least_model, HornClause, HornCnf};
pub use flatten::{
    alpha, check_model_horn, check_model_horn_split, flatten, infer_cnf_horn, Flat, SPLIT_CAP,
};
pub use xhorn::{xhorn0_check, xhorn_complete};
