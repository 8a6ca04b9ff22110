//! Quantified Boolean formulas: translations from circumscription, evaluation
//! and prenex CNF export.

mod ast;
mod prenex;
mod translate;

pub use ast::{eval_qbf, Qbf};
pub use prenex::{prenex_cnf, read_qdimacs, write_qdimacs, Closure, PrenexCnf, Quant};

pub use translate::{sigma, sigma_star, tau, SigmaStar};
