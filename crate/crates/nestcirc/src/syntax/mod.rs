//! Abstract syntax, parsing, rendering and classification.

mod alphabet;
mod formula;
mod nat;
mod parser;
mod render;
mod validate;

pub use alphabet::{Alphabet, Atom};
pub use formula::Formula;
pub use nat::{Block, Child, Nat};
pub use parser::{parse_lcirc, parse_model, parse_nat};
pub use render::{render_block, render_formula, render_model, render_nat};
pub use validate::{
    block_fixed_letters, cnf_clauses, is_horn_cnf, validate, BlockFixed, Clause, Report,
};

/// Parses an L_CIRC formula into a fresh open alphabet.
pub fn parse_lcirc_new(text: &str) -> crate::error::Result<(Formula, Alphabet)> {
    let mut alpha = Alphabet::new();
    let f = parse_lcirc(text, &mut alpha)?;
    Ok((f, alpha))
}
