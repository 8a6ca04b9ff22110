//! Structural rewritings of theories.

mod fixed;
mod lower;
mod priority;

pub use fixed::{eliminate_fixed_lcirc, eliminate_fixed_nat};
pub(crate) use lower::path_string;
pub use lower::{lower_extended, lower_nat};
pub use priority::{compile_prioritized, prioritized_oracle, PriorityLevels};

use crate::error::{Error, Result};
use crate::syntax::{Atom, Block, Child, Nat};

/// Wraps all blocks of `t` into the single block `{Z : B1, ..., Bn}`.
pub fn group_blocks(t: &Nat, z: &[Atom]) -> Result<Block> {
    if let Some(&a) = z.iter().find(|&&a| t.alphabet.is_ab(a)) {
        return Err(Error::semantic(format!(
            "abnormality letter {} cannot be described",
            t.alphabet.name(a)
        )));
    }
    Ok(Block::new(
        z.to_vec(),
        t.blocks.iter().cloned().map(Child::Block).collect(),
    ))
}
