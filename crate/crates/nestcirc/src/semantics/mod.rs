//! Interpretations, the circumscriptive preference relation, substitution and
//! the brute-force semantic oracle.

mod interp;
mod oracle;

pub use interp::Interp;
pub use oracle::{
    brute_models_lcirc, brute_models_nat, lcirc_table, minimal_table, nat_block_tables,
    witness_extensions, Oracle, Table, DEFAULT_CAP,
};

use crate::error::{Error, Result};
use crate::syntax::{Atom, Formula};

/// Roles of letters in a circumscription: P minimized, Z floating, the rest fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefContext {
    pub p: Vec<Atom>,
    pub z: Vec<Atom>,
}

impl PrefContext {
    pub fn new(p: Vec<Atom>, z: Vec<Atom>) -> Result<Self> {
        if let Some(a) = p.iter().find(|a| z.contains(a)) {
            return Err(Error::semantic(format!(
                "atom {a} is both minimized and floating"
            )));
        }
        Ok(PrefContext { p, z })
    }

    /// Fixed letters among the first `n` atoms.
    pub fn fixed(&self, n: usize) -> Vec<Atom> {
        (0..n as Atom)
            .filter(|a| !self.p.contains(a) && !self.z.contains(a))
            .collect()
    }
}

/// Outcome of comparing two interpretations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefOrder {
    Incomparable,
    Equal,
    Less,
    Greater,
}

/// Compares `m` and `n` under the preference relation of `ctx`.
///
/// `Less` means `m` is strictly preferred: `m[Q] = n[Q]` and `m[P] ⊊ n[P]`.
/// `Equal` means both agree on P and Q; floating letters may still differ.
pub fn prefer(m: &Interp, n: &Interp, ctx: &PrefContext) -> Result<PrefOrder> {
    if m.len() != n.len() {
        return Err(Error::semantic("interpretations over different alphabets"));
    }
    if !m.agrees_on(n, &ctx.fixed(m.len())) {
        return Ok(PrefOrder::Incomparable);
    }
    let m_sub = ctx.p.iter().all(|&a| !m.get(a) || n.get(a));
    let n_sub = ctx.p.iter().all(|&a| !n.get(a) || m.get(a));
    Ok(match (m_sub, n_sub) {
        (true, true) => PrefOrder::Equal,
        (true, false) => PrefOrder::Less,
        (false, true) => PrefOrder::Greater,
        (false, false) => PrefOrder::Incomparable,
    })
}

/// Replaces assigned atoms by constants and folds constants away.
///
/// Inside circ atoms, the inner formula is substituted and assigned atoms are
/// dropped from the P and Z lists.
pub fn substitute(f: &Formula, partial: &[(Atom, bool)]) -> Formula {
    let lookup = |a: Atom| partial.iter().find(|(b, _)| *b == a).map(|&(_, v)| v);
    subst(f, &lookup)
}

fn subst(f: &Formula, lookup: &dyn Fn(Atom) -> Option<bool>) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => match lookup(*a) {
            Some(true) => Formula::True,
            Some(false) => Formula::False,
            None => f.clone(),
        },
        Formula::Not(g) => fold_not(subst(g, lookup)),
        Formula::And(gs) => fold_and(gs.iter().map(|g| subst(g, lookup)).collect()),
        Formula::Or(gs) => fold_or(gs.iter().map(|g| subst(g, lookup)).collect()),
        Formula::Implies(a, b) => {
            let (a, b) = (subst(a, lookup), subst(b, lookup));
            match (&a, &b) {
                (Formula::False, _) | (_, Formula::True) => Formula::True,
                (Formula::True, _) => b,
                (_, Formula::False) => fold_not(a),
                _ => Formula::implies(a, b),
            }
        }
        Formula::Iff(a, b) => {
            let (a, b) = (subst(a, lookup), subst(b, lookup));
            match (&a, &b) {
                (Formula::True, _) => b,
                (_, Formula::True) => a,
                (Formula::False, _) => fold_not(b),
                (_, Formula::False) => fold_not(a),
                _ => Formula::iff(a, b),
            }
        }
        Formula::Circ(g, p, z) => {
            let keep = |l: &Vec<Atom>| l.iter().copied().filter(|&a| lookup(a).is_none()).collect();
            Formula::circ(subst(g, lookup), keep(p), keep(z))
        }
    }
}

fn fold_not(f: Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        g => Formula::not(g),
    }
}

fn fold_and(fs: Vec<Formula>) -> Formula {
    let mut out = Vec::new();
    for f in fs {
        match f {
            Formula::True => {}
            Formula::False => return Formula::False,
            g => out.push(g),
        }
    }
    Formula::and_all(out)
}

fn fold_or(fs: Vec<Formula>) -> Formula {
    let mut out = Vec::new();
    for f in fs {
        match f {
            Formula::False => {}
            Formula::True => return Formula::True,
            g => out.push(g),
        }
    }
    Formula::or_all(out)
}
