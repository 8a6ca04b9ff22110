use super::alphabet::{Alphabet, Atom};
use super::formula::Formula;
use super::nat::{Block, Nat};

/// A clause as positive and negative atom lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Clause {
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

impl Clause {
    pub fn is_horn(&self) -> bool {
        self.pos.len() <= 1
    }
}

/// Literals of a disjunction, or `None` if `f` is not clause-shaped.
/// The flag is set when the disjunction contains `true`.
fn disjunction(f: &Formula, c: &mut Clause) -> Option<bool> {
    match f {
        Formula::Atom(a) => c.pos.push(*a),
        Formula::Not(g) => match g.as_ref() {
            Formula::Atom(a) => c.neg.push(*a),
            Formula::True => {}
            Formula::False => return Some(true),
            other => return conjunction_negated(other, c),
        },
        Formula::False => {}
        Formula::True => return Some(true),
        Formula::Or(gs) => {
            let mut taut = false;
            for g in gs {
                taut |= disjunction(g, c)?;
            }
            return Some(taut);
        }
        Formula::Implies(a, b) => {
            let t1 = conjunction_negated(a, c)?;
            let t2 = disjunction(b, c)?;
            return Some(t1 || t2);
        }
        _ => return None,
    }
    Some(false)
}

/// Adds the negation of a conjunction of literals to `c`.
fn conjunction_negated(f: &Formula, c: &mut Clause) -> Option<bool> {
    match f {
        Formula::Atom(a) => c.neg.push(*a),
        Formula::Not(g) => match g.as_ref() {
            Formula::Atom(a) => c.pos.push(*a),
            _ => return None,
        },
        Formula::True => {}
        Formula::False => return Some(true),
        Formula::And(gs) => {
            let mut taut = false;
            for g in gs {
                taut |= conjunction_negated(g, c)?;
            }
            return Some(taut);
        }
        _ => return None,
    }
    Some(false)
}

fn collect_cnf(f: &Formula, out: &mut Vec<Clause>) -> Option<()> {
    match f {
        Formula::True => Some(()),
        Formula::And(gs) => gs.iter().try_for_each(|g| collect_cnf(g, out)),
        _ => {
            let mut c = Clause::default();
            if !disjunction(f, &mut c)? {
                out.push(c);
            }
            Some(())
        }
    }
}

/// Syntactic CNF reading of a formula.
///
/// Accepted clause shapes are disjunctions of literals and rules
/// `l1 & ... & lk -> m1 | ... | mj`; clauses containing `true` are dropped.
/// Returns `None` when the formula is not in this form.
pub fn cnf_clauses(f: &Formula) -> Option<Vec<Clause>> {
    let mut out = Vec::new();
    collect_cnf(f, &mut out)?;
    Some(out)
}

pub fn is_horn_cnf(f: &Formula) -> bool {
    cnf_clauses(f).is_some_and(|cs| cs.iter().all(Clause::is_horn))
}

/// Fixed letters of one block, located by its child-index path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFixed {
    pub path: Vec<usize>,
    pub fixed: Vec<Atom>,
}

/// Classification of a NAT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub is_horn: bool,
    pub has_fixed_letters: bool,
    pub uses_minmax: bool,
    pub nesting_depth: usize,
    pub blocks: usize,
    /// Per block: non-Ab letters occurring in the block but not declared by it.
    pub fixed: Vec<BlockFixed>,
}

/// Letters of a block's subtree that are fixed in that block.
pub fn block_fixed_letters(b: &Block, alpha: &Alphabet) -> Vec<Atom> {
    let declared = b.declared();
    b.formula_atoms()
        .into_iter()
        .filter(|a| !alpha.is_ab(*a) && !declared.contains(a))
        .collect()
}

fn walk(b: &Block, alpha: &Alphabet, path: &mut Vec<usize>, r: &mut Report) {
    if !b.formulas().all(is_horn_cnf) {
        r.is_horn = false;
    }
    let fixed = block_fixed_letters(b, alpha);
    if !fixed.is_empty() {
        r.has_fixed_letters = true;
    }
    r.fixed.push(BlockFixed {
        path: path.clone(),
        fixed,
    });
    for (i, c) in b.children.iter().enumerate() {
        if let super::nat::Child::Block(inner) = c {
            path.push(i);
            walk(inner, alpha, path, r);
            path.pop();
        }
    }
}

/// Reports Horn-ness, fixed letters and min/max usage.
pub fn validate(t: &Nat) -> Report {
    let mut r = Report {
        is_horn: true,
        has_fixed_letters: false,
        uses_minmax: t.uses_minmax(),
        nesting_depth: t.nesting_depth(),
        blocks: t.block_count(),
        fixed: Vec::new(),
    };
    for (i, b) in t.blocks.iter().enumerate() {
        let mut path = vec![i];
        walk(b, &t.alphabet, &mut path, &mut r);
    }
    r
}
