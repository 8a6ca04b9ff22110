use std::collections::HashSet;

use super::cnf::{least_model, HornClause, HornCnf};
use super::engine::Engine;
use crate::error::{Error, Result};
use crate::semantics::Interp;
use crate::syntax::{
    block_fixed_letters, cnf_clauses, validate, Alphabet, Atom, Block, Child, Formula, Nat,
};

/// Flat normal form of a Horn NAT without fixed letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    /// Abnormality-free Horn CNF equivalent to the theory.
    pub cnf: HornCnf,
    /// Least model over non-Ab letters; `None` if the theory is unsatisfiable.
    pub model: Option<Interp>,
}

fn require_horn(t: &Nat, allow_fixed: bool) -> Result<()> {
    let r = validate(t);
    if !r.is_horn {
        return Err(Error::precondition("theory is not Horn"));
    }
    if r.uses_minmax {
        return Err(Error::precondition("theory uses min/max declarations"));
    }
    if !allow_fixed && r.has_fixed_letters {
        return Err(Error::precondition("theory has fixed letters"));
    }
    Ok(())
}

fn block_engine<'a>(b: &Block, alpha: &'a Alphabet, pins: Option<&Interp>) -> Engine<'a> {
    let mut engine = Engine::new(alpha);
    for inner in b.sub_blocks() {
        engine = engine.merge(block_engine(inner, alpha, pins));
    }
    let mut own = Vec::new();
    for f in b.formulas() {
        for c in cnf_clauses(f).expect("validated Horn CNF") {
            let mut body = c.neg;
            body.sort_unstable();
            body.dedup();
            own.push(engine.add(c.pos.first().copied(), body));
        }
    }
    if let Some(m) = pins {
        let described: HashSet<Atom> = b.declared().into_iter().collect();
        engine.pin_fixed(&described, &|a| m.get(a));
    }
    if !engine.unsat {
        engine.reduce(&own);
    }
    engine
}

fn nat_engine<'a>(t: &'a Nat, pins: Option<&Interp>) -> Engine<'a> {
    let mut engine = Engine::new(&t.alphabet);
    for b in &t.blocks {
        engine = engine.merge(block_engine(b, &t.alphabet, pins));
    }
    engine
}

/// Computes the flat normal form φ(𝒯) and the least model M(𝒯).
///
/// Blocks are processed bottom-up on one incremental propagation state per
/// subtree; sibling states are merged smaller into larger.
pub fn flatten(t: &Nat) -> Result<Flat> {
    require_horn(t, false)?;
    let engine = nat_engine(t, None);
    if engine.unsat {
        return Ok(Flat {
            cnf: HornCnf {
                clauses: vec![HornClause::constraint(Vec::new())],
            },
            model: None,
        });
    }
    let model = Interp::from_true(t.alphabet.len(), &engine.true_atoms());
    Ok(Flat {
        cnf: engine.live_clauses(),
        model: Some(model),
    })
}

fn alpha_block(m: &Interp, b: &Block, alpha: &Alphabet) -> Block {
    let q = block_fixed_letters(b, alpha);
    let mut described = b.described.clone();
    described.extend(q.iter().copied());
    let mut children = Vec::new();
    if !q.is_empty() {
        children.push(Child::Formula(Formula::and_all(
            q.iter().map(|&a| Formula::lit(a, m.get(a))).collect(),
        )));
    }
    for c in &b.children {
        children.push(match c {
            Child::Formula(f) => Child::Formula(f.clone()),
            Child::Block(inner) => Child::Block(alpha_block(m, inner, alpha)),
        });
    }
    Block {
        described,
        min: b.min.clone(),
        max: b.max.clone(),
        children,
    }
}

/// α(M, 𝒯): every block describes its fixed letters Q in addition, with a
/// conjunct fixing them to their values in `m`.
pub fn alpha(m: &Interp, t: &Nat) -> Nat {
    let blocks = t
        .blocks
        .iter()
        .map(|b| alpha_block(m, b, &t.alphabet))
        .collect();
    Nat::new(t.alphabet.clone(), blocks)
}

/// Letters fixed in some block but described by one of its ancestors.
fn floating_fixed(b: &Block, alpha: &Alphabet, above: &mut Vec<Atom>, out: &mut Vec<Atom>) {
    out.extend(
        block_fixed_letters(b, alpha)
            .into_iter()
            .filter(|q| above.contains(q)),
    );
    let len = above.len();
    above.extend(b.declared());
    for inner in b.sub_blocks() {
        floating_fixed(inner, alpha, above, out);
    }
    above.truncate(len);
}

/// Most letters a single block may case-split on.
pub const SPLIT_CAP: usize = 16;

/// Model checking for Horn NATs, possibly with fixed letters.
///
/// A letter fixed in every block on the path to the root keeps its value in
/// `m` for every competitor, so it is pinned inside the propagation engine.
/// Letters fixed in a block but described further up are not constant there;
/// if any exist the check falls back to [`check_model_horn_split`].
pub fn check_model_horn(t: &Nat, m: &Interp) -> Result<bool> {
    require_horn(t, true)?;
    m.check_len(&t.alphabet)?;
    let m = m.without_ab(&t.alphabet);
    let mut floating = Vec::new();
    for b in &t.blocks {
        floating_fixed(b, &t.alphabet, &mut Vec::new(), &mut floating);
    }
    if !floating.is_empty() {
        return check_model_horn_split(t, &m);
    }
    let engine = nat_engine(t, Some(&m));
    if engine.unsat {
        return Ok(false);
    }
    Ok(engine.live_clauses().satisfied_by(&m))
}

/// Satisfaction of a block as a function of its split letters: for every
/// assignment `s` of `split` (bit `i` is `split[i]`), `None` if no
/// interpretation with those values satisfies the block, else an Ab-free Horn
/// CNF that decides it.
struct SplitRep {
    split: Vec<Atom>,
    cases: Vec<Option<HornCnf>>,
}

fn substitute(c: &HornClause, val: &dyn Fn(Atom) -> Option<bool>) -> Option<HornClause> {
    if c.head.is_some_and(|h| val(h) == Some(true)) || c.body.iter().any(|&b| val(b) == Some(false))
    {
        return None;
    }
    let body = c
        .body
        .iter()
        .copied()
        .filter(|&b| val(b).is_none())
        .collect();
    let head = c.head.filter(|&h| val(h).is_none());
    Some(HornClause { head, body })
}

fn split_index(split: &[Atom], val: &dyn Fn(Atom) -> bool) -> usize {
    split
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &q)| acc | (val(q) as usize) << i)
}

fn split_rep(b: &Block, alpha: &Alphabet, m: &Interp, above: &mut Vec<Atom>) -> Result<SplitRep> {
    let fixed = block_fixed_letters(b, alpha);
    let (floating, constant): (Vec<Atom>, Vec<Atom>) =
        fixed.iter().partition(|q| above.contains(q));
    let len = above.len();
    above.extend(b.declared());
    let mut own = Vec::new();
    let mut inner = Vec::new();
    for c in &b.children {
        match c {
            Child::Formula(f) => own.extend(
                HornCnf::from_formula(f)
                    .expect("validated Horn CNF")
                    .clauses,
            ),
            Child::Block(ib) => inner.push(split_rep(ib, alpha, m, above)?),
        }
    }
    above.truncate(len);
    let mut split = floating.clone();
    for r in &inner {
        split.extend(r.split.iter().copied().filter(|q| !constant.contains(q)));
    }
    split.sort_unstable();
    split.dedup();
    if split.len() > SPLIT_CAP {
        return Err(Error::CapExceeded {
            atoms: split.len(),
            cap: SPLIT_CAP,
        });
    }
    let n = alpha.len();
    let fixed_mask = split_index(&split, &|q| floating.contains(&q));
    // ψ for every split assignment, with its least Ab set.
    let mut psi: Vec<Option<(HornCnf, Vec<Atom>)>> = Vec::with_capacity(1 << split.len());
    for s in 0..1usize << split.len() {
        let val = |a: Atom| -> Option<bool> {
            match split.iter().position(|&q| q == a) {
                Some(i) => Some(s >> i & 1 == 1),
                None => constant.contains(&a).then(|| m.get(a)),
            }
        };
        let mut cnf = HornCnf::default();
        let mut sat = true;
        for r in &inner {
            match &r.cases[split_index(&r.split, &|q| val(q).expect("split letter is assigned"))] {
                Some(c) => cnf
                    .clauses
                    .extend(c.clauses.iter().filter_map(|c| substitute(c, &val))),
                None => sat = false,
            }
        }
        cnf.clauses
            .extend(own.iter().filter_map(|c| substitute(c, &val)));
        let least = if sat { least_model(&cnf, n) } else { None };
        psi.push(least.map(|lm| {
            (
                cnf,
                alpha
                    .ab_atoms()
                    .into_iter()
                    .filter(|&a| lm.get(a))
                    .collect(),
            )
        }));
    }
    // Competitors keep the floating fixed letters and vary the rest of the split.
    let smaller = |x: &[Atom], y: &[Atom]| x.len() < y.len() && x.iter().all(|a| y.contains(a));
    let mut cases = Vec::with_capacity(psi.len());
    for s in 0..psi.len() {
        let case = psi[s].as_ref().and_then(|(cnf, ab)| {
            let beaten = (0..psi.len()).any(|o| {
                o & fixed_mask == s & fixed_mask
                    && psi[o].as_ref().is_some_and(|(_, ab2)| smaller(ab2, ab))
            });
            if beaten {
                return None;
            }
            let val = |a: Atom| alpha.is_ab(a).then(|| ab.contains(&a));
            Some(HornCnf {
                clauses: cnf
                    .clauses
                    .iter()
                    .filter_map(|c| substitute(c, &val))
                    .collect(),
            })
        });
        cases.push(case);
    }
    Ok(SplitRep { split, cases })
}

/// Model checking for Horn NATs that case-splits on every letter that is
/// fixed in a block but varies in an enclosing one. Each block costs one
/// least-model computation per assignment of its split letters, so the
/// running time is exponential in their number only.
pub fn check_model_horn_split(t: &Nat, m: &Interp) -> Result<bool> {
    require_horn(t, true)?;
    m.check_len(&t.alphabet)?;
    let m = m.without_ab(&t.alphabet);
    for b in &t.blocks {
        let r = split_rep(b, &t.alphabet, &m, &mut Vec::new())?;
        match &r.cases[split_index(&r.split, &|q| m.get(q))] {
            Some(c) if c.satisfied_by(&m) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Entailment of a CNF from a Horn NAT without fixed letters.
pub fn infer_cnf_horn(t: &Nat, psi: &Formula) -> Result<bool> {
    let clauses = cnf_clauses(psi).ok_or_else(|| Error::precondition("conclusion is not a CNF"))?;
    if psi
        .atoms()
        .iter()
        .any(|&a| (a as usize) < t.alphabet.len() && t.alphabet.is_ab(a))
    {
        return Err(Error::semantic("conclusion mentions an abnormality letter"));
    }
    let flat = flatten(t)?;
    if flat.model.is_none() {
        return Ok(true);
    }
    let n = t
        .alphabet
        .len()
        .max(psi.atoms().last().map_or(0, |&a| a as usize + 1));
    for c in clauses {
        let mut cnf = flat.cnf.clone();
        cnf.clauses
            .extend(c.neg.iter().map(|&a| HornClause::fact(a)));
        let entailed = match least_model(&cnf, n) {
            None => true,
            Some(lm) => c.pos.iter().any(|&p| lm.get(p)),
        };
        if !entailed {
            return Ok(false);
        }
    }
    Ok(true)
}
