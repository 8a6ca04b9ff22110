use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::semantics::Interp;
use crate::syntax::{Atom, Formula};

/// Quantified Boolean formula over alphabet atoms.
///
/// Binders may shadow outer binders and free atoms; the innermost binding wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Qbf {
    Const(bool),
    Atom(Atom),
    Not(Box<Qbf>),
    And(Vec<Qbf>),
    Or(Vec<Qbf>),
    Implies(Box<Qbf>, Box<Qbf>),
    Iff(Box<Qbf>, Box<Qbf>),
    Forall(Vec<Atom>, Box<Qbf>),
    Exists(Vec<Atom>, Box<Qbf>),
}

impl Qbf {
    #[allow(clippy::should_implement_trait)]
    pub fn not(q: Qbf) -> Qbf {
        Qbf::Not(Box::new(q))
    }

    pub fn implies(a: Qbf, b: Qbf) -> Qbf {
        Qbf::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Qbf, b: Qbf) -> Qbf {
        Qbf::Iff(Box::new(a), Box::new(b))
    }

    pub fn and_all(mut qs: Vec<Qbf>) -> Qbf {
        match qs.len() {
            0 => Qbf::Const(true),
            1 => qs.pop().unwrap(),
            _ => Qbf::And(qs),
        }
    }

    pub fn or_all(mut qs: Vec<Qbf>) -> Qbf {
        match qs.len() {
            0 => Qbf::Const(false),
            1 => qs.pop().unwrap(),
            _ => Qbf::Or(qs),
        }
    }

    /// `∀vars. body`, or `body` itself when `vars` is empty.
    pub fn forall(vars: Vec<Atom>, body: Qbf) -> Qbf {
        if vars.is_empty() {
            body
        } else {
            Qbf::Forall(vars, Box::new(body))
        }
    }

    /// `∃vars. body`, or `body` itself when `vars` is empty.
    pub fn exists(vars: Vec<Atom>, body: Qbf) -> Qbf {
        if vars.is_empty() {
            body
        } else {
            Qbf::Exists(vars, Box::new(body))
        }
    }

    /// Propositional embedding. Circ atoms must be translated with `tau` instead.
    pub fn from_formula(f: &Formula) -> Qbf {
        match f {
            Formula::True => Qbf::Const(true),
            Formula::False => Qbf::Const(false),
            Formula::Atom(a) => Qbf::Atom(*a),
            Formula::Not(g) => Qbf::not(Qbf::from_formula(g)),
            Formula::And(gs) => Qbf::And(gs.iter().map(Qbf::from_formula).collect()),
            Formula::Or(gs) => Qbf::Or(gs.iter().map(Qbf::from_formula).collect()),
            Formula::Implies(a, b) => Qbf::implies(Qbf::from_formula(a), Qbf::from_formula(b)),
            Formula::Iff(a, b) => Qbf::iff(Qbf::from_formula(a), Qbf::from_formula(b)),
            Formula::Circ(..) => panic!("from_formula called on a circumscriptive atom"),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Qbf::Const(_) | Qbf::Atom(_) => 1,
            Qbf::Not(q) => 1 + q.size(),
            Qbf::And(qs) | Qbf::Or(qs) => 1 + qs.iter().map(Qbf::size).sum::<usize>(),
            Qbf::Implies(a, b) | Qbf::Iff(a, b) => 1 + a.size() + b.size(),
            Qbf::Forall(v, q) | Qbf::Exists(v, q) => 1 + v.len() + q.size(),
        }
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Qbf::Const(_) | Qbf::Atom(_) => false,
            Qbf::Not(q) => q.has_quantifier(),
            Qbf::And(qs) | Qbf::Or(qs) => qs.iter().any(Qbf::has_quantifier),
            Qbf::Implies(a, b) | Qbf::Iff(a, b) => a.has_quantifier() || b.has_quantifier(),
            Qbf::Forall(..) | Qbf::Exists(..) => true,
        }
    }

    /// Largest atom index occurring anywhere, bound or free.
    pub fn max_atom(&self) -> Option<Atom> {
        match self {
            Qbf::Const(_) => None,
            Qbf::Atom(a) => Some(*a),
            Qbf::Not(q) => q.max_atom(),
            Qbf::And(qs) | Qbf::Or(qs) => qs.iter().filter_map(Qbf::max_atom).max(),
            Qbf::Implies(a, b) | Qbf::Iff(a, b) => a.max_atom().max(b.max_atom()),
            Qbf::Forall(v, q) | Qbf::Exists(v, q) => v.iter().copied().max().max(q.max_atom()),
        }
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_free(&self, bound: &mut Vec<Atom>, out: &mut Vec<Atom>) {
        match self {
            Qbf::Const(_) => {}
            Qbf::Atom(a) => {
                if !bound.contains(a) {
                    out.push(*a);
                }
            }
            Qbf::Not(q) => q.collect_free(bound, out),
            Qbf::And(qs) | Qbf::Or(qs) => qs.iter().for_each(|q| q.collect_free(bound, out)),
            Qbf::Implies(a, b) | Qbf::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Qbf::Forall(v, q) | Qbf::Exists(v, q) => {
                let n = bound.len();
                bound.extend(v);
                q.collect_free(bound, out);
                bound.truncate(n);
            }
        }
    }

    /// Renames free occurrences according to `map`. Binders of a mapped atom
    /// stop the renaming below them.
    pub fn rename(&self, map: &HashMap<Atom, Atom>) -> Qbf {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Qbf::Const(_) => self.clone(),
            Qbf::Atom(a) => Qbf::Atom(*map.get(a).unwrap_or(a)),
            Qbf::Not(q) => Qbf::not(q.rename(map)),
            Qbf::And(qs) => Qbf::And(qs.iter().map(|q| q.rename(map)).collect()),
            Qbf::Or(qs) => Qbf::Or(qs.iter().map(|q| q.rename(map)).collect()),
            Qbf::Implies(a, b) => Qbf::implies(a.rename(map), b.rename(map)),
            Qbf::Iff(a, b) => Qbf::iff(a.rename(map), b.rename(map)),
            Qbf::Forall(v, q) | Qbf::Exists(v, q) => {
                let body = if v.iter().any(|a| map.contains_key(a)) {
                    let mut inner = map.clone();
                    for a in v {
                        inner.remove(a);
                    }
                    q.rename(&inner)
                } else {
                    q.rename(map)
                };
                match self {
                    Qbf::Forall(..) => Qbf::Forall(v.clone(), Box::new(body)),
                    _ => Qbf::Exists(v.clone(), Box::new(body)),
                }
            }
        }
    }
}

/// Evaluates `q` with free variables taken from `free_values`.
pub fn eval_qbf(q: &Qbf, free_values: &Interp) -> Result<bool> {
    if let Some(a) = q
        .free_vars()
        .into_iter()
        .find(|&a| a as usize >= free_values.len())
    {
        return Err(Error::semantic(format!("no value for free variable {a}")));
    }
    let n = (q.max_atom().map_or(0, |a| a as usize + 1)).max(free_values.len());
    let mut vals: Vec<bool> = (0..n as Atom).map(|a| free_values.get(a)).collect();
    Ok(eval(q, &mut vals))
}

pub(crate) fn eval(q: &Qbf, vals: &mut Vec<bool>) -> bool {
    match q {
        Qbf::Const(b) => *b,
        Qbf::Atom(a) => vals[*a as usize],
        Qbf::Not(q) => !eval(q, vals),
        Qbf::And(qs) => {
            // Cheap quantifier-free conjuncts first.
            qs.iter()
                .filter(|q| !q.has_quantifier())
                .all(|q| eval(q, vals))
                && qs
                    .iter()
                    .filter(|q| q.has_quantifier())
                    .all(|q| eval(q, vals))
        }
        Qbf::Or(qs) => {
            qs.iter()
                .filter(|q| !q.has_quantifier())
                .any(|q| eval(q, vals))
                || qs
                    .iter()
                    .filter(|q| q.has_quantifier())
                    .any(|q| eval(q, vals))
        }
        Qbf::Implies(a, b) => !eval(a, vals) || eval(b, vals),
        Qbf::Iff(a, b) => eval(a, vals) == eval(b, vals),
        Qbf::Forall(v, body) => expand(v, body, vals, true),
        Qbf::Exists(v, body) => expand(v, body, vals, false),
    }
}

fn expand(vars: &[Atom], body: &Qbf, vals: &mut Vec<bool>, universal: bool) -> bool {
    let saved: Vec<bool> = vars.iter().map(|&a| vals[a as usize]).collect();
    let result = expand_from(vars, body, vals, universal);
    for (&a, &v) in vars.iter().zip(&saved) {
        vals[a as usize] = v;
    }
    result
}

fn expand_from(vars: &[Atom], body: &Qbf, vals: &mut Vec<bool>, universal: bool) -> bool {
    let Some((&x, rest)) = vars.split_first() else {
        return eval(body, vals);
    };
    for v in [false, true] {
        vals[x as usize] = v;
        let r = expand_from(rest, body, vals, universal);
        if r != universal {
            return r;
        }
    }
    universal
}
