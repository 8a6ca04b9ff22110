//! Model checking, inference and satisfiability for both formalisms.

use std::fmt;

use crate::error::{Error, Result};
use crate::horn::{check_model_horn, flatten, infer_cnf_horn, xhorn0_check};
use crate::qbf::{eval_qbf, sigma, sigma_star, tau, Qbf};
use crate::semantics::{
    brute_models_lcirc, brute_models_nat, lcirc_table, Interp, Oracle, DEFAULT_CAP,
};
use crate::syntax::{validate, Alphabet, Formula, Nat};

/// A theory in either formalism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theory {
    Lcirc {
        formula: Formula,
        alphabet: Alphabet,
    },
    Nat(Nat),
}

impl Theory {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Theory::Lcirc { alphabet, .. } => alphabet,
            Theory::Nat(t) => &t.alphabet,
        }
    }

    pub fn alphabet_mut(&mut self) -> &mut Alphabet {
        match self {
            Theory::Lcirc { alphabet, .. } => alphabet,
            Theory::Nat(t) => &mut t.alphabet,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Qbf,
    Brute,
    Horn,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Qbf => "qbf",
            Strategy::Brute => "brute",
            Strategy::Horn => "horn",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Check,
    Infer,
    Sat,
}

/// Query runner. With `verify` set, a second strategy is run and any
/// disagreement is reported as an error.
#[derive(Debug, Clone, Copy)]
pub struct Engine {
    pub strategy: Strategy,
    pub cap: usize,
    pub verify: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            strategy: Strategy::Auto,
            cap: DEFAULT_CAP,
            verify: false,
        }
    }
}

impl Engine {
    pub fn new(strategy: Strategy) -> Self {
        Engine {
            strategy,
            ..Engine::default()
        }
    }

    /// Does `m` satisfy the theory? For NATs only the non-Ab part of `m` is read.
    pub fn check_model(&self, t: &Theory, m: &Interp) -> Result<bool> {
        m.check_len(t.alphabet())?;
        self.run(Kind::Check, |s| match s {
            Strategy::Horn => horn_check(t, m),
            Strategy::Qbf => qbf_check(t, m),
            _ => brute_check(t, m, self.cap),
        })
    }

    /// Is `conclusion` true in every model of the theory?
    pub fn infer(&self, t: &Theory, conclusion: &Formula) -> Result<bool> {
        let alpha = t.alphabet();
        if let Some(&a) = conclusion
            .atoms()
            .iter()
            .find(|&&a| a as usize >= alpha.len())
        {
            return Err(Error::semantic(format!(
                "conclusion atom {a} is not in the alphabet"
            )));
        }
        if let Theory::Nat(_) = t {
            if let Some(&a) = conclusion.atoms().iter().find(|&&a| alpha.is_ab(a)) {
                return Err(Error::semantic(format!(
                    "conclusion mentions abnormality letter {}",
                    alpha.name(a)
                )));
            }
        }
        self.run(Kind::Infer, |s| match s {
            Strategy::Horn => horn_infer(t, conclusion),
            Strategy::Qbf => qbf_infer(t, conclusion),
            _ => brute_infer(t, conclusion, self.cap),
        })
    }

    /// Does the theory have a model?
    pub fn satisfiable(&self, t: &Theory) -> Result<bool> {
        self.run(Kind::Sat, |s| match s {
            Strategy::Horn => horn_sat(t),
            Strategy::Qbf => qbf_sat(t),
            _ => brute_sat(t, self.cap),
        })
    }

    /// All models by exhaustive enumeration (Ab letters false for NATs).
    pub fn models(&self, t: &Theory) -> Result<Vec<Interp>> {
        let oracle = Oracle::new(self.cap);
        match t {
            Theory::Lcirc { formula, alphabet } => brute_models_lcirc(formula, alphabet, oracle),
            Theory::Nat(n) => brute_models_nat(n, oracle),
        }
    }

    fn run(&self, kind: Kind, f: impl Fn(Strategy) -> Result<bool>) -> Result<bool> {
        let (used, answer) = match self.strategy {
            Strategy::Auto => match f(Strategy::Horn) {
                Ok(v) => (Strategy::Horn, v),
                Err(Error::Precondition(_) | Error::CapExceeded { .. }) => {
                    (Strategy::Qbf, f(Strategy::Qbf)?)
                }
                Err(e) => return Err(e),
            },
            s => (s, f(s)?),
        };
        if self.verify {
            let other = match used {
                Strategy::Qbf => Strategy::Brute,
                _ => Strategy::Qbf,
            };
            let second = f(other)?;
            if second != answer {
                return Err(Error::Disagreement(format!(
                    "{kind:?}: {used} says {answer}, {other} says {second}"
                )));
            }
        }
        Ok(answer)
    }
}

fn nat_of(t: &Theory) -> Result<&Nat> {
    match t {
        Theory::Nat(n) => Ok(n),
        Theory::Lcirc { .. } => Err(Error::precondition(
            "the Horn strategy applies to NATs only",
        )),
    }
}

fn horn_check(t: &Theory, m: &Interp) -> Result<bool> {
    let n = nat_of(t)?;
    if !n.uses_minmax() {
        return check_model_horn(n, m);
    }
    for b in &n.blocks {
        if !xhorn0_check(b, m, &n.alphabet)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn horn_infer(t: &Theory, c: &Formula) -> Result<bool> {
    infer_cnf_horn(nat_of(t)?, c)
}

fn horn_sat(t: &Theory) -> Result<bool> {
    Ok(flatten(nat_of(t)?)?.model.is_some())
}

/// Translation of the theory with its extended alphabet.
fn translate(t: &Theory) -> (Qbf, Alphabet) {
    match t {
        Theory::Lcirc { formula, alphabet } => {
            let mut alpha = alphabet.clone();
            (tau(formula, &mut alpha), alpha)
        }
        Theory::Nat(n) => sigma(n),
    }
}

fn qbf_check(t: &Theory, m: &Interp) -> Result<bool> {
    let (q, alpha) = translate(t);
    let m = match t {
        Theory::Nat(_) => m.without_ab(t.alphabet()),
        Theory::Lcirc { .. } => m.clone(),
    };
    eval_qbf(&q, &m.resized(alpha.len()))
}

fn qbf_infer(t: &Theory, c: &Formula) -> Result<bool> {
    let (q, mut alpha) = translate(t);
    let body = Qbf::implies(q, tau(c, &mut alpha));
    let closed = Qbf::forall(body.free_vars(), body);
    eval_qbf(&closed, &Interp::new(alpha.len()))
}

fn qbf_sat(t: &Theory) -> Result<bool> {
    let (q, alpha) = translate(t);
    let closed = Qbf::exists(q.free_vars(), q);
    eval_qbf(&closed, &Interp::new(alpha.len()))
}

fn brute_models(t: &Theory, cap: usize) -> Result<Vec<Interp>> {
    Engine {
        cap,
        ..Engine::default()
    }
    .models(t)
}

fn brute_check(t: &Theory, m: &Interp, cap: usize) -> Result<bool> {
    let m = match t {
        Theory::Nat(_) => m.without_ab(t.alphabet()),
        Theory::Lcirc { .. } => m.clone(),
    };
    Ok(brute_models(t, cap)?.binary_search(&m).is_ok())
}

fn brute_infer(t: &Theory, c: &Formula, cap: usize) -> Result<bool> {
    let models = brute_models(t, cap)?;
    let table = lcirc_table(c, t.alphabet().len());
    Ok(models.iter().all(|m| table.get(m.to_mask() as usize)))
}

fn brute_sat(t: &Theory, cap: usize) -> Result<bool> {
    Ok(!brute_models(t, cap)?.is_empty())
}

/// Structural summary of a theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub kind: &'static str,
    pub nesting_depth: usize,
    pub blocks: usize,
    pub atoms: usize,
    pub ab_atoms: usize,
    pub size: usize,
    pub horn: Option<bool>,
    pub fixed_letters: Option<bool>,
    pub minmax: Option<bool>,
    pub translation_size: usize,
    pub sigma_star_size: Option<usize>,
}

/// Depth, block and atom counts, classification and translation sizes.
pub fn stats(t: &Theory) -> Stats {
    let (q, _) = translate(t);
    match t {
        Theory::Lcirc { formula, alphabet } => Stats {
            kind: "lcirc",
            nesting_depth: formula.nesting_depth(),
            blocks: 1,
            atoms: alphabet.len(),
            ab_atoms: 0,
            size: formula.size(),
            horn: None,
            fixed_letters: None,
            minmax: None,
            translation_size: q.size(),
            sigma_star_size: None,
        },
        Theory::Nat(n) => {
            let r = validate(n);
            Stats {
                kind: "nat",
                nesting_depth: r.nesting_depth,
                blocks: r.blocks,
                atoms: n.alphabet.len(),
                ab_atoms: n.alphabet.ab_atoms().len(),
                size: n.size(),
                horn: Some(r.is_horn),
                fixed_letters: Some(r.has_fixed_letters),
                minmax: Some(r.uses_minmax),
                translation_size: q.size(),
                sigma_star_size: Some(sigma_star(n).formula.size()),
            }
        }
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |v: Option<bool>| v.map_or("n/a".to_string(), |b| b.to_string());
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "nd: {}", self.nesting_depth)?;
        writeln!(f, "blocks: {}", self.blocks)?;
        writeln!(f, "atoms: {}", self.atoms)?;
        writeln!(f, "ab_atoms: {}", self.ab_atoms)?;
        writeln!(f, "size: {}", self.size)?;
        writeln!(f, "horn: {}", flag(self.horn))?;
        writeln!(f, "fixed_letters: {}", flag(self.fixed_letters))?;
        writeln!(f, "minmax: {}", flag(self.minmax))?;
        writeln!(f, "translation_size: {}", self.translation_size)?;
        if let Some(s) = self.sigma_star_size {
            writeln!(f, "sigma_star_size: {s}")?;
        }
        Ok(())
    }
}
