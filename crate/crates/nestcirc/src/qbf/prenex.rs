use std::collections::HashMap;
use std::fmt::Write as _;

use super::ast::Qbf;
use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Atom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quant {
    Exists,
    Forall,
}

impl Quant {
    fn flip(self) -> Quant {
        match self {
            Quant::Exists => Quant::Forall,
            Quant::Forall => Quant::Exists,
        }
    }
}

/// Quantifier used to close free variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Exists,
    Forall,
}

/// Prenex CNF over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrenexCnf {
    pub num_vars: u32,
    pub prefix: Vec<(Quant, Vec<u32>)>,
    pub clauses: Vec<Vec<i32>>,
    /// Name of variable `i` at index `i - 1`.
    pub names: Vec<String>,
}

/// Negation normal form with every bound variable renamed apart.
#[derive(Debug, Clone)]
enum Nnf {
    Const(bool),
    Lit(u32, bool),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    Quant(Quant, Vec<u32>, Box<Nnf>),
}

struct Converter<'a> {
    alpha: &'a Alphabet,
    names: Vec<String>,
    name_count: HashMap<String, usize>,
}

impl Converter<'_> {
    fn new_var(&mut self, base: &str) -> u32 {
        let k = self.name_count.entry(base.to_string()).or_insert(0);
        *k += 1;
        let name = if *k == 1 {
            base.to_string()
        } else {
            format!("{base}.{k}")
        };
        self.names.push(name);
        self.names.len() as u32
    }

    fn atom_name(&self, a: Atom) -> String {
        if (a as usize) < self.alpha.len() {
            self.alpha.name(a).to_string()
        } else {
            format!("x{a}")
        }
    }

    fn and(parts: Vec<Nnf>) -> Nnf {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Nnf::Const(true) => {}
                Nnf::Const(false) => return Nnf::Const(false),
                Nnf::And(inner) => out.extend(inner),
                p => out.push(p),
            }
        }
        match out.len() {
            0 => Nnf::Const(true),
            1 => out.pop().unwrap(),
            _ => Nnf::And(out),
        }
    }

    fn or(parts: Vec<Nnf>) -> Nnf {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Nnf::Const(false) => {}
                Nnf::Const(true) => return Nnf::Const(true),
                Nnf::Or(inner) => out.extend(inner),
                p => out.push(p),
            }
        }
        match out.len() {
            0 => Nnf::Const(false),
            1 => out.pop().unwrap(),
            _ => Nnf::Or(out),
        }
    }

    /// NNF of `q` (negated when `!pos`) under the binding environment `env`.
    fn nnf(&mut self, q: &Qbf, pos: bool, env: &mut HashMap<Atom, u32>) -> Nnf {
        match q {
            Qbf::Const(b) => Nnf::Const(*b == pos),
            Qbf::Atom(a) => Nnf::Lit(env[a], pos),
            Qbf::Not(g) => self.nnf(g, !pos, env),
            Qbf::And(gs) | Qbf::Or(gs) => {
                let parts = gs.iter().map(|g| self.nnf(g, pos, env)).collect();
                if matches!(q, Qbf::And(_)) == pos {
                    Self::and(parts)
                } else {
                    Self::or(parts)
                }
            }
            Qbf::Implies(a, b) => {
                let na = self.nnf(a, !pos, env);
                let nb = self.nnf(b, pos, env);
                if pos {
                    Self::or(vec![na, nb])
                } else {
                    Self::and(vec![na, nb])
                }
            }
            Qbf::Iff(a, b) => {
                // a <-> b  ==  (~a | b) & (a | ~b);  ~(a <-> b)  ==  (a | b) & (~a | ~b)
                let l1 = self.nnf(a, false, env);
                let r1 = self.nnf(b, pos, env);
                let l2 = self.nnf(a, true, env);
                let r2 = self.nnf(b, !pos, env);
                Self::and(vec![Self::or(vec![l1, r1]), Self::or(vec![l2, r2])])
            }
            Qbf::Forall(vs, body) | Qbf::Exists(vs, body) => {
                let kind = if matches!(q, Qbf::Forall(..)) {
                    Quant::Forall
                } else {
                    Quant::Exists
                };
                let kind = if pos { kind } else { kind.flip() };
                let mut saved = Vec::new();
                let mut vars = Vec::new();
                for &a in vs {
                    let name = self.atom_name(a);
                    let v = self.new_var(&name);
                    saved.push((a, env.insert(a, v)));
                    vars.push(v);
                }
                let inner = self.nnf(body, pos, env);
                for (a, old) in saved.into_iter().rev() {
                    match old {
                        Some(v) => env.insert(a, v),
                        None => env.remove(&a),
                    };
                }
                match inner {
                    Nnf::Const(b) => Nnf::Const(b),
                    inner => Nnf::Quant(kind, vars, Box::new(inner)),
                }
            }
        }
    }
}

/// Level assignment: each quantifier goes to the first level of its kind at
/// or after its nearest enclosing quantifier's level.
fn strip(n: Nnf, parent: usize, first: Quant, levels: &mut Vec<Vec<u32>>) -> Nnf {
    match n {
        Nnf::Quant(kind, vars, body) => {
            let level_kind = |l: usize| {
                if l.is_multiple_of(2) {
                    first
                } else {
                    first.flip()
                }
            };
            let mut l = parent;
            if level_kind(l) != kind {
                l += 1;
            }
            while levels.len() <= l {
                levels.push(Vec::new());
            }
            levels[l].extend(vars);
            strip(*body, l, first, levels)
        }
        Nnf::And(parts) => Nnf::And(
            parts
                .into_iter()
                .map(|p| strip(p, parent, first, levels))
                .collect(),
        ),
        Nnf::Or(parts) => Nnf::Or(
            parts
                .into_iter()
                .map(|p| strip(p, parent, first, levels))
                .collect(),
        ),
        n => n,
    }
}

fn lit(v: u32, pos: bool) -> i32 {
    if pos {
        v as i32
    } else {
        -(v as i32)
    }
}

fn as_clause(n: &Nnf) -> Option<Vec<i32>> {
    match n {
        Nnf::Lit(v, p) => Some(vec![lit(*v, *p)]),
        Nnf::Or(parts) => parts
            .iter()
            .map(|p| match p {
                Nnf::Lit(v, s) => Some(lit(*v, *s)),
                _ => None,
            })
            .collect(),
        _ => None,
    }
}

struct Clausifier<'a> {
    conv: Converter<'a>,
    clauses: Vec<Vec<i32>>,
    aux: Vec<u32>,
}

impl Clausifier<'_> {
    /// Literal implying `n` (one-sided definition, sound since NNF is positive).
    fn define(&mut self, n: &Nnf) -> i32 {
        match n {
            Nnf::Lit(v, p) => lit(*v, *p),
            Nnf::And(parts) => {
                let x = self.fresh();
                for p in parts {
                    let l = self.define(p);
                    self.clauses.push(vec![-x, l]);
                }
                x
            }
            Nnf::Or(parts) => {
                let x = self.fresh();
                let mut c = vec![-x];
                for p in parts {
                    c.push(self.define(p));
                }
                self.clauses.push(c);
                x
            }
            Nnf::Const(_) | Nnf::Quant(..) => {
                unreachable!("constants are folded and quantifiers stripped")
            }
        }
    }

    fn fresh(&mut self) -> i32 {
        let k = self.aux.len() + 1;
        let v = self.conv.new_var(&format!("_t{k}"));
        self.aux.push(v);
        v as i32
    }

    fn top(&mut self, n: &Nnf) {
        match n {
            Nnf::Const(true) => {}
            Nnf::Const(false) => self.clauses.push(Vec::new()),
            Nnf::And(parts) => parts.iter().for_each(|p| self.top(p)),
            Nnf::Lit(..) => self.clauses.push(as_clause(n).unwrap()),
            Nnf::Or(parts) => {
                let c = parts.iter().map(|p| self.define(p)).collect();
                self.clauses.push(c);
            }
            Nnf::Quant(..) => unreachable!(),
        }
    }
}

/// Prenex CNF of `q` with free variables closed by `closure`.
///
/// Bound variables are renamed apart, quantifiers are pulled out level by
/// level, and the matrix is clausified directly when it is already a CNF,
/// otherwise by a one-sided definitional transformation whose auxiliaries are
/// innermost existentials.
pub fn prenex_cnf(q: &Qbf, alpha: &Alphabet, closure: Closure) -> PrenexCnf {
    let mut conv = Converter {
        alpha,
        names: Vec::new(),
        name_count: HashMap::new(),
    };
    let mut env = HashMap::new();
    let mut free_vars = Vec::new();
    for a in q.free_vars() {
        let name = conv.atom_name(a);
        let v = conv.new_var(&name);
        env.insert(a, v);
        free_vars.push(v);
    }
    let nnf = conv.nnf(q, true, &mut env);
    let first = match closure {
        Closure::Exists => Quant::Exists,
        Closure::Forall => Quant::Forall,
    };
    let mut levels = vec![free_vars];
    let matrix = strip(nnf, 0, first, &mut levels);

    let mut cl = Clausifier {
        conv,
        clauses: Vec::new(),
        aux: Vec::new(),
    };
    let direct = match &matrix {
        Nnf::And(parts) => parts.iter().map(as_clause).collect::<Option<Vec<_>>>(),
        m => as_clause(m).map(|c| vec![c]),
    };
    match direct {
        Some(cs) => cl.clauses = cs,
        None => cl.top(&matrix),
    }
    let aux = std::mem::take(&mut cl.aux);
    let names = cl.conv.names;
    let clauses = cl.clauses;

    let mut prefix: Vec<(Quant, Vec<u32>)> = Vec::new();
    let mut push = |kind: Quant, vars: Vec<u32>| {
        if vars.is_empty() {
            return;
        }
        match prefix.last_mut() {
            Some((k, vs)) if *k == kind => vs.extend(vars),
            _ => prefix.push((kind, vars)),
        }
    };
    for (i, vars) in levels.into_iter().enumerate() {
        push(if i % 2 == 0 { first } else { first.flip() }, vars);
    }
    push(Quant::Exists, aux);

    // Renumber so that variables are numbered in prefix order.
    let mut renum = vec![0u32; names.len() + 1];
    let mut new_names = Vec::with_capacity(names.len());
    let mut next = 0u32;
    for (_, vars) in &mut prefix {
        for v in vars.iter_mut() {
            next += 1;
            renum[*v as usize] = next;
            new_names.push(names[*v as usize - 1].clone());
            *v = next;
        }
    }
    // Variables of subformulas folded into constants appear nowhere and are dropped.
    let clauses = clauses
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|l| renum[l.unsigned_abs() as usize] as i32 * l.signum())
                .collect()
        })
        .collect();
    PrenexCnf {
        num_vars: next,
        prefix,
        clauses,
        names: new_names,
    }
}

/// QDIMACS text with a `c var <n> <name>` comment per variable.
pub fn write_qdimacs(p: &PrenexCnf) -> String {
    let mut out = String::new();
    for (i, name) in p.names.iter().enumerate() {
        let _ = writeln!(out, "c var {} {}", i + 1, name);
    }
    let _ = writeln!(out, "p cnf {} {}", p.num_vars, p.clauses.len());
    for (kind, vars) in &p.prefix {
        out.push(if *kind == Quant::Exists { 'e' } else { 'a' });
        for v in vars {
            let _ = write!(out, " {v}");
        }
        out.push_str(" 0\n");
    }
    for c in &p.clauses {
        for l in c {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Reads QDIMACS text, including the variable-name comments of [`write_qdimacs`].
pub fn read_qdimacs(text: &str) -> Result<PrenexCnf> {
    let err = |line: usize, msg: &str| Error::Parse {
        line: line + 1,
        col: 1,
        msg: msg.to_string(),
    };
    let mut named: Vec<(u32, String)> = Vec::new();
    let mut num_vars = None;
    let mut prefix = Vec::new();
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let mut it = rest.split_whitespace();
            if it.next() == Some("var") {
                let n: u32 = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(ln, "bad var comment"))?;
                let name = it.next().ok_or_else(|| err(ln, "bad var comment"))?;
                named.push((n, name.to_string()));
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if toks.len() != 4 || toks[1] != "cnf" {
                    return Err(err(ln, "expected `p cnf <vars> <clauses>`"));
                }
                num_vars = Some(
                    toks[2]
                        .parse::<u32>()
                        .map_err(|_| err(ln, "bad variable count"))?,
                );
            }
            "a" | "e" => {
                let kind = if toks[0] == "a" {
                    Quant::Forall
                } else {
                    Quant::Exists
                };
                let mut vars = Vec::new();
                for t in &toks[1..] {
                    let v: u32 = t.parse().map_err(|_| err(ln, "bad variable"))?;
                    if v == 0 {
                        break;
                    }
                    vars.push(v);
                }
                prefix.push((kind, vars));
            }
            _ => {
                for t in &toks {
                    let l: i32 = t.parse().map_err(|_| err(ln, "bad literal"))?;
                    if l == 0 {
                        clauses.push(std::mem::take(&mut current));
                    } else {
                        current.push(l);
                    }
                }
            }
        }
    }
    let num_vars = num_vars.ok_or_else(|| err(0, "missing problem line"))?;
    let mut names: Vec<String> = (1..=num_vars).map(|i| format!("v{i}")).collect();
    for (n, name) in named {
        if n >= 1 && n <= num_vars {
            names[n as usize - 1] = name;
        }
    }
    Ok(PrenexCnf {
        num_vars,
        prefix,
        clauses,
        names,
    })
}

impl PrenexCnf {
    /// Truth value by QDPLL search: unit propagation with universal
    /// reduction, pure literals, and branching in prefix order. Unquantified
    /// variables count as existential and outermost.
    pub fn eval(&self) -> bool {
        let n = self.num_vars as usize + 1;
        // Level 0 holds the unquantified variables.
        let mut level = vec![0usize; n];
        let mut forall = vec![false; n];
        for (i, (k, vs)) in self.prefix.iter().enumerate() {
            for &v in vs {
                level[v as usize] = i + 1;
                forall[v as usize] = *k == Quant::Forall;
            }
        }
        let clauses: Vec<Vec<i32>> = self
            .clauses
            .iter()
            .filter(|c| !c.iter().any(|l| c.contains(&-l)))
            .cloned()
            .collect();
        let search = Search {
            clauses: &clauses,
            level: &level,
            forall: &forall,
        };
        search.solve(&mut vec![0i8; n])
    }
}

struct Search<'a> {
    clauses: &'a [Vec<i32>],
    level: &'a [usize],
    forall: &'a [bool],
}

enum Step {
    Done(bool),
    Assigned,
    Branch(usize),
}

impl Search<'_> {
    fn solve(&self, vals: &mut Vec<i8>) -> bool {
        let mut trail = Vec::new();
        let result = loop {
            match self.step(vals, &mut trail) {
                Step::Done(r) => break r,
                Step::Assigned => continue,
                Step::Branch(v) => {
                    let universal = self.forall[v];
                    let mut r = universal;
                    for val in [1i8, -1] {
                        vals[v] = val;
                        let sub = self.solve(vals);
                        vals[v] = 0;
                        if sub != universal {
                            r = sub;
                            break;
                        }
                    }
                    break r;
                }
            }
        };
        for v in trail {
            vals[v] = 0;
        }
        result
    }

    /// One round of simplification over the current assignment.
    fn step(&self, vals: &mut [i8], trail: &mut Vec<usize>) -> Step {
        let mut all_sat = true;
        let mut polarity = vec![0u8; vals.len()];
        let mut open = Vec::new();
        for c in self.clauses {
            open.clear();
            let mut sat = false;
            for &l in c {
                match lit_value(l, vals) {
                    1 => {
                        sat = true;
                        break;
                    }
                    0 => open.push(l),
                    _ => {}
                }
            }
            if sat {
                continue;
            }
            all_sat = false;
            let var = |l: i32| l.unsigned_abs() as usize;
            let deepest = open
                .iter()
                .filter(|&&l| !self.forall[var(l)])
                .map(|&l| self.level[var(l)])
                .max();
            // Universal literals quantified after every open existential
            // literal can be dropped.
            let kept: Vec<i32> = open
                .iter()
                .copied()
                .filter(|&l| {
                    !self.forall[var(l)] || deepest.is_some_and(|d| self.level[var(l)] < d)
                })
                .collect();
            match kept.as_slice() {
                [] => return Step::Done(false),
                [l] if !self.forall[var(*l)] => {
                    vals[var(*l)] = if *l > 0 { 1 } else { -1 };
                    trail.push(var(*l));
                    return Step::Assigned;
                }
                _ => {}
            }
            for &l in &open {
                polarity[var(l)] |= if l > 0 { 1 } else { 2 };
            }
        }
        if all_sat {
            return Step::Done(true);
        }
        let mut pure = false;
        for (v, &p) in polarity.iter().enumerate() {
            if p == 1 || p == 2 {
                // Existential pure literals are made true, universal ones false.
                let positive = (p == 1) != self.forall[v];
                vals[v] = if positive { 1 } else { -1 };
                trail.push(v);
                pure = true;
            }
        }
        if pure {
            return Step::Assigned;
        }
        let v = (0..vals.len())
            .filter(|&v| polarity[v] != 0)
            .min_by_key(|&v| self.level[v])
            .expect("an open clause has an open literal");
        Step::Branch(v)
    }
}

fn lit_value(l: i32, vals: &[i8]) -> i8 {
    let v = vals[l.unsigned_abs() as usize];
    if l > 0 {
        v
    } else {
        -v
    }
}
