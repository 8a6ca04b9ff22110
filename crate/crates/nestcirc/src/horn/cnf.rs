use std::fmt::Write as _;

use crate::semantics::Interp;
use crate::syntax::{cnf_clauses, Alphabet, Atom, Formula};

/// `body -> head`; a missing head is a constraint `~(b1 & ... & bk)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HornClause {
    pub head: Option<Atom>,
    pub body: Vec<Atom>,
}

impl HornClause {
    pub fn fact(a: Atom) -> Self {
        HornClause {
            head: Some(a),
            body: Vec::new(),
        }
    }

    pub fn constraint(body: Vec<Atom>) -> Self {
        HornClause { head: None, body }
    }

    pub fn satisfied_by(&self, m: &Interp) -> bool {
        self.head.is_some_and(|h| m.get(h)) || self.body.iter().any(|&b| !m.get(b))
    }

    pub fn to_formula(&self) -> Formula {
        let lits = self
            .body
            .iter()
            .map(|&b| Formula::lit(b, false))
            .chain(self.head.map(Formula::Atom))
            .collect();
        Formula::or_all(lits)
    }
}

/// Conjunction of Horn clauses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HornCnf {
    pub clauses: Vec<HornClause>,
}

impl HornCnf {
    /// Horn clauses of a syntactic Horn CNF, or `None` if `f` is not one.
    pub fn from_formula(f: &Formula) -> Option<HornCnf> {
        let cs = cnf_clauses(f)?;
        let mut clauses = Vec::with_capacity(cs.len());
        for c in cs {
            if c.pos.len() > 1 {
                return None;
            }
            let mut body = c.neg;
            body.sort_unstable();
            body.dedup();
            clauses.push(HornClause {
                head: c.pos.first().copied(),
                body,
            });
        }
        Some(HornCnf { clauses })
    }

    pub fn to_formula(&self) -> Formula {
        Formula::and_all(self.clauses.iter().map(HornClause::to_formula).collect())
    }

    pub fn satisfied_by(&self, m: &Interp) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(m))
    }

    pub fn size(&self) -> usize {
        self.clauses.iter().map(|c| c.body.len() + 1).sum()
    }

    /// DIMACS CNF with a `c var <n> <name>` comment per alphabet atom.
    pub fn to_dimacs(&self, alpha: &Alphabet) -> String {
        let mut out = String::new();
        for a in alpha.atoms() {
            let _ = writeln!(out, "c var {} {}", a + 1, alpha.name(a));
        }
        let _ = writeln!(out, "p cnf {} {}", alpha.len(), self.clauses.len());
        for c in &self.clauses {
            for &b in &c.body {
                let _ = write!(out, "-{} ", b + 1);
            }
            if let Some(h) = c.head {
                let _ = write!(out, "{} ", h + 1);
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Least model over `len` atoms by counter-based unit propagation, or `None`
/// if the clauses are unsatisfiable. Linear in the size of `cnf`.
pub fn least_model(cnf: &HornCnf, len: usize) -> Option<Interp> {
    let mut m = Interp::new(len);
    let mut missing: Vec<usize> = cnf.clauses.iter().map(|c| c.body.len()).collect();
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); len];
    for (i, c) in cnf.clauses.iter().enumerate() {
        for &b in &c.body {
            watch[b as usize].push(i);
        }
    }
    let mut queue = Vec::new();
    for c in &cnf.clauses {
        if c.body.is_empty() {
            match c.head {
                None => return None,
                Some(h) if !m.get(h) => {
                    m.set(h, true);
                    queue.push(h);
                }
                Some(_) => {}
            }
        }
    }
    while let Some(a) = queue.pop() {
        for &i in &watch[a as usize] {
            missing[i] -= 1;
            if missing[i] == 0 {
                match cnf.clauses[i].head {
                    None => return None,
                    Some(h) if !m.get(h) => {
                        m.set(h, true);
                        queue.push(h);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Some(m)
}
