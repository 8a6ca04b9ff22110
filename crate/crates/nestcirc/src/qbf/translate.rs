use std::collections::HashMap;

use super::ast::Qbf;
use crate::syntax::{Alphabet, Atom, Block, Child, Formula, Nat};
use crate::transforms::{lower_nat, path_string};

fn dedup(atoms: &[Atom]) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    for &a in atoms {
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

/// Second-order circumscription of an already translated body:
/// `body ∧ ∀P'Z'((body[P',Z'] ∧ P' ≤ P) → P ≤ P')`.
pub(crate) fn circ_qbf(body: Qbf, p: &[Atom], z: &[Atom], alpha: &mut Alphabet) -> Qbf {
    let p = dedup(p);
    let z = dedup(z);
    let mut map = HashMap::new();
    let mut primed = Vec::new();
    for &a in p.iter().chain(&z) {
        let name = alpha.name(a).to_string();
        let a2 = alpha.fresh_primed(&name);
        map.insert(a, a2);
        primed.push(a2);
    }
    let le = |from: &dyn Fn(Atom) -> Atom, to: &dyn Fn(Atom) -> Atom| {
        Qbf::and_all(
            p.iter()
                .map(|&a| Qbf::implies(Qbf::Atom(from(a)), Qbf::Atom(to(a))))
                .collect(),
        )
    };
    let prime = |a: Atom| map[&a];
    let id = |a: Atom| a;
    let copy = body.rename(&map);
    let smaller = Qbf::and_all(vec![copy, le(&prime, &id)]);
    let inner = Qbf::implies(smaller, le(&id, &prime));
    Qbf::and_all(vec![body, Qbf::forall(primed, inner)])
}

/// The τ translation of an L_CIRC formula.
///
/// Primed copies are interned into `alpha` as `<name>'<k>`.
pub fn tau(f: &Formula, alpha: &mut Alphabet) -> Qbf {
    match f {
        Formula::True => Qbf::Const(true),
        Formula::False => Qbf::Const(false),
        Formula::Atom(a) => Qbf::Atom(*a),
        Formula::Not(g) => Qbf::not(tau(g, alpha)),
        Formula::And(gs) => Qbf::And(gs.iter().map(|g| tau(g, alpha)).collect()),
        Formula::Or(gs) => Qbf::Or(gs.iter().map(|g| tau(g, alpha)).collect()),
        Formula::Implies(a, b) => Qbf::implies(tau(a, alpha), tau(b, alpha)),
        Formula::Iff(a, b) => Qbf::iff(tau(a, alpha), tau(b, alpha)),
        Formula::Circ(g, p, z) => {
            let body = tau(g, alpha);
            circ_qbf(body, p, z, alpha)
        }
    }
}

/// Abnormality letters bound by a block: those occurring in its subtree.
pub(crate) fn block_ab(b: &Block, alpha: &Alphabet) -> Vec<Atom> {
    b.formula_atoms()
        .into_iter()
        .filter(|&a| alpha.is_ab(a))
        .collect()
}

fn sigma_block(b: &Block, alpha: &mut Alphabet) -> Qbf {
    let body = Qbf::and_all(
        b.children
            .iter()
            .map(|c| match c {
                Child::Formula(f) => Qbf::from_formula(f),
                Child::Block(inner) => sigma_block(inner, alpha),
            })
            .collect(),
    );
    let ab = block_ab(b, alpha);
    let circ = circ_qbf(body, &ab, &b.declared(), alpha);
    Qbf::exists(ab, circ)
}

/// The σ translation of a NAT: `⋀ ∃Ab.CIRC(⋀children; Ab; C)` per block.
///
/// Extended blocks are lowered first. Returns the QBF and the alphabet it is
/// written over (the lowered alphabet plus primed copies).
pub fn sigma(t: &Nat) -> (Qbf, Alphabet) {
    let t = if t.uses_minmax() {
        lower_nat(t)
    } else {
        t.clone()
    };
    let mut alpha = t.alphabet.clone();
    let q = Qbf::and_all(
        t.blocks
            .iter()
            .map(|b| sigma_block(b, &mut alpha))
            .collect(),
    );
    (q, alpha)
}

/// Result of the quantifier-free embedding of a NAT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaStar {
    pub formula: Formula,
    /// Non-Ab letters of the input followed by the auxiliary letters.
    pub alphabet: Alphabet,
    /// The auxiliary letters A*.
    pub aux: Vec<Atom>,
    /// Position of each input letter in `alphabet`; `None` for Ab letters.
    pub atom_map: Vec<Option<Atom>>,
}

struct StarBuilder<'a> {
    src: &'a Alphabet,
    out: Alphabet,
    map: Vec<Option<Atom>>,
    aux: Vec<Atom>,
}

impl StarBuilder<'_> {
    /// Returns the block's formula and every letter quantified in its subtree.
    fn block(&mut self, b: &Block, path: &mut Vec<usize>) -> (Formula, Vec<Atom>) {
        let ab = block_ab(b, self.src);
        let mut local: HashMap<Atom, Atom> = HashMap::new();
        let mut renamed = Vec::new();
        for &a in &ab {
            let name = format!("{}@{}", self.src.name(a), path_string(path));
            let a2 = self.out.fresh(&name, false);
            self.aux.push(a2);
            local.insert(a, a2);
            renamed.push(a2);
        }
        let mut inner_quantified = Vec::new();
        let mut parts = Vec::new();
        for (i, c) in b.children.iter().enumerate() {
            match c {
                Child::Formula(f) => {
                    let map = &self.map;
                    parts.push(f.map_atoms(&|a| {
                        local
                            .get(&a)
                            .copied()
                            .unwrap_or_else(|| map[a as usize].unwrap())
                    }));
                }
                Child::Block(inner) => {
                    path.push(i);
                    let (g, q) = self.block(inner, path);
                    path.pop();
                    parts.push(g);
                    inner_quantified.extend(q);
                }
            }
        }
        let mut z: Vec<Atom> = b
            .declared()
            .iter()
            .map(|&a| self.map[a as usize].unwrap())
            .collect();
        z.extend(inner_quantified.iter().copied());
        let f = Formula::circ(Formula::and_all(parts), renamed.clone(), z);
        renamed.extend(inner_quantified);
        (f, renamed)
    }
}

/// The σ★ embedding: every bound Ab group is renamed apart to `<ab>@<path>`,
/// letters quantified inside a circ body float in it, and quantifiers are
/// dropped.
pub fn sigma_star(t: &Nat) -> SigmaStar {
    let orig_len = t.alphabet.len();
    let t = if t.uses_minmax() {
        lower_nat(t)
    } else {
        t.clone()
    };
    let mut out = Alphabet::new();
    let mut map = vec![None; t.alphabet.len()];
    for a in t.alphabet.non_ab_atoms() {
        map[a as usize] = Some(out.intern(t.alphabet.name(a)));
    }
    let mut sb = StarBuilder {
        src: &t.alphabet,
        out,
        map,
        aux: Vec::new(),
    };
    let mut parts = Vec::new();
    for (i, b) in t.blocks.iter().enumerate() {
        parts.push(sb.block(b, &mut vec![i]).0);
    }
    let mut atom_map = sb.map;
    atom_map.truncate(orig_len);
    SigmaStar {
        formula: Formula::and_all(parts),
        alphabet: sb.out,
        aux: sb.aux,
        atom_map,
    }
}
