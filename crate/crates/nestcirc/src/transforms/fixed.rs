use std::collections::BTreeMap;

use crate::syntax::{block_fixed_letters, Alphabet, Atom, Block, Child, Formula, Nat};

struct LcircElim<'a> {
    alpha: &'a mut Alphabet,
    /// q -> q'
    primes: BTreeMap<Atom, Atom>,
    /// q' -> q
    base: BTreeMap<Atom, Atom>,
}

impl LcircElim<'_> {
    fn prime(&mut self, q: Atom) -> Atom {
        if let Some(&p) = self.primes.get(&q) {
            return p;
        }
        let name = format!("{}'", self.alpha.name(q));
        let p = self.alpha.fresh(&name, false);
        self.primes.insert(q, p);
        self.base.insert(p, q);
        p
    }

    fn def(q: Atom, qp: Atom) -> Formula {
        Formula::iff(Formula::Atom(q), Formula::not(Formula::Atom(qp)))
    }

    /// Rewritten formula plus the auxiliary letters whose definition it implies.
    fn rewrite(&mut self, f: &Formula) -> (Formula, Vec<Atom>) {
        match f {
            Formula::True | Formula::False | Formula::Atom(_) => (f.clone(), Vec::new()),
            Formula::Not(g) => (Formula::not(self.rewrite(g).0), Vec::new()),
            Formula::And(gs) => {
                let mut implied = Vec::new();
                let parts = gs
                    .iter()
                    .map(|g| {
                        let (g2, imp) = self.rewrite(g);
                        implied.extend(imp);
                        g2
                    })
                    .collect();
                (Formula::And(parts), implied)
            }
            Formula::Or(gs) => (
                Formula::Or(gs.iter().map(|g| self.rewrite(g).0).collect()),
                Vec::new(),
            ),
            Formula::Implies(a, b) => (
                Formula::implies(self.rewrite(a).0, self.rewrite(b).0),
                Vec::new(),
            ),
            Formula::Iff(a, b) => (
                Formula::iff(self.rewrite(a).0, self.rewrite(b).0),
                Vec::new(),
            ),
            Formula::Circ(g, p, z) => {
                let (body, inner_implied) = self.rewrite(g);
                let occurring = body.atoms();
                let (aux, plain): (Vec<Atom>, Vec<Atom>) = occurring
                    .into_iter()
                    .partition(|a| self.base.contains_key(a));
                let fixed: Vec<Atom> = plain
                    .into_iter()
                    .filter(|a| !p.contains(a) && !z.contains(a))
                    .collect();
                let mut new_p = p.clone();
                let mut new_z = z.clone();
                let mut conj = vec![body];
                let mut implied = inner_implied.clone();
                for &q in &fixed {
                    let qp = self.prime(q);
                    new_p.push(q);
                    new_p.push(qp);
                    conj.push(Self::def(q, qp));
                    implied.push(qp);
                }
                // Auxiliaries of nested atoms float here and keep their definition.
                for qp in aux {
                    let q = self.base[&qp];
                    if fixed.contains(&q) || new_p.contains(&qp) || new_z.contains(&qp) {
                        continue;
                    }
                    new_z.push(qp);
                    if !inner_implied.contains(&qp) {
                        conj.push(Self::def(q, qp));
                    }
                    implied.push(qp);
                }
                implied.sort_unstable();
                implied.dedup();
                (Formula::circ(Formula::and_all(conj), new_p, new_z), implied)
            }
        }
    }
}

/// Removes fixed letters from every circ atom.
///
/// Each letter `q` fixed in an atom gets an auxiliary `q'`; both are
/// minimized there and `q <-> ~q'` is conjoined to the body. Around nested
/// atoms the auxiliary floats and its definition is repeated wherever the
/// enclosing context does not already imply it, so that the result is
/// equivalent to the input once the auxiliaries are projected away.
/// Returns the rewritten formula and the auxiliary letters.
pub fn eliminate_fixed_lcirc(f: &Formula, alpha: &mut Alphabet) -> (Formula, Vec<Atom>) {
    let mut e = LcircElim {
        alpha,
        primes: BTreeMap::new(),
        base: BTreeMap::new(),
    };
    let (g, implied) = e.rewrite(f);
    let mut conj = vec![g.clone()];
    for qp in g.atoms() {
        if let Some(&q) = e.base.get(&qp) {
            if !implied.contains(&qp) {
                conj.push(LcircElim::def(q, qp));
            }
        }
    }
    let out = if conj.len() == 1 {
        g
    } else {
        Formula::And(conj)
    };
    (out, e.base.keys().copied().collect())
}

fn collect_fixed(b: &Block, alpha: &Alphabet, out: &mut Vec<Atom>) {
    out.extend(block_fixed_letters(b, alpha));
    for inner in b.sub_blocks() {
        collect_fixed(inner, alpha, out);
    }
}

fn rewrite_block(
    b: &Block,
    alpha: &Alphabet,
    all_fixed: &[Atom],
    letters: &BTreeMap<Atom, (Atom, Atom)>,
) -> Block {
    let fixed = block_fixed_letters(b, alpha);
    let declared = b.declared();
    let mut described = b.described.clone();
    described.extend(all_fixed.iter().copied().filter(|q| !declared.contains(q)));
    let mut children: Vec<Child> = b
        .children
        .iter()
        .map(|c| match c {
            Child::Formula(f) => Child::Formula(f.clone()),
            Child::Block(inner) => Child::Block(rewrite_block(inner, alpha, all_fixed, letters)),
        })
        .collect();
    for q in fixed {
        let (abq, abq2) = letters[&q];
        children.push(Child::Formula(Formula::and2(
            Formula::iff(Formula::Atom(q), Formula::Atom(abq)),
            Formula::iff(Formula::Atom(abq), Formula::not(Formula::Atom(abq2))),
        )));
    }
    Block {
        described,
        min: b.min.clone(),
        max: b.max.clone(),
        children,
    }
}

/// Removes fixed letters from a NAT.
///
/// For every letter `q` fixed in some block, abnormality letters `ab_q` and
/// `ab'_q` are introduced, `(q <-> ab_q) & (ab_q <-> ~ab'_q)` is added as a
/// child of each block where `q` is fixed, and `q` becomes described in every
/// block. Returns the new theory and the letters `ab'_q`.
pub fn eliminate_fixed_nat(t: &Nat) -> (Nat, Vec<Atom>) {
    let mut all_fixed = Vec::new();
    for b in &t.blocks {
        collect_fixed(b, &t.alphabet, &mut all_fixed);
    }
    let mut seen = Vec::new();
    all_fixed.retain(|q| {
        let new = !seen.contains(q);
        seen.push(*q);
        new
    });
    let mut alpha = t.alphabet.clone();
    let mut letters = BTreeMap::new();
    let mut aux = Vec::new();
    for &q in &all_fixed {
        let name = t.alphabet.name(q).to_string();
        let abq = alpha.fresh(&format!("ab_{name}"), true);
        let abq2 = alpha.fresh(&format!("ab'_{name}"), true);
        letters.insert(q, (abq, abq2));
        aux.push(abq2);
    }
    let blocks = t
        .blocks
        .iter()
        .map(|b| rewrite_block(b, &t.alphabet, &all_fixed, &letters))
        .collect();
    (Nat::new(alpha, blocks), aux)
}
