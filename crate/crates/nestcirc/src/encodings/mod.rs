//! Generators that compile prenex QBFs into circumscription and NAT instances.

mod input;

pub use input::PrenexQbf;

use crate::error::{Error, Result};
use crate::semantics::Interp;
use crate::syntax::{cnf_clauses, Alphabet, Atom, Block, Child, Formula, Nat};

/// An L_CIRC theory with the literal to query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcircInstance {
    pub formula: Formula,
    pub query: Formula,
    pub alphabet: Alphabet,
}

/// A NAT with the literal to query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatInstance {
    pub nat: Nat,
    pub query: Formula,
}

/// A NAT with the designated interpretation to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McInstance {
    pub nat: Nat,
    pub model: Interp,
}

fn atom_list(atoms: &[Atom]) -> Formula {
    Formula::and_all(atoms.iter().map(|&a| Formula::Atom(a)).collect())
}

fn iff(a: Atom, b: Formula) -> Formula {
    Formula::iff(Formula::Atom(a), b)
}

fn block(described: Vec<Atom>, children: Vec<Formula>) -> Block {
    Block::new(
        described,
        children.into_iter().map(Child::Formula).collect(),
    )
}

/// `CIRC(ψ ∨ u; u; Y)` with query `~u` for `Φ = ∀X ∃Y ψ`.
/// The query is entailed iff Φ is true (for every value of the parameters).
pub fn encode_forall_exists(phi: &PrenexQbf) -> Result<LcircInstance> {
    let shape: Vec<_> = phi.blocks.iter().map(|(k, _)| *k).collect();
    if shape != [crate::qbf::Quant::Forall, crate::qbf::Quant::Exists] {
        return Err(Error::semantic(
            "expected a QBF of the form forall X; exists Y",
        ));
    }
    let mut alphabet = phi.alphabet.clone();
    let u = alphabet.fresh("u", false);
    let body = Formula::or2(phi.matrix.clone(), Formula::Atom(u));
    let formula = Formula::circ(body, vec![u], phi.x(1).to_vec());
    Ok(LcircInstance {
        formula,
        query: Formula::lit(u, false),
        alphabet,
    })
}

/// Expected answer of [`encode_forall_exists`].
pub fn expected_forall_exists(phi: &PrenexQbf) -> bool {
    phi.truth_per_params().into_iter().all(|t| t)
}

fn query_literal(u: Atom, n: usize) -> Formula {
    Formula::lit(u, n % 2 == 1)
}

/// The tower 𝒯_{n-1} for a QBF with `n` blocks.
///
/// 𝒯_0 = {~ : ψ ∨ u}, 𝒯_1 = {X_1, u : ψ ∨ u, u <-> ab}, and above that
/// `u <-> ~ab` and `u <-> ab` alternate. Parameters stay fixed everywhere.
/// Query `u` for odd `n` (entailed iff Φ is false) and `~u` for even `n`
/// (entailed iff Φ is true).
pub fn encode_inference_nat(phi: &PrenexQbf) -> Result<NatInstance> {
    let n = phi.n();
    let mut alphabet = phi.alphabet.clone();
    let u = alphabet.fresh("u", false);
    let ab = alphabet.fresh("ab", true);
    let base = Formula::or2(phi.matrix.clone(), Formula::Atom(u));
    let top = if n == 1 {
        block(Vec::new(), vec![base])
    } else {
        let mut described: Vec<Atom> = phi.x(1).to_vec();
        described.push(u);
        let mut t = block(described, vec![base, iff(u, Formula::Atom(ab))]);
        for j in 2..n {
            let mut described: Vec<Atom> = (1..=j).flat_map(|i| phi.x(i).iter().copied()).collect();
            described.push(u);
            let link = if j % 2 == 0 {
                Formula::not(Formula::Atom(ab))
            } else {
                Formula::Atom(ab)
            };
            t = Block::new(
                described,
                vec![Child::Block(t), Child::Formula(iff(u, link))],
            );
        }
        t
    };
    Ok(NatInstance {
        nat: Nat::new(alphabet, vec![top]),
        query: query_literal(u, n),
    })
}

/// Expected answer of the inference encodings.
pub fn expected_inference(phi: &PrenexQbf) -> bool {
    let truth = phi.truth_per_params();
    if phi.n() % 2 == 1 {
        truth.iter().all(|t| !t)
    } else {
        truth.iter().all(|&t| t)
    }
}

/// The model-checking tower 𝒯'_n and designated model M for a QBF with
/// `n + 1` blocks; the outermost block X_{n+1} may be empty, in which case
/// the guess and copy formulas are left out. Parameters are false in M.
///
/// Besides the guess `(X_n & v) -> ⋀(ab_x <-> ~ab'_x)` and the copy
/// `~(X_n & v) -> ⋀(x <-> ab_x)`, every pair must satisfy `ab_x | ab'_x`,
/// so a competing model cannot drop part of the guessed assignment.
pub fn encode_mc_nat(phi: &PrenexQbf) -> Result<McInstance> {
    if phi.n() < 2 {
        return Err(Error::semantic(
            "model-checking encoding needs at least two quantifier blocks",
        ));
    }
    let n = phi.n() - 1;
    let mut alphabet = phi.alphabet.clone();
    let u = alphabet.fresh("u", false);
    let v = alphabet.fresh("v", false);
    let ab = alphabet.fresh("ab", true);
    let outer = phi.x(n + 1).to_vec();
    let mut guess = Vec::new();
    for &x in &outer {
        let name = phi.alphabet.name(x).to_string();
        let a1 = alphabet.fresh(&format!("ab_{name}"), true);
        let a2 = alphabet.fresh(&format!("ab'_{name}"), true);
        guess.push((x, a1, a2));
    }
    let mut xv: Vec<Atom> = phi.x(n).to_vec();
    xv.push(v);
    let xv = atom_list(&xv);
    let disj = Formula::or_all(vec![phi.matrix.clone(), Formula::Atom(u), xv.clone()]);
    let phi1 = if n % 2 == 1 {
        Formula::and2(disj, Formula::implies(xv.clone(), Formula::Atom(u)))
    } else {
        disj
    };
    let phi_u = |j: usize| {
        if j % 2 == 1 {
            iff(u, Formula::Atom(ab))
        } else {
            iff(u, Formula::not(Formula::Atom(ab)))
        }
    };
    let mut extra = Vec::new();
    if !guess.is_empty() {
        let g = Formula::and_all(
            guess
                .iter()
                .map(|&(_, a1, a2)| iff(a1, Formula::not(Formula::Atom(a2))))
                .collect(),
        );
        let c = Formula::and_all(
            guess
                .iter()
                .map(|&(x, a1, _)| iff(x, Formula::Atom(a1)))
                .collect(),
        );
        let pairs = Formula::and_all(
            guess
                .iter()
                .map(|&(_, a1, a2)| Formula::or2(Formula::Atom(a1), Formula::Atom(a2)))
                .collect(),
        );
        extra.push(Formula::implies(xv.clone(), g));
        extra.push(Formula::implies(Formula::not(xv.clone()), c));
        // Without this a competitor can shrink the guess itself.
        extra.push(pairs);
    }
    let prefix =
        |j: usize| -> Vec<Atom> { (1..=j).flat_map(|i| phi.x(i).iter().copied()).collect() };
    let top = if n == 1 {
        let mut described = prefix(2);
        described.extend([u, v]);
        let mut children = vec![phi1, phi_u(1)];
        children.extend(extra);
        block(described, children)
    } else {
        let mut d1 = prefix(1);
        d1.push(u);
        let mut t = block(d1, vec![phi1, phi_u(1)]);
        for j in 2..n {
            let mut d = prefix(j);
            d.push(u);
            t = Block::new(d, vec![Child::Block(t), Child::Formula(phi_u(j))]);
        }
        let mut d = prefix(n + 1);
        d.extend([u, v]);
        let mut children = vec![Child::Block(t), Child::Formula(phi_u(n))];
        children.extend(extra.into_iter().map(Child::Formula));
        Block::new(d, children)
    };
    let mut model = Interp::new(alphabet.len());
    for a in prefix(n) {
        model.set(a, true);
    }
    model.set(v, true);
    if n % 2 == 1 {
        model.set(u, true);
    }
    Ok(McInstance {
        nat: Nat::new(alphabet, vec![top]),
        model,
    })
}

/// Expected answer of [`encode_mc_nat`]: `M ⊨ 𝒯'_n` iff Φ (parameters false)
/// is false for odd `n` and true for even `n`.
pub fn expected_mc(phi: &PrenexQbf) -> bool {
    let truth = phi.truth_per_params()[0];
    if (phi.n() - 1) % 2 == 1 {
        !truth
    } else {
        truth
    }
}

/// Extended Horn tower T̂_{n-1} for a QBF with `n` blocks and a CNF matrix.
///
/// Every letter p gets a complement letter p', enforced by the block
/// `{max A, A' : ⋀(~p | ~p')}`; the matrix becomes `⋀(γ'_j | u)` where γ'_j
/// replaces each positive x by ~x'; and the `u <-> ab` links are replaced by
/// alternating `min u` / `max u` declarations. Same query as
/// [`encode_inference_nat`].
pub fn encode_xhorn(phi: &PrenexQbf) -> Result<NatInstance> {
    let clauses = cnf_clauses(&phi.matrix).ok_or_else(|| Error::semantic("matrix is not a CNF"))?;
    let n = phi.n();
    let mut alphabet = phi.alphabet.clone();
    let letters: Vec<Atom> = phi.alphabet.atoms().collect();
    let mut comp = vec![0; letters.len()];
    for &p in &letters {
        let name = phi.alphabet.name(p).to_string();
        comp[p as usize] = alphabet.fresh(&format!("{name}'"), false);
    }
    let u = alphabet.fresh("u", false);
    let hat = Formula::and_all(
        clauses
            .iter()
            .map(|c| {
                let mut lits: Vec<Formula> =
                    c.neg.iter().map(|&x| Formula::lit(x, false)).collect();
                lits.extend(c.pos.iter().map(|&x| Formula::lit(comp[x as usize], false)));
                lits.push(Formula::Atom(u));
                Formula::or_all(lits)
            })
            .collect(),
    );
    let mut max: Vec<Atom> = letters.clone();
    max.extend(letters.iter().map(|&p| comp[p as usize]));
    let neq = Block {
        described: Vec::new(),
        min: Vec::new(),
        max,
        children: vec![Child::Formula(Formula::and_all(
            letters
                .iter()
                .map(|&p| {
                    Formula::or2(
                        Formula::lit(p, false),
                        Formula::lit(comp[p as usize], false),
                    )
                })
                .collect(),
        ))],
    };
    let with_primes = |j: usize| -> Vec<Atom> {
        (1..=j)
            .flat_map(|i| phi.x(i).iter().flat_map(|&x| [x, comp[x as usize]]))
            .collect()
    };
    let top = if n == 1 {
        Block::new(Vec::new(), vec![Child::Formula(hat), Child::Block(neq)])
    } else {
        let mut t = Block {
            described: with_primes(1),
            min: vec![u],
            max: Vec::new(),
            children: vec![Child::Formula(hat), Child::Block(neq)],
        };
        for j in 2..n {
            let (min, max) = if j % 2 == 0 {
                (Vec::new(), vec![u])
            } else {
                (vec![u], Vec::new())
            };
            t = Block {
                described: with_primes(j),
                min,
                max,
                children: vec![Child::Block(t)],
            };
        }
        t
    };
    Ok(NatInstance {
        nat: Nat::new(alphabet, vec![top]),
        query: query_literal(u, n),
    })
}
