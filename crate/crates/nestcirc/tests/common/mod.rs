#![allow(dead_code)]

use nestcirc::encodings::PrenexQbf;
use nestcirc::qbf::Qbf;
use rand::seq::SliceRandom;

use rand_chacha::ChaCha8Rng;

pub use rand::Rng as _;
use rand::Rng;
pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random CNF over `vars`, as text.
pub fn random_cnf(r: &mut Rng8, vars: &[String], clauses: usize, width: usize) -> String {
    if vars.is_empty() || clauses == 0 {
        return "true".into();
    }
    let mut out = Vec::new();
    for _ in 0..clauses {
        let k = r.gen_range(1..=width.min(vars.len()));
        let mut vs: Vec<&String> = vars.iter().collect();
        vs.shuffle(r);
        let lits: Vec<String> = vs[..k]
            .iter()
            .map(|v| {
                if r.gen_bool(0.5) {
                    v.to_string()
                } else {
                    format!("~{v}")
                }
            })
            .collect();
        out.push(format!("({})", lits.join(" | ")));
    }
    out.join(" & ")
}

/// Random prenex QBF text with `blocks` alternating blocks ending in ∃,
/// `nvars` bound variables and `nparams` free parameters.
pub fn random_qbf_text(
    r: &mut Rng8,
    blocks: usize,
    nvars: usize,
    nparams: usize,
    empty_outer: bool,
) -> String {
    let mut sizes = vec![1; blocks];
    for _ in blocks..nvars.max(blocks) {
        let i = r.gen_range(0..blocks);
        sizes[i] += 1;
    }
    if empty_outer && blocks > 1 {
        sizes[0] = 0;
    }
    let mut text = String::new();
    let mut all = Vec::new();
    let mut idx = 0;
    for (i, &s) in sizes.iter().enumerate() {
        let kw = if (blocks - 1 - i).is_multiple_of(2) {
            "exists"
        } else {
            "forall"
        };
        let names: Vec<String> = (0..s)
            .map(|_| {
                idx += 1;
                format!("x{idx}")
            })
            .collect();
        all.extend(names.iter().cloned());
        text.push_str(&format!("{kw} {}; ", names.join(" ")));
    }
    all.extend((0..nparams).map(|i| format!("v{i}")));
    let nclauses = r.gen_range(1..=all.len() + 2);
    text.push_str("matrix ");
    text.push_str(&random_cnf(r, &all, nclauses, 3));
    text
}

pub fn random_qbf(
    r: &mut Rng8,
    blocks: usize,
    nvars: usize,
    nparams: usize,
    empty_outer: bool,
) -> PrenexQbf {
    PrenexQbf::parse(&random_qbf_text(r, blocks, nvars, nparams, empty_outer))
        .expect("generated QBF parses")
}

// ---------------------------------------------------------------------------
// Random theories.

use nestcirc::syntax::{Alphabet, Atom, Block, Child, Formula, Nat};

/// Random QBF tree over `vars`; quantifiers may bind any of them.
pub fn random_qbf_tree(r: &mut Rng8, vars: &[Atom], depth: usize) -> Qbf {
    if depth == 0 || r.gen_bool(0.2) {
        return match r.gen_range(0..10) {
            0 => Qbf::Const(r.gen_bool(0.5)),
            _ => Qbf::Atom(vars[r.gen_range(0..vars.len())]),
        };
    }
    let a = random_qbf_tree(r, vars, depth - 1);
    match r.gen_range(0..7) {
        0 => Qbf::not(a),
        1 => Qbf::And(vec![a, random_qbf_tree(r, vars, depth - 1)]),
        2 => Qbf::Or(vec![a, random_qbf_tree(r, vars, depth - 1)]),
        3 => Qbf::implies(a, random_qbf_tree(r, vars, depth - 1)),
        4 => Qbf::iff(a, random_qbf_tree(r, vars, depth - 1)),
        5 => Qbf::Forall(vec![vars[r.gen_range(0..vars.len())]], Box::new(a)),
        _ => Qbf::Exists(vec![vars[r.gen_range(0..vars.len())]], Box::new(a)),
    }
}

/// Closed QBF over at most ten variables.
pub fn random_closed_qbf(r: &mut Rng8) -> (Qbf, Alphabet) {
    let n = r.gen_range(1..=10);
    let alpha = alphabet(n, 0);
    let vars: Vec<Atom> = alpha.atoms().collect();
    let body = random_qbf_tree(r, &vars, 6);
    let free = body.free_vars();
    let q = if r.gen_bool(0.5) {
        Qbf::forall(free, body)
    } else {
        Qbf::exists(free, body)
    };
    (q, alpha)
}

pub fn alphabet(plain: usize, ab: usize) -> Alphabet {
    let mut a = Alphabet::new();
    for i in 0..plain {
        a.intern(&format!("p{i}"));
    }
    for i in 0..ab {
        a.intern_ab(&format!("ab{i}"));
    }
    a
}

pub fn random_prop(r: &mut Rng8, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || r.gen_bool(0.3) {
        return match r.gen_range(0..12) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Atom(*atoms.choose(r).unwrap()),
        };
    }
    let a = random_prop(r, atoms, depth - 1);
    let b = random_prop(r, atoms, depth - 1);
    match r.gen_range(0..5) {
        0 => Formula::not(a),
        1 => Formula::and2(a, b),
        2 => Formula::or2(a, b),
        3 => Formula::implies(a, b),
        _ => Formula::iff(a, b),
    }
}

fn disjoint_lists(r: &mut Rng8, atoms: &[Atom]) -> (Vec<Atom>, Vec<Atom>) {
    let mut p = Vec::new();
    let mut z = Vec::new();
    for &a in atoms {
        match r.gen_range(0..3) {
            0 => p.push(a),
            1 => z.push(a),
            _ => {}
        }
    }
    (p, z)
}

/// Random L_CIRC formula with circ nesting depth at most `nd`.
pub fn random_lcirc(r: &mut Rng8, atoms: &[Atom], depth: usize, nd: usize) -> Formula {
    if nd > 0 && r.gen_bool(0.45) {
        let inner = random_lcirc(r, atoms, depth, nd - 1);
        let (p, z) = disjoint_lists(r, atoms);
        return Formula::circ(inner, p, z);
    }
    if depth == 0 || r.gen_bool(0.25) {
        return Formula::Atom(*atoms.choose(r).unwrap());
    }
    let a = random_lcirc(r, atoms, depth - 1, nd);
    let b = random_lcirc(r, atoms, depth - 1, nd);
    match r.gen_range(0..5) {
        0 => Formula::not(a),
        1 => Formula::and2(a, b),
        2 => Formula::or2(a, b),
        3 => Formula::implies(a, b),
        _ => Formula::iff(a, b),
    }
}

pub fn random_clause(r: &mut Rng8, atoms: &[Atom], horn: bool) -> Formula {
    let k = r.gen_range(1..=3.min(atoms.len()));
    let mut vs = atoms.to_vec();
    vs.shuffle(r);
    let mut positive_used = false;
    let lits = vs[..k]
        .iter()
        .map(|&a| {
            let pos = r.gen_bool(0.45) && !(horn && positive_used);
            positive_used |= pos;
            Formula::lit(a, pos)
        })
        .collect();
    Formula::or_all(lits)
}

pub fn random_cnf_formula(r: &mut Rng8, atoms: &[Atom], max_clauses: usize, horn: bool) -> Formula {
    let n = r.gen_range(1..=max_clauses);
    Formula::and_all((0..n).map(|_| random_clause(r, atoms, horn)).collect())
}

#[derive(Debug, Clone, Copy)]
pub struct NatShape {
    pub plain: usize,
    pub ab: usize,
    pub depth: usize,
    pub horn: bool,
    /// Every block describes every non-Ab letter of its subtree.
    pub no_fixed: bool,
    pub minmax: bool,
    pub top_blocks: usize,
}

impl Default for NatShape {
    fn default() -> Self {
        NatShape {
            plain: 4,
            ab: 2,
            depth: 2,
            horn: false,
            no_fixed: false,
            minmax: false,
            top_blocks: 2,
        }
    }
}

fn random_child_formula(r: &mut Rng8, atoms: &[Atom], s: &NatShape) -> Formula {
    if s.horn {
        random_cnf_formula(r, atoms, 3, true)
    } else {
        random_prop(r, atoms, 3)
    }
}

pub fn random_block(r: &mut Rng8, alpha: &Alphabet, s: &NatShape, depth: usize) -> Block {
    let atoms: Vec<Atom> = alpha.atoms().collect();
    let plain = alpha.non_ab_atoms();
    let mut children = Vec::new();
    let nchildren = r.gen_range(1..=3);
    for _ in 0..nchildren {
        if depth > 0 && r.gen_bool(0.4) {
            children.push(Child::Block(random_block(r, alpha, s, depth - 1)));
        } else {
            children.push(Child::Formula(random_child_formula(r, &atoms, s)));
        }
    }
    let mut b = Block::new(Vec::new(), children);
    let subtree: Vec<Atom> = b
        .formula_atoms()
        .into_iter()
        .filter(|a| !alpha.is_ab(*a))
        .collect();
    let pool: Vec<Atom> = if s.no_fixed {
        subtree.clone()
    } else {
        plain.clone()
    };
    for a in pool {
        let roll = if s.no_fixed { 0 } else { r.gen_range(0..3) };
        if roll == 0 {
            if s.minmax && r.gen_bool(0.3) {
                if r.gen_bool(0.5) {
                    b.min.push(a);
                } else {
                    b.max.push(a);
                }
            } else {
                b.described.push(a);
            }
        }
    }
    b
}

pub fn random_nat(r: &mut Rng8, s: &NatShape) -> Nat {
    let alpha = alphabet(s.plain, s.ab);
    let n = r.gen_range(1..=s.top_blocks);
    let blocks = (0..n)
        .map(|_| random_block(r, &alpha, s, s.depth))
        .collect();
    Nat::new(alpha, blocks)
}

/// Depth-0 extended Horn block.
pub fn random_xhorn_block(r: &mut Rng8, alpha: &Alphabet) -> Block {
    let atoms: Vec<Atom> = alpha.atoms().collect();
    let n = r.gen_range(1..=2);
    let children = (0..n)
        .map(|_| Child::Formula(random_cnf_formula(r, &atoms, 3, true)))
        .collect();
    let mut b = Block::new(Vec::new(), children);
    for a in alpha.non_ab_atoms() {
        match r.gen_range(0..4) {
            0 => b.described.push(a),
            1 => b.min.push(a),
            2 => b.max.push(a),
            _ => {}
        }
    }
    b
}

// ---------------------------------------------------------------------------
// Definitional oracles, written directly from the semantics and kept
// independent of the library's table-based evaluator.

pub fn bit(m: u64, a: Atom) -> bool {
    m >> a & 1 == 1
}

fn mask(atoms: &[Atom]) -> u64 {
    atoms.iter().fold(0, |m, &a| m | 1 << a)
}

/// All masks that agree with `m` outside `free`.
fn variants(m: u64, free: u64) -> impl Iterator<Item = u64> {
    let bits: Vec<u32> = (0..64).filter(|b| free >> b & 1 == 1).collect();
    (0..1u64 << bits.len()).map(move |k| {
        let mut x = m & !free;
        for (i, &b) in bits.iter().enumerate() {
            if k >> i & 1 == 1 {
                x |= 1 << b;
            }
        }
        x
    })
}

fn strict_subset(a: u64, b: u64) -> bool {
    a & !b == 0 && a != b
}

/// Truth of an L_CIRC formula in `m`, evaluating circ atoms by the
/// minimal-model definition.
pub fn naive_eval(f: &Formula, m: u64) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => bit(m, *a),
        Formula::Not(g) => !naive_eval(g, m),
        Formula::And(gs) => gs.iter().all(|g| naive_eval(g, m)),
        Formula::Or(gs) => gs.iter().any(|g| naive_eval(g, m)),
        Formula::Implies(a, b) => !naive_eval(a, m) || naive_eval(b, m),
        Formula::Iff(a, b) => naive_eval(a, m) == naive_eval(b, m),
        Formula::Circ(g, p, z) => {
            if !naive_eval(g, m) {
                return false;
            }
            let pm = mask(p);
            !variants(m, pm | mask(z)).any(|n| strict_subset(n & pm, m & pm) && naive_eval(g, n))
        }
    }
}

pub fn naive_models_lcirc(f: &Formula, n: usize) -> Vec<u64> {
    (0..1u64 << n).filter(|&m| naive_eval(f, m)).collect()
}

/// Minimized set of a candidate witness: its Ab letters, its min letters and
/// the max letters it leaves false.
fn extended_cost(b: &Block, ab: u64, e: u64) -> u64 {
    let mut cost = e & ab;
    for &p in &b.min {
        if bit(e, p) {
            cost |= 1 << (40 + p);
        }
    }
    for &p in &b.max {
        if !bit(e, p) {
            cost |= 1 << (40 + p);
        }
    }
    cost
}

fn children_hold(b: &Block, alpha: &Alphabet, e: u64) -> bool {
    b.children.iter().all(|c| match c {
        Child::Formula(f) => naive_eval(f, e),
        Child::Block(inner) => naive_block(inner, alpha, e),
    })
}

/// `m ⊨ b`: some Ab-completion satisfies the children and no competitor that
/// keeps the fixed letters has a strictly smaller minimized set.
pub fn naive_block(b: &Block, alpha: &Alphabet, m: u64) -> bool {
    let ab = mask(&alpha.ab_atoms());
    let declared = mask(&b.described) | mask(&b.min) | mask(&b.max);
    variants(m, ab).any(|e| {
        children_hold(b, alpha, e)
            && !variants(e, ab | declared).any(|e2| {
                strict_subset(extended_cost(b, ab, e2), extended_cost(b, ab, e))
                    && children_hold(b, alpha, e2)
            })
    })
}

/// Models of a NAT as masks over its alphabet with Ab letters false.
pub fn naive_models_nat(t: &Nat) -> Vec<u64> {
    let ab = mask(&t.alphabet.ab_atoms());
    (0..1u64 << t.alphabet.len())
        .filter(|m| m & ab == 0)
        .filter(|&m| t.blocks.iter().all(|b| naive_block(b, &t.alphabet, m)))
        .collect()
}

pub fn masks(models: &[nestcirc::semantics::Interp]) -> Vec<u64> {
    let mut v: Vec<u64> = models.iter().map(|m| m.to_mask()).collect();
    v.sort_unstable();
    v
}
