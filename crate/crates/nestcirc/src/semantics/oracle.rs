//! Exhaustive semantic oracle over truth tables.
//!
//! Every formula is evaluated to a table indexed by assignment masks (bit `i`
//! of the mask is atom `i`). Circ atoms and blocks are computed from the
//! definitions, never through the QBF translations.

use super::interp::Interp;
use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Atom, Block, Child, Formula, Nat};
use crate::transforms::lower_nat;

pub const DEFAULT_CAP: usize = 20;

/// Truth table over `2^n` assignments, packed into words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    n: usize,
    words: Vec<u64>,
}

impl Table {
    fn filled(n: usize, v: bool) -> Self {
        let size = 1usize << n;
        let mut words = vec![if v { u64::MAX } else { 0 }; size.div_ceil(64)];
        if v && size < 64 {
            words[0] = (1u64 << size) - 1;
        }
        Table { n, words }
    }

    fn atom(n: usize, a: Atom) -> Self {
        let mut t = Table::filled(n, false);
        for x in 0..(1usize << n) {
            if x >> a & 1 == 1 {
                t.set(x, true);
            }
        }
        t
    }

    pub fn get(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    fn set(&mut self, x: usize, v: bool) {
        if v {
            self.words[x / 64] |= 1 << (x % 64);
        } else {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    fn not(mut self) -> Self {
        for w in &mut self.words {
            *w = !*w;
        }
        let size = 1usize << self.n;
        if size < 64 {
            self.words[0] &= (1u64 << size) - 1;
        }
        self
    }

    fn and(mut self, o: &Table) -> Self {
        self.words
            .iter_mut()
            .zip(&o.words)
            .for_each(|(a, b)| *a &= b);
        self
    }

    fn or(mut self, o: &Table) -> Self {
        self.words
            .iter_mut()
            .zip(&o.words)
            .for_each(|(a, b)| *a |= b);
        self
    }

    fn iff(mut self, o: &Table) -> Self {
        self.words
            .iter_mut()
            .zip(&o.words)
            .for_each(|(a, b)| *a = !(*a ^ b));
        let size = 1usize << self.n;
        if size < 64 {
            self.words[0] &= (1u64 << size) - 1;
        }
        self
    }

    /// Assignments where the table is true, as masks in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..(1usize << self.n)).filter(|&x| self.get(x))
    }

    /// The table with the bits in `mask` complemented in every index.
    fn flip(&self, mask: usize) -> Table {
        if mask == 0 {
            return self.clone();
        }
        let mut t = Table::filled(self.n, false);
        for x in self.ones() {
            t.set(x ^ mask, true);
        }
        t
    }

    /// Existentially projects the bits in `mask`: the result ignores them.
    fn project(&self, mask: usize) -> Table {
        let mut t = self.clone();
        for b in bits(mask) {
            for x in 0..(1usize << self.n) {
                if x >> b & 1 == 1 {
                    let v = t.get(x) || t.get(x ^ (1 << b));
                    t.set(x, v);
                    t.set(x ^ (1 << b), v);
                }
            }
        }
        t
    }
}

fn bits(mask: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS as usize).filter(move |b| mask >> b & 1 == 1)
}

fn mask_of(atoms: &[Atom]) -> usize {
    atoms.iter().fold(0, |m, &a| m | 1 << a)
}

/// Assignments that satisfy `t` and have no strictly preferred satisfying
/// assignment under minimized `pmask`, floating `zmask`, everything else fixed.
pub fn minimal_table(t: &Table, pmask: usize, zmask: usize) -> Table {
    let n = t.n;
    let size = 1usize << n;
    // h[x] for x with zero Z bits: some Z completion of x satisfies t.
    let mut h = t.clone();
    for b in bits(zmask) {
        for x in 0..size {
            if x >> b & 1 == 1 && h.get(x) {
                h.set(x ^ (1 << b), true);
            }
        }
    }
    // s[x]: some y agreeing with x off P, with y[P] ⊆ x[P], has h[y].
    let mut s = h;
    for b in bits(pmask) {
        for x in 0..size {
            if x >> b & 1 == 1 && !s.get(x) && s.get(x ^ (1 << b)) {
                s.set(x, true);
            }
        }
    }
    let mut out = Table::filled(n, false);
    for x in t.ones() {
        let base = x & !zmask;
        let dominated = bits(x & pmask).any(|b| s.get(base ^ (1 << b)));
        if !dominated {
            out.set(x, true);
        }
    }
    out
}

/// Exhaustive evaluator bound to a size cap.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Oracle { cap }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap || n > 30 {
            return Err(Error::CapExceeded {
                atoms: n,
                cap: self.cap.min(30),
            });
        }
        Ok(())
    }
}

/// Truth table of an L_CIRC formula over `n` atoms.
pub fn lcirc_table(f: &Formula, n: usize) -> Table {
    match f {
        Formula::True => Table::filled(n, true),
        Formula::False => Table::filled(n, false),
        Formula::Atom(a) => Table::atom(n, *a),
        Formula::Not(g) => lcirc_table(g, n).not(),
        Formula::And(gs) => gs
            .iter()
            .fold(Table::filled(n, true), |t, g| t.and(&lcirc_table(g, n))),
        Formula::Or(gs) => gs
            .iter()
            .fold(Table::filled(n, false), |t, g| t.or(&lcirc_table(g, n))),
        Formula::Implies(a, b) => lcirc_table(a, n).not().or(&lcirc_table(b, n)),
        Formula::Iff(a, b) => lcirc_table(a, n).iff(&lcirc_table(b, n)),
        Formula::Circ(g, p, z) => minimal_table(&lcirc_table(g, n), mask_of(p), mask_of(z)),
    }
}

fn to_models(t: &Table, n: usize) -> Vec<Interp> {
    let mut v: Vec<Interp> = t.ones().map(|x| Interp::from_mask(n, x as u64)).collect();
    v.sort();
    v
}

/// All models of an L_CIRC formula over `alpha`, in canonical order.
pub fn brute_models_lcirc(f: &Formula, alpha: &Alphabet, oracle: Oracle) -> Result<Vec<Interp>> {
    let n = alpha.len();
    oracle.check(n)?;
    Ok(to_models(&lcirc_table(f, n), n))
}

/// Table of the conjunction of a block's children, and of the block itself.
///
/// The first table ranges over all atoms (Ab included); the second is the
/// block's satisfaction table, which does not depend on Ab. `min` letters are
/// minimized along with Ab, and `max` letters are minimized after flipping.
pub fn nat_block_tables(b: &Block, alpha: &Alphabet) -> (Table, Table) {
    let n = alpha.len();
    let ab = mask_of(&alpha.ab_atoms());
    let mut body = Table::filled(n, true);
    for c in &b.children {
        let t = match c {
            Child::Formula(f) => lcirc_table(f, n),
            Child::Block(inner) => nat_block_tables(inner, alpha).1,
        };
        body = body.and(&t);
    }
    let zmask = mask_of(&b.described);
    let flip = mask_of(&b.max);
    let pmask = ab | mask_of(&b.min) | flip;
    let minimal = minimal_table(&body.flip(flip), pmask, zmask).flip(flip);
    let sat = minimal.project(ab);
    (minimal, sat)
}

fn lowered(t: &Nat) -> Nat {
    if t.uses_minmax() {
        lower_nat(t)
    } else {
        t.clone()
    }
}

/// Models of a NAT over At∖Ab (Ab letters reported false), canonical order.
pub fn brute_models_nat(t: &Nat, oracle: Oracle) -> Result<Vec<Interp>> {
    let n = t.alphabet.len();
    oracle.check(n)?;
    let mut all = Table::filled(n, true);
    for b in &t.blocks {
        all = all.and(&nat_block_tables(b, &t.alphabet).1);
    }
    let ab = mask_of(&t.alphabet.ab_atoms());
    let mut v: Vec<Interp> = all
        .ones()
        .filter(|x| x & ab == 0)
        .map(|x| Interp::from_mask(n, x as u64))
        .collect();
    v.sort();
    Ok(v)
}

/// All extensions of `m[At∖Ab]` over Ab that are (Ab;C)-minimal models of the
/// block's children. `m ⊨ b` iff the result is nonempty.
///
/// Extended blocks are lowered first; the returned interpretations then range
/// over the lowered alphabet, whose extra letters are appended at the end.
pub fn witness_extensions(
    b: &Block,
    m: &Interp,
    alpha: &Alphabet,
    oracle: Oracle,
) -> Result<Vec<Interp>> {
    let t = lowered(&Nat::new(alpha.clone(), vec![b.clone()]));
    let n = t.alphabet.len();
    oracle.check(n)?;
    let (minimal, _) = nat_block_tables(&t.blocks[0], &t.alphabet);
    let ab = mask_of(&t.alphabet.ab_atoms());
    let base = m.resized(n).to_mask() as usize & !ab;
    let mut v: Vec<Interp> = minimal
        .ones()
        .filter(|x| x & !ab == base)
        .map(|x| Interp::from_mask(n, x as u64))
        .collect();
    v.sort();
    Ok(v)
}
