use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Atom};

/// Total truth assignment over an alphabet, stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interp {
    len: usize,
    words: Vec<u64>,
}

impl Interp {
    /// All-false assignment over `len` atoms.
    pub fn new(len: usize) -> Self {
        Interp {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_true(len: usize, atoms: &[Atom]) -> Self {
        let mut m = Interp::new(len);
        for &a in atoms {
            m.set(a, true);
        }
        m
    }

    /// Bit `i` of `mask` is the value of atom `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        let mut m = Interp::new(len);
        if len > 0 {
            m.words[0] = if len >= 64 {
                mask
            } else {
                mask & ((1u64 << len) - 1)
            };
        }
        m
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= 64, "interpretation too large for a mask");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, a: Atom) -> bool {
        let i = a as usize;
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, a: Atom, v: bool) {
        let i = a as usize;
        assert!(
            i < self.len,
            "atom index {i} outside interpretation of size {}",
            self.len
        );
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn true_atoms(&self) -> Vec<Atom> {
        (0..self.len as Atom).filter(|&a| self.get(a)).collect()
    }

    /// Grows or shrinks to `len` atoms; new atoms are false.
    pub fn resized(&self, len: usize) -> Interp {
        let mut m = Interp::new(len);
        for a in self.true_atoms() {
            if (a as usize) < len {
                m.set(a, true);
            }
        }
        m
    }

    /// Copy with every abnormality letter set to false.
    pub fn without_ab(&self, alpha: &Alphabet) -> Interp {
        let mut m = self.clone();
        for a in alpha.ab_atoms() {
            if (a as usize) < m.len {
                m.set(a, false);
            }
        }
        m
    }

    pub fn agrees_on(&self, other: &Interp, atoms: &[Atom]) -> bool {
        atoms.iter().all(|&a| self.get(a) == other.get(a))
    }

    pub fn check_len(&self, alpha: &Alphabet) -> Result<()> {
        if self.len != alpha.len() {
            return Err(Error::semantic(format!(
                "interpretation has {} atoms, alphabet has {}",
                self.len,
                alpha.len()
            )));
        }
        Ok(())
    }
}

/// Canonical order: lexicographic over alphabet order, false before true.
impl Ord for Interp {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.len.max(other.len);
        for a in 0..n as Atom {
            match (self.get(a), other.get(a)) {
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                _ => {}
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Interp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
