use super::alphabet::{Alphabet, Atom};
use super::formula::Formula;

/// A block child: a propositional formula or a nested block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Child {
    Formula(Formula),
    Block(Block),
}

/// `{ C ; min C- ; max C+ : children }`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Block {
    pub described: Vec<Atom>,
    pub min: Vec<Atom>,
    pub max: Vec<Atom>,
    pub children: Vec<Child>,
}

/// A nested abnormality theory: a list of blocks over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nat {
    pub alphabet: Alphabet,
    pub blocks: Vec<Block>,
}

impl Block {
    pub fn new(described: Vec<Atom>, children: Vec<Child>) -> Self {
        Block {
            described,
            min: Vec::new(),
            max: Vec::new(),
            children,
        }
    }

    pub fn is_extended(&self) -> bool {
        !self.min.is_empty() || !self.max.is_empty()
    }

    /// Ordinary blocks have depth 0 when all children are formulas.
    pub fn nesting_depth(&self) -> usize {
        self.children
            .iter()
            .filter_map(|c| match c {
                Child::Block(b) => Some(1 + b.nesting_depth()),
                Child::Formula(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Number of blocks in this subtree, including `self`.
    pub fn block_count(&self) -> usize {
        1 + self.sub_blocks().map(|b| b.block_count()).sum::<usize>()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.children.iter().filter_map(|c| match c {
            Child::Formula(f) => Some(f),
            Child::Block(_) => None,
        })
    }

    pub fn sub_blocks(&self) -> impl Iterator<Item = &Block> {
        self.children.iter().filter_map(|c| match c {
            Child::Block(b) => Some(b),
            Child::Formula(_) => None,
        })
    }

    /// Atoms occurring in this subtree, including letter lists.
    pub fn collect_atoms(&self, out: &mut Vec<Atom>) {
        out.extend(self.described.iter().copied());
        out.extend(self.min.iter().copied());
        out.extend(self.max.iter().copied());
        for c in &self.children {
            match c {
                Child::Formula(f) => f.collect_atoms(out),
                Child::Block(b) => b.collect_atoms(out),
            }
        }
    }

    /// Atoms occurring in formulas of this subtree (letter lists excluded).
    pub fn collect_formula_atoms(&self, out: &mut Vec<Atom>) {
        for c in &self.children {
            match c {
                Child::Formula(f) => f.collect_atoms(out),
                Child::Block(b) => b.collect_formula_atoms(out),
            }
        }
    }

    pub fn formula_atoms(&self) -> Vec<Atom> {
        let mut v = Vec::new();
        self.collect_formula_atoms(&mut v);
        v.sort_unstable();
        v.dedup();
        v
    }

    /// All letters the block declares (C, C-, C+).
    pub fn declared(&self) -> Vec<Atom> {
        let mut v = self.described.clone();
        v.extend(self.min.iter().copied());
        v.extend(self.max.iter().copied());
        v
    }

    pub fn size(&self) -> usize {
        let mut n = 1 + self.described.len() + self.min.len() + self.max.len();
        for c in &self.children {
            n += match c {
                Child::Formula(f) => f.size(),
                Child::Block(b) => b.size(),
            };
        }
        n
    }
}

impl Nat {
    pub fn new(alphabet: Alphabet, blocks: Vec<Block>) -> Self {
        Nat { alphabet, blocks }
    }

    pub fn nesting_depth(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.nesting_depth())
            .max()
            .unwrap_or(0)
    }

    /// Number of (recursively occurring) blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.iter().map(|b| b.block_count()).sum()
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(|b| b.size()).sum()
    }

    pub fn uses_minmax(&self) -> bool {
        fn rec(b: &Block) -> bool {
            b.is_extended() || b.sub_blocks().any(rec)
        }
        self.blocks.iter().any(rec)
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut v = Vec::new();
        for b in &self.blocks {
            b.collect_atoms(&mut v);
        }
        v.sort_unstable();
        v.dedup();
        v
    }
}
