use crate::syntax::{Alphabet, Atom, Block, Child, Formula, Nat};

pub(crate) fn path_string(path: &[usize]) -> String {
    path.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

/// Fresh abnormality letter for `p` in the block at `path`.
pub(crate) fn ab_letter(alpha: &mut Alphabet, p: Atom, path: &[usize]) -> Atom {
    let base = format!("ab_{}@{}", alpha.name(p), path_string(path));
    alpha.fresh(&base, true)
}

/// Rewrites an extended block into an ordinary one.
///
/// `{C; min C-; max C+ : B..}` becomes `{C ∪ C- ∪ C+ : φ-, φ+, B..}` with
/// `φ- = ⋀ (p -> ab_p)` over C- and `φ+ = ⋀ (~ab_p -> p)` over C+. Nested
/// blocks are lowered recursively; ordinary blocks are returned unchanged.
pub fn lower_extended(b: &Block, path: &mut Vec<usize>, alpha: &mut Alphabet) -> Block {
    let mut out = Block::new(b.declared(), Vec::new());
    if !b.min.is_empty() {
        let parts = b
            .min
            .iter()
            .map(|&p| Formula::implies(Formula::Atom(p), Formula::Atom(ab_letter(alpha, p, path))))
            .collect();
        out.children.push(Child::Formula(Formula::and_all(parts)));
    }
    if !b.max.is_empty() {
        let parts = b
            .max
            .iter()
            .map(|&p| {
                let ab = ab_letter(alpha, p, path);
                Formula::implies(Formula::not(Formula::Atom(ab)), Formula::Atom(p))
            })
            .collect();
        out.children.push(Child::Formula(Formula::and_all(parts)));
    }
    for (i, c) in b.children.iter().enumerate() {
        out.children.push(match c {
            Child::Formula(f) => Child::Formula(f.clone()),
            Child::Block(inner) => {
                path.push(i);
                let l = lower_extended(inner, path, alpha);
                path.pop();
                Child::Block(l)
            }
        });
    }
    out
}

/// Lowers every extended block of a NAT. Top-level blocks use paths `0`, `1`, ...
pub fn lower_nat(t: &Nat) -> Nat {
    let mut alpha = t.alphabet.clone();
    let blocks = t
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| lower_extended(b, &mut vec![i], &mut alpha))
        .collect();
    Nat::new(alpha, blocks)
}
