use super::alphabet::Atom;

/// Propositional formula, optionally containing circumscriptive atoms.
///
/// Pure propositional formulas are the `Circ`-free subset. Conjunctions and
/// disjunctions are n-ary; the helper constructors keep them at two or more
/// operands so that rendering and reparsing round-trips structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `CIRC(inner; P; Z)`: P minimized, Z floating, everything else fixed.
    Circ(Box<Formula>, Vec<Atom>, Vec<Atom>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn circ(inner: Formula, p: Vec<Atom>, z: Vec<Atom>) -> Self {
        Formula::Circ(Box::new(inner), p, z)
    }

    pub fn lit(a: Atom, positive: bool) -> Self {
        if positive {
            Formula::Atom(a)
        } else {
            Formula::not(Formula::Atom(a))
        }
    }

    /// Conjunction; `True` for no operands, the operand itself for one.
    pub fn and_all(mut fs: Vec<Formula>) -> Self {
        match fs.len() {
            0 => Formula::True,
            1 => fs.pop().unwrap(),
            _ => Formula::And(fs),
        }
    }

    /// Disjunction; `False` for no operands, the operand itself for one.
    pub fn or_all(mut fs: Vec<Formula>) -> Self {
        match fs.len() {
            0 => Formula::False,
            1 => fs.pop().unwrap(),
            _ => Formula::Or(fs),
        }
    }

    pub fn and2(a: Formula, b: Formula) -> Self {
        Formula::And(vec![a, b])
    }

    pub fn or2(a: Formula, b: Formula) -> Self {
        Formula::Or(vec![a, b])
    }

    /// Nesting depth: maximum number of circumscriptive atoms on a path.
    pub fn nesting_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(f) => f.nesting_depth(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().map(|f| f.nesting_depth()).max().unwrap_or(0)
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.nesting_depth().max(b.nesting_depth()),
            Formula::Circ(f, _, _) => 1 + f.nesting_depth(),
        }
    }

    pub fn is_propositional(&self) -> bool {
        self.nesting_depth() == 0
    }

    /// Atoms occurring anywhere, including the P and Z lists of circ atoms.
    pub fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => out.push(*a),
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Circ(f, p, z) => {
                f.collect_atoms(out);
                out.extend(p.iter().copied());
                out.extend(z.iter().copied());
            }
        }
    }

    /// Sorted, deduplicated atom list.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut v = Vec::new();
        self.collect_atoms(&mut v);
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Number of nodes plus list entries; the size measure used in reports.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(|f| f.size()).sum::<usize>(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => 1 + a.size() + b.size(),
            Formula::Circ(f, p, z) => 1 + f.size() + p.len() + z.len(),
        }
    }

    /// Evaluates a propositional formula under `val`. Panics on circ atoms.
    pub fn eval_prop(&self, val: &dyn Fn(Atom) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => val(*a),
            Formula::Not(f) => !f.eval_prop(val),
            Formula::And(fs) => fs.iter().all(|f| f.eval_prop(val)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval_prop(val)),
            Formula::Implies(a, b) => !a.eval_prop(val) || b.eval_prop(val),
            Formula::Iff(a, b) => a.eval_prop(val) == b.eval_prop(val),
            Formula::Circ(..) => panic!("eval_prop called on a circumscriptive atom"),
        }
    }

    /// Applies `f` to every atom occurrence (including P/Z lists).
    pub fn map_atoms(&self, f: &dyn Fn(Atom) -> Atom) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => Formula::Atom(f(*a)),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Formula::Iff(a, b) => Formula::iff(a.map_atoms(f), b.map_atoms(f)),
            Formula::Circ(g, p, z) => Formula::circ(
                g.map_atoms(f),
                p.iter().map(|&a| f(a)).collect(),
                z.iter().map(|&a| f(a)).collect(),
            ),
        }
    }
}
