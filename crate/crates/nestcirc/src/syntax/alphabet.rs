use indexmap::IndexSet;

/// Index of an atom inside an [`Alphabet`].
pub type Atom = u32;

/// Ordered, interned set of atom names with a distinguished abnormality subset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: IndexSet<String>,
    ab: Vec<bool>,
    /// When set, parsing rejects atoms that are not already present.
    pub closed: bool,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Interns `name`, returning its index. Existing atoms keep their Ab flag.
    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(i) = self.names.get_index_of(name) {
            return i as Atom;
        }
        self.names.insert(name.to_string());
        self.ab.push(false);
        (self.names.len() - 1) as Atom
    }

    pub fn intern_ab(&mut self, name: &str) -> Atom {
        let a = self.intern(name);
        self.ab[a as usize] = true;
        a
    }

    pub fn get(&self, name: &str) -> Option<Atom> {
        self.names.get_index_of(name).map(|i| i as Atom)
    }

    pub fn name(&self, a: Atom) -> &str {
        &self.names[a as usize]
    }

    pub fn is_ab(&self, a: Atom) -> bool {
        self.ab[a as usize]
    }

    pub fn set_ab(&mut self, a: Atom, flag: bool) {
        self.ab[a as usize] = flag;
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.names.len()).map(|i| i as Atom)
    }

    pub fn ab_atoms(&self) -> Vec<Atom> {
        self.atoms().filter(|&a| self.is_ab(a)).collect()
    }

    pub fn non_ab_atoms(&self) -> Vec<Atom> {
        self.atoms().filter(|&a| !self.is_ab(a)).collect()
    }

    pub fn names(&self, atoms: &[Atom]) -> Vec<String> {
        atoms.iter().map(|&a| self.name(a).to_string()).collect()
    }

    /// Interns a name derived from `base` that is not yet present.
    ///
    /// `base` itself is tried first, then `base` followed by `'`, `''`, ...
    pub fn fresh(&mut self, base: &str, ab: bool) -> Atom {
        let mut name = base.to_string();
        while self.names.contains(&name) {
            name.push('\'');
        }
        let a = self.intern(&name);
        self.ab[a as usize] = ab;
        a
    }

    /// Interns `<base>'<k>` for the smallest `k >= 1` that is unused.
    pub fn fresh_primed(&mut self, base: &str) -> Atom {
        let mut k = 1usize;
        loop {
            let name = format!("{base}'{k}");
            if !self.names.contains(&name) {
                return self.intern(&name);
            }
            k += 1;
        }
    }
}
