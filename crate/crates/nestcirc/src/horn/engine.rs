//! Incremental Horn propagation with mergeable per-subtree state.

use std::collections::{HashMap, HashSet};

use crate::syntax::{Alphabet, Atom};

use super::cnf::{HornClause, HornCnf};

struct EClause {
    head: Option<Atom>,
    body: Vec<Atom>,
    missing: usize,
    alive: bool,
}

#[derive(Default)]
struct AtomState {
    value: bool,
    /// Clauses with this atom in the body, while the atom is false.
    watch: Vec<usize>,
}

pub(crate) struct Engine<'a> {
    alpha: &'a Alphabet,
    clauses: Vec<EClause>,
    atoms: HashMap<Atom, AtomState>,
    live: usize,
    queue: Vec<Atom>,
    pub unsat: bool,
    pinned: HashSet<Atom>,
    /// Non-Ab atoms seen so far that are not pinned.
    unpinned: HashSet<Atom>,
}

impl<'a> Engine<'a> {
    pub fn new(alpha: &'a Alphabet) -> Self {
        Engine {
            alpha,
            clauses: Vec::new(),
            atoms: HashMap::new(),
            live: 0,
            queue: Vec::new(),
            unsat: false,
            pinned: HashSet::new(),
            unpinned: HashSet::new(),
        }
    }

    fn weight(&self) -> usize {
        self.live + self.atoms.len()
    }

    pub fn value(&self, a: Atom) -> bool {
        self.atoms.get(&a).is_some_and(|s| s.value)
    }

    fn touch(&mut self, a: Atom) {
        if let std::collections::hash_map::Entry::Vacant(e) = self.atoms.entry(a) {
            e.insert(AtomState::default());
            if !self.alpha.is_ab(a) && !self.pinned.contains(&a) {
                self.unpinned.insert(a);
            }
        }
    }

    /// Adds a clause and propagates. Returns its id.
    pub fn add(&mut self, head: Option<Atom>, body: Vec<Atom>) -> usize {
        let id = self.clauses.len();
        let mut missing = 0;
        for &b in &body {
            self.touch(b);
            let s = self.atoms.get_mut(&b).unwrap();
            if !s.value {
                missing += 1;
                s.watch.push(id);
            }
        }
        if let Some(h) = head {
            self.touch(h);
        }
        self.clauses.push(EClause {
            head,
            body,
            missing,
            alive: true,
        });
        self.live += 1;
        if missing == 0 {
            self.fire(id);
        }
        self.propagate();
        id
    }

    fn fire(&mut self, id: usize) {
        match self.clauses[id].head {
            None => self.unsat = true,
            Some(h) => {
                let s = self.atoms.get_mut(&h).unwrap();
                if !s.value {
                    s.value = true;
                    self.queue.push(h);
                }
            }
        }
    }

    fn propagate(&mut self) {
        while let Some(a) = self.queue.pop() {
            let watch = std::mem::take(&mut self.atoms.get_mut(&a).unwrap().watch);
            for id in watch {
                let c = &mut self.clauses[id];
                if !c.alive {
                    continue;
                }
                c.missing -= 1;
                if c.missing == 0 {
                    self.fire(id);
                }
            }
        }
    }

    /// Merges two engines by moving the live clauses of the smaller one.
    pub fn merge(self, other: Engine<'a>) -> Engine<'a> {
        let (mut big, small) = if self.weight() >= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        big.unsat |= small.unsat;
        for p in &small.pinned {
            big.unpinned.remove(p);
            big.pinned.insert(*p);
        }
        for c in small.clauses {
            if c.alive {
                big.add(c.head, c.body);
            }
        }
        for u in small.unpinned {
            if !big.pinned.contains(&u) {
                big.unpinned.insert(u);
            }
        }
        big
    }

    /// Pins every unpinned atom outside `described` to its value in `value`.
    pub fn pin_fixed(&mut self, described: &HashSet<Atom>, value: &dyn Fn(Atom) -> bool) {
        let mut to_pin: Vec<Atom> = self
            .unpinned
            .iter()
            .copied()
            .filter(|a| !described.contains(a))
            .collect();
        to_pin.sort_unstable();
        for q in to_pin {
            self.unpinned.remove(&q);
            self.pinned.insert(q);
            if value(q) {
                self.add(Some(q), Vec::new());
            } else {
                self.add(None, vec![q]);
            }
        }
    }

    /// Reduces the given clauses by the current values of Ab letters and
    /// forgets those letters.
    pub fn reduce(&mut self, ids: &[usize]) {
        let mut ab_seen = Vec::new();
        for &id in ids {
            let mut delete = false;
            let (head, body) = (self.clauses[id].head, self.clauses[id].body.clone());
            if !self.clauses[id].alive {
                continue;
            }
            if let Some(h) = head {
                if self.alpha.is_ab(h) {
                    ab_seen.push(h);
                    if self.value(h) {
                        delete = true;
                    } else {
                        self.clauses[id].head = None;
                    }
                }
            }
            for &b in &body {
                if self.alpha.is_ab(b) {
                    ab_seen.push(b);
                    if !self.value(b) {
                        delete = true;
                    }
                }
            }
            let alpha = self.alpha;
            let c = &mut self.clauses[id];
            if delete {
                c.alive = false;
                self.live -= 1;
            } else if body.iter().any(|&b| alpha.is_ab(b)) {
                c.body.retain(|&b| !alpha.is_ab(b));
            }
        }
        for ab in ab_seen {
            self.atoms.remove(&ab);
        }
    }

    /// Live clauses and the current least model restricted to non-Ab letters.
    pub fn live_clauses(&self) -> HornCnf {
        HornCnf {
            clauses: self
                .clauses
                .iter()
                .filter(|c| c.alive)
                .map(|c| HornClause {
                    head: c.head,
                    body: c.body.clone(),
                })
                .collect(),
        }
    }

    pub fn true_atoms(&self) -> Vec<Atom> {
        let mut v: Vec<Atom> = self
            .atoms
            .iter()
            .filter(|(_, s)| s.value)
            .map(|(&a, _)| a)
            .collect();
        v.sort_unstable();
        v
    }
}
