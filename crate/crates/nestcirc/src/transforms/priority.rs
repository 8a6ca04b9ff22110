use crate::error::{Error, Result};
use crate::semantics::{Interp, PrefOrder};
use crate::syntax::{Atom, Formula};

/// Priority levels P1 > ... > Pn plus floating letters Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriorityLevels {
    pub levels: Vec<Vec<Atom>>,
    pub z: Vec<Atom>,
}

impl PriorityLevels {
    pub fn new(levels: Vec<Vec<Atom>>, z: Vec<Atom>) -> Result<Self> {
        let mut seen: Vec<Atom> = Vec::new();
        for level in &levels {
            for &a in level {
                if seen.contains(&a) {
                    return Err(Error::semantic(format!(
                        "atom {a} occurs in two priority levels"
                    )));
                }
                seen.push(a);
            }
        }
        if let Some(a) = z.iter().find(|a| seen.contains(a)) {
            return Err(Error::semantic(format!(
                "atom {a} is both prioritized and floating"
            )));
        }
        Ok(PriorityLevels { levels, z })
    }

    fn is_fixed(&self, a: Atom) -> bool {
        !self.z.contains(&a) && self.levels.iter().all(|l| !l.contains(&a))
    }
}

/// Builds the tower ψ1 = CIRC(φ; P1; Z ∪ P2..Pn), ψi = CIRC(ψ(i-1); Pi; Z ∪ P(i+1)..Pn).
pub fn compile_prioritized(phi: &Formula, levels: &PriorityLevels) -> Result<Formula> {
    let levels = PriorityLevels::new(levels.levels.clone(), levels.z.clone())?;
    let mut psi = phi.clone();
    for (i, p) in levels.levels.iter().enumerate() {
        let mut z = levels.z.clone();
        for later in &levels.levels[i + 1..] {
            z.extend(later);
        }
        psi = Formula::circ(psi, p.clone(), z);
    }
    Ok(psi)
}

/// Lexicographic preference: the first level where `m` and `n` differ decides.
pub fn prioritized_oracle(m: &Interp, n: &Interp, levels: &PriorityLevels) -> Result<PrefOrder> {
    if m.len() != n.len() {
        return Err(Error::semantic("interpretations over different alphabets"));
    }
    if (0..m.len() as Atom).any(|a| levels.is_fixed(a) && m.get(a) != n.get(a)) {
        return Ok(PrefOrder::Incomparable);
    }
    for level in &levels.levels {
        let m_sub = level.iter().all(|&a| !m.get(a) || n.get(a));
        let n_sub = level.iter().all(|&a| !n.get(a) || m.get(a));
        match (m_sub, n_sub) {
            (true, true) => continue,
            (true, false) => return Ok(PrefOrder::Less),
            (false, true) => return Ok(PrefOrder::Greater),
            (false, false) => return Ok(PrefOrder::Incomparable),
        }
    }
    Ok(PrefOrder::Equal)
}
