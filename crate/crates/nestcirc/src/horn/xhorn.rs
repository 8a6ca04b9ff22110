//! Depth-0 extended Horn blocks: model checking and model completion.

use super::cnf::{least_model, HornClause, HornCnf};
use crate::error::{Error, Result};
use crate::semantics::Interp;
use crate::syntax::{Alphabet, Atom, Block, Child};
use crate::transforms::lower_extended;

/// The lowered block together with the data of the completion construction.
struct Prepared {
    alpha: Alphabet,
    /// Formula children plus `p -> ab_p` for the min letters.
    horn: HornCnf,
    /// `(p, ab_p)` for the max letters.
    max_ab: Vec<(Atom, Atom)>,
    /// C together with the min letters.
    described: Vec<Atom>,
}

fn prepare(b: &Block, alpha: &Alphabet) -> Result<Prepared> {
    if b.nesting_depth() > 0 {
        return Err(Error::precondition(
            "extended Horn check needs a block without nested blocks",
        ));
    }
    let mut lowered_alpha = alpha.clone();
    let base = alpha.len() as Atom;
    let _ = lower_extended(b, &mut vec![0], &mut lowered_alpha);
    let min_ab: Vec<(Atom, Atom)> = b
        .min
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, base + i as Atom))
        .collect();
    let max_ab: Vec<(Atom, Atom)> = b
        .max
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, base + (b.min.len() + i) as Atom))
        .collect();
    let mut horn = HornCnf::default();
    for c in &b.children {
        let Child::Formula(f) = c else { unreachable!() };
        let h = HornCnf::from_formula(f)
            .ok_or_else(|| Error::precondition("block child is not a Horn CNF"))?;
        horn.clauses.extend(h.clauses);
    }
    for &(p, ab) in &min_ab {
        horn.clauses.push(HornClause {
            head: Some(ab),
            body: vec![p],
        });
    }
    let mut described = b.described.clone();
    described.extend(b.min.iter().copied());
    Ok(Prepared {
        alpha: lowered_alpha,
        horn,
        max_ab,
        described,
    })
}

/// ψ': the Horn clauses with every non-Ab letter fixed to `m` and every
/// `ab_p` of a max letter set to the complement of `m(p)`.
fn psi_prime(pre: &Prepared, m: &Interp) -> HornCnf {
    let mut cnf = pre.horn.clone();
    for a in pre.alpha.atoms() {
        if pre.alpha.is_ab(a) {
            continue;
        }
        cnf.clauses.push(unit(a, m.get(a)));
    }
    for &(p, ab) in &pre.max_ab {
        cnf.clauses.push(unit(ab, !m.get(p)));
    }
    cnf
}

fn unit(a: Atom, value: bool) -> HornClause {
    if value {
        HornClause::fact(a)
    } else {
        HornClause::constraint(vec![a])
    }
}

/// Decides `m ⊨ b` for an extended Horn block without nested blocks, in
/// polynomial time. Only the non-Ab part of `m` is read.
pub fn xhorn0_check(b: &Block, m: &Interp, alpha: &Alphabet) -> Result<bool> {
    m.check_len(alpha)?;
    let pre = prepare(b, alpha)?;
    let n = pre.alpha.len();
    let m = m.without_ab(alpha).resized(n);
    let Some(m1) = least_model(&psi_prime(&pre, &m), n) else {
        return Ok(false);
    };
    let phi_max_ok = pre.max_ab.iter().all(|&(p, ab)| m1.get(ab) || m1.get(p));
    if !phi_max_ok || !pre.horn.satisfied_by(&m1) {
        return Ok(false);
    }
    let max_ab: Vec<Atom> = pre.max_ab.iter().map(|&(_, ab)| ab).collect();
    let max_letters: Vec<Atom> = pre.max_ab.iter().map(|&(p, _)| p).collect();
    let mut fixings = Vec::new();
    for a in pre.alpha.atoms() {
        if max_ab.contains(&a) {
            continue;
        }
        if pre.alpha.is_ab(a) {
            if !m1.get(a) {
                fixings.push(unit(a, false));
            }
        } else if !pre.described.contains(&a) {
            if m.get(a) {
                fixings.push(unit(a, true));
            } else if !max_letters.contains(&a) {
                fixings.push(unit(a, false));
            }
        }
    }
    let mut candidates: Vec<HornClause> = Vec::new();
    for &p in &max_letters {
        if !m.get(p) {
            candidates.push(unit(p, true));
        }
    }
    for a in pre.alpha.atoms() {
        if pre.alpha.is_ab(a) && !max_ab.contains(&a) && m1.get(a) {
            candidates.push(unit(a, false));
        }
    }
    for l in candidates {
        let mut cnf = pre.horn.clone();
        cnf.clauses.extend(fixings.iter().cloned());
        cnf.clauses.push(l);
        if least_model(&cnf, n).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The deterministic completion of `m` over the lowered alphabet of `b`:
/// the least model of ψ'. If `m ⊨ b` the result is a witness extension.
/// Returns the completion and the lowered alphabet it ranges over.
pub fn xhorn_complete(b: &Block, m: &Interp, alpha: &Alphabet) -> Result<(Interp, Alphabet)> {
    m.check_len(alpha)?;
    let pre = prepare(b, alpha)?;
    let n = pre.alpha.len();
    let m = m.without_ab(alpha).resized(n);
    let m1 = least_model(&psi_prime(&pre, &m), n).ok_or_else(|| {
        Error::precondition(
            "completion constraints are unsatisfiable; the model violates the block",
        )
    })?;
    Ok((m1, pre.alpha))
}
