//! Canonical text output; `parse(render(x))` reproduces `x`.

use super::alphabet::{Alphabet, Atom};
use super::formula::Formula;
use super::nat::{Block, Child, Nat};

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(_) => 3,
        Formula::And(_) => 4,
        Formula::Not(_) => 5,
        _ => 6,
    }
}

fn wrap(out: &mut String, f: &Formula, alpha: &Alphabet, parens: bool) {
    if parens {
        out.push('(');
        write_formula(out, f, alpha);
        out.push(')');
    } else {
        write_formula(out, f, alpha);
    }
}

pub(crate) fn write_list(out: &mut String, atoms: &[Atom], alpha: &Alphabet) {
    for (i, &a) in atoms.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(alpha.name(a));
    }
}

fn write_formula(out: &mut String, f: &Formula, alpha: &Alphabet) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(a) => out.push_str(alpha.name(*a)),
        Formula::Not(g) => {
            out.push('~');
            wrap(out, g, alpha, prec(g) < 5);
        }
        Formula::And(gs) | Formula::Or(gs) => {
            let (op, p) = if matches!(f, Formula::And(_)) {
                (" & ", 4)
            } else {
                (" | ", 3)
            };
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    out.push_str(op);
                }
                wrap(out, g, alpha, prec(g) <= p);
            }
        }
        Formula::Implies(a, b) => {
            wrap(out, a, alpha, prec(a) <= 2);
            out.push_str(" -> ");
            wrap(out, b, alpha, prec(b) < 2);
        }
        Formula::Iff(a, b) => {
            wrap(out, a, alpha, prec(a) < 1);
            out.push_str(" <-> ");
            wrap(out, b, alpha, prec(b) <= 1);
        }
        Formula::Circ(g, p, z) => {
            out.push_str("circ(");
            write_formula(out, g, alpha);
            out.push_str("; ");
            write_list(out, p, alpha);
            out.push_str("; ");
            write_list(out, z, alpha);
            out.push(')');
        }
    }
}

pub fn render_formula(f: &Formula, alpha: &Alphabet) -> String {
    let mut s = String::new();
    write_formula(&mut s, f, alpha);
    s
}

fn write_block(out: &mut String, b: &Block, alpha: &Alphabet) {
    out.push_str("{ ");
    write_list(out, &b.described, alpha);
    if !b.min.is_empty() {
        out.push_str("; min ");
        write_list(out, &b.min, alpha);
    }
    if !b.max.is_empty() {
        out.push_str("; max ");
        write_list(out, &b.max, alpha);
    }
    out.push_str(if b.described.is_empty() && !b.is_extended() {
        ": "
    } else {
        " : "
    });
    for (i, c) in b.children.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        match c {
            Child::Formula(f) => write_formula(out, f, alpha),
            Child::Block(inner) => write_block(out, inner, alpha),
        }
    }
    out.push_str(" }");
}

pub fn render_block(b: &Block, alpha: &Alphabet) -> String {
    let mut s = String::new();
    write_block(&mut s, b, alpha);
    s
}

/// One `ab` declaration line, then one top-level block per line.
pub fn render_nat(t: &Nat) -> String {
    let mut s = String::from("ab");
    for a in t.alphabet.ab_atoms() {
        s.push(' ');
        s.push_str(t.alphabet.name(a));
    }
    s.push_str(";\n");
    for b in &t.blocks {
        write_block(&mut s, b, &t.alphabet);
        s.push('\n');
    }
    s
}

/// Model literal: comma-separated true atoms in alphabet order.
pub fn render_model(atoms: &[Atom], alpha: &Alphabet) -> String {
    let mut v = atoms.to_vec();
    v.sort_unstable();
    alpha.names(&v).join(",")
}
