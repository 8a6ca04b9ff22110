mod common;

use common::*;
use nestcirc::encodings::*;
use nestcirc::engine::{Engine, Strategy, Theory};
use nestcirc::semantics::brute_models_nat;
use nestcirc::syntax::*;

fn brute() -> Engine {
    Engine {
        cap: 24,
        ..Engine::new(Strategy::Brute)
    }
}

#[test]
fn forall_exists_contract() {
    let mut r = rng(11);
    for _ in 0..150 {
        let nv = r.gen_range(2..=5);
        let np = r.gen_range(0..=1);
        let phi = random_qbf(&mut r, 2, nv, np, false);
        let inst = encode_forall_exists(&phi).unwrap();
        let t = Theory::Lcirc {
            formula: inst.formula,
            alphabet: inst.alphabet,
        };
        assert_eq!(
            brute().infer(&t, &inst.query).unwrap(),
            expected_forall_exists(&phi)
        );
    }
}

#[test]
fn inference_contract() {
    let mut r = rng(12);
    for _ in 0..150 {
        let n = r.gen_range(1..=3);
        let nv = r.gen_range(n..=5);
        let np = r.gen_range(0..=1);
        let phi = random_qbf(&mut r, n, nv, np, false);
        let inst = encode_inference_nat(&phi).unwrap();
        assert_eq!(inst.nat.nesting_depth(), n.max(2) - 2);
        let t = Theory::Nat(inst.nat);
        assert_eq!(
            brute().infer(&t, &inst.query).unwrap(),
            expected_inference(&phi),
            "{phi:?}"
        );
    }
}

#[test]
fn mc_contract() {
    let mut r = rng(13);
    for _ in 0..150 {
        let n = r.gen_range(2..=3);
        let nv = r.gen_range(n..=5);
        let empty = r.gen_bool(0.3);
        let phi = random_qbf(&mut r, n, nv, 0, empty);
        let inst = encode_mc_nat(&phi).unwrap();
        assert_eq!(inst.nat.nesting_depth(), n - 2);
        let t = Theory::Nat(inst.nat);
        assert_eq!(
            brute().check_model(&t, &inst.model).unwrap(),
            expected_mc(&phi),
            "{phi:?}"
        );
    }
}

#[test]
fn xhorn_contract() {
    let mut r = rng(14);
    for _ in 0..60 {
        let n = r.gen_range(1..=3);
        let nv = r.gen_range(n..=4);
        let phi = random_qbf(&mut r, n, nv, 0, false);
        let inst = encode_xhorn(&phi).unwrap();
        assert_eq!(inst.nat.nesting_depth(), n.max(2) - 1);
        let t = Theory::Nat(inst.nat);
        assert_eq!(
            brute().infer(&t, &inst.query).unwrap(),
            expected_inference(&phi),
            "{phi:?}"
        );
    }
}

fn qbf(text: &str) -> PrenexQbf {
    PrenexQbf::parse(text).unwrap()
}

fn infer_nat(inst: &NatInstance) -> bool {
    brute()
        .infer(&Theory::Nat(inst.nat.clone()), &inst.query)
        .unwrap()
}

#[test]
fn forall_exists_examples() {
    for (text, want) in [
        ("forall x; exists y; matrix x <-> y", true),
        ("forall x; exists y; matrix x & y", false),
        ("forall x; exists y; matrix x | ~x", true),
    ] {
        let phi = qbf(text);
        let inst = encode_forall_exists(&phi).unwrap();
        let t = Theory::Lcirc {
            formula: inst.formula,
            alphabet: inst.alphabet,
        };
        assert_eq!(brute().infer(&t, &inst.query).unwrap(), want, "{text}");
        assert_eq!(expected_forall_exists(&phi), want);
    }
    assert!(encode_forall_exists(&qbf("exists y; matrix y")).is_err());
}

#[test]
fn inference_examples() {
    let t = encode_inference_nat(&qbf("forall x; exists y; matrix x <-> y")).unwrap();
    assert_eq!(render_formula(&t.query, &t.nat.alphabet), "~u");
    assert!(infer_nat(&t));
    let f = encode_inference_nat(&qbf("forall x; exists y; matrix x & y")).unwrap();
    assert!(!infer_nat(&f));
    let one = encode_inference_nat(&qbf("exists x; matrix x")).unwrap();
    assert_eq!(render_formula(&one.query, &one.nat.alphabet), "u");
    assert!(!infer_nat(&one));
}

#[test]
fn mc_with_empty_outer_block_drops_guess_formulas() {
    let phi = qbf("forall ; exists y; matrix y");
    let inst = encode_mc_nat(&phi).unwrap();
    let text = render_nat(&inst.nat);
    assert!(!text.contains("ab'_"), "{text}");
    let t = Theory::Nat(inst.nat);
    assert_eq!(
        brute().check_model(&t, &inst.model).unwrap(),
        expected_mc(&phi)
    );
}

#[test]
fn mc_example() {
    let phi = qbf("forall x; exists y; matrix x <-> y");
    let inst = encode_mc_nat(&phi).unwrap();
    // One inner block: Φ is true and n is odd, so M is not a model.
    assert!(!expected_mc(&phi));
    let t = Theory::Nat(inst.nat);
    assert!(!brute().check_model(&t, &inst.model).unwrap());
}

#[test]
fn xhorn_output_is_extended_horn() {
    let mut r = rng(15);
    for _ in 0..40 {
        let n = r.gen_range(1..=4);
        let nv = r.gen_range(n..=6);
        let phi = random_qbf(&mut r, n, nv, 0, false);
        let inst = encode_xhorn(&phi).unwrap();
        let v = validate(&inst.nat);
        assert!(v.is_horn);
        assert!(v.uses_minmax);
        let text = render_nat(&inst.nat);
        assert_eq!(render_nat(&parse_nat(&text).unwrap()), text);
    }
    assert!(encode_xhorn(&qbf("forall x; exists y; matrix ~(x & y) | (x & y)")).is_err());
}

#[test]
fn xhorn_dualizes_positive_literals() {
    let inst = encode_xhorn(&qbf("exists x, y; matrix x | ~y")).unwrap();
    let text = render_nat(&inst.nat);
    assert!(text.contains("~y | ~x' | u"), "{text}");
}

#[test]
fn inequivalence_block_has_two_model_families() {
    let mut alpha = Alphabet::new();
    let p = alpha.intern("p");
    let pp = alpha.intern("p'");
    let b = Block {
        described: vec![],
        min: vec![],
        max: vec![p, pp],
        children: vec![Child::Formula(Formula::or2(
            Formula::not(Formula::Atom(p)),
            Formula::not(Formula::Atom(pp)),
        ))],
    };
    let t = Nat::new(alpha.clone(), vec![b]);
    let models = brute_models_nat(&t, nestcirc::semantics::Oracle::default()).unwrap();
    let got: Vec<Vec<String>> = models
        .iter()
        .map(|m| alpha.names(&m.true_atoms()))
        .collect();
    assert_eq!(got, [vec!["p'".to_string()], vec!["p".to_string()]]);
}

#[test]
fn xhorn_agrees_with_plain_tower() {
    let mut r = rng(16);
    for _ in 0..40 {
        let nv = r.gen_range(2..=4);
        let phi = random_qbf(&mut r, 2, nv, 0, false);
        let plain = encode_inference_nat(&phi).unwrap();
        let hat = encode_xhorn(&phi).unwrap();
        assert_eq!(infer_nat(&plain), infer_nat(&hat));
        let n = plain.nat.alphabet.non_ab_atoms();
        let project = |t: &Nat, names: &[String]| {
            let mut v: Vec<Vec<String>> = brute_models_nat(t, nestcirc::semantics::Oracle::new(24))
                .unwrap()
                .iter()
                .map(|m| {
                    let on = t.alphabet.names(&m.true_atoms());
                    names.iter().filter(|x| on.contains(x)).cloned().collect()
                })
                .collect();
            v.sort();
            v.dedup();
            v
        };
        let names = plain.nat.alphabet.names(&n);
        assert_eq!(
            project(&plain.nat, &names),
            project(&hat.nat, &names),
            "{phi:?}"
        );
    }
}
