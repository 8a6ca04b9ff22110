mod common;

use common::*;
use nestcirc::semantics::*;
use nestcirc::syntax::*;
use proptest::prelude::*;

fn lc(text: &str) -> (Formula, Alphabet) {
    parse_lcirc_new(text).unwrap()
}

fn model_names(models: &[Interp], alpha: &Alphabet) -> Vec<String> {
    models
        .iter()
        .map(|m| render_model(&m.true_atoms(), alpha))
        .collect()
}

fn interp(alpha: &Alphabet, names: &[&str]) -> Interp {
    let atoms: Vec<Atom> = names.iter().map(|n| alpha.get(n).unwrap()).collect();
    Interp::from_true(alpha.len(), &atoms)
}

#[test]
fn prefer_examples() {
    let mut alpha = Alphabet::new();
    let (a, b, q) = (alpha.intern("a"), alpha.intern("b"), alpha.intern("q"));
    let m = |v: &[Atom]| Interp::from_true(3, v);
    let ctx = PrefContext::new(vec![a], vec![b]).unwrap();
    assert_eq!(prefer(&m(&[]), &m(&[a]), &ctx).unwrap(), PrefOrder::Less);
    assert_eq!(prefer(&m(&[b]), &m(&[a]), &ctx).unwrap(), PrefOrder::Less);
    assert_eq!(prefer(&m(&[a]), &m(&[]), &ctx).unwrap(), PrefOrder::Greater);
    let ctx = PrefContext::new(vec![a], vec![]).unwrap();
    assert_eq!(
        prefer(&m(&[q]), &m(&[a]), &ctx).unwrap(),
        PrefOrder::Incomparable
    );
    assert_eq!(prefer(&m(&[a]), &m(&[a]), &ctx).unwrap(), PrefOrder::Equal);
    assert!(PrefContext::new(vec![a], vec![a]).is_err());
}

#[test]
fn substitution_folds() {
    let (f, a) = lc("a | b");
    assert_eq!(
        substitute(&f, &[(a.get("a").unwrap(), true)]),
        Formula::True
    );
    let (g, a) = lc("(p & q) | u");
    let (psi, _) = lc("p & q");
    assert_eq!(substitute(&g, &[(a.get("u").unwrap(), false)]), psi);
    let (h, a) = lc("circ(p | q; p; )");
    let q = a.get("q").unwrap();
    let expected = Formula::circ(
        Formula::Atom(a.get("p").unwrap()),
        vec![a.get("p").unwrap()],
        vec![],
    );
    assert_eq!(substitute(&h, &[(q, false)]), expected);
}

#[test]
fn simple_circumscription() {
    let (f, a) = lc("circ(a | b; a; b)");
    let models = brute_models_lcirc(&f, &a, Oracle::default()).unwrap();
    assert_eq!(model_names(&models, &a), ["b"]);
}

#[test]
fn nested_example() {
    let (f, a) = lc("circ(circ(a|b;a;b) | circ(b|c;b;c); a; c)");
    let models = brute_models_lcirc(&f, &a, Oracle::default()).unwrap();
    let mut names = model_names(&models, &a);
    names.sort();
    assert_eq!(names, ["b", "b,c", "c"]);
}

#[test]
fn circumscription_does_not_distribute_over_disjunction() {
    let mut a = Alphabet::new();
    let split = parse_lcirc("circ(a & b; a, b; ) | circ(b; a, b; )", &mut a).unwrap();
    let joined = parse_lcirc("circ((a & b) | b; a, b; )", &mut a).unwrap();
    let mut s = model_names(
        &brute_models_lcirc(&split, &a, Oracle::default()).unwrap(),
        &a,
    );
    s.sort();
    assert_eq!(s, ["a,b", "b"]);
    assert_eq!(
        model_names(
            &brute_models_lcirc(&joined, &a, Oracle::default()).unwrap(),
            &a
        ),
        ["b"]
    );
}

#[test]
fn canary_inner_block() {
    let t = parse_nat("ab ab; { f : b & ~ab -> f, c -> b, c }").unwrap();
    let models = brute_models_nat(&t, Oracle::default()).unwrap();
    assert_eq!(model_names(&models, &t.alphabet), ["f,b,c"]);
    let b = &t.blocks[0];
    let w = witness_extensions(
        b,
        &interp(&t.alphabet, &["b", "c", "f"]),
        &t.alphabet,
        Oracle::default(),
    )
    .unwrap();
    assert_eq!(w.len(), 1);
    assert!(!w[0].get(t.alphabet.get("ab").unwrap()));
    let none = witness_extensions(
        b,
        &interp(&t.alphabet, &["b", "c"]),
        &t.alphabet,
        Oracle::default(),
    )
    .unwrap();
    assert!(none.is_empty());
}

#[test]
fn shadowing_example_has_unique_empty_model() {
    let t = parse_nat("ab ab1, ab2; { z : { z : ab1 <-> ~ab2, ab1 <-> z }, ab1 <-> z }").unwrap();
    let models = brute_models_nat(&t, Oracle::default()).unwrap();
    assert_eq!(model_names(&models, &t.alphabet), [""]);
}

#[test]
fn void_minimization_block() {
    let t = parse_nat("{~: a -> b}").unwrap();
    let models = brute_models_nat(&t, Oracle::default()).unwrap();
    assert_eq!(model_names(&models, &t.alphabet), ["", "b", "a,b"]);
}

#[test]
fn block_without_ab() {
    let t = parse_nat("ab ab; { a : a | b }").unwrap();
    let alpha = &t.alphabet;
    for names in [&[][..], &["a"], &["b"], &["a", "b"]] {
        let m = interp(alpha, names);
        let w = witness_extensions(&t.blocks[0], &m, alpha, Oracle::default()).unwrap();
        let holds = m.get(alpha.get("a").unwrap()) || m.get(alpha.get("b").unwrap());
        assert_eq!(w.len(), usize::from(holds));
    }
}

#[test]
fn cap_is_enforced() {
    let (f, a) = lc("a | b | c");
    let err = brute_models_lcirc(&f, &a, Oracle::new(2)).unwrap_err();
    assert_eq!(err.exit_code(), 4);
}

/// With p floating, a model that leaves h & n false may set p either way:
/// the second-order definition only compares the P parts.
#[test]
fn hammer_and_nail_with_floating_p() {
    let (f, a) = lc("circ((h | n) & ((h & n) -> p); h, n; p)");
    let mut names = model_names(&brute_models_lcirc(&f, &a, Oracle::default()).unwrap(), &a);
    names.sort();
    assert_eq!(names, ["h", "h,p", "n", "n,p"]);
    let (g, a) = lc("circ((h | n) & ((h & n) -> p); h, n, p; )");
    let mut names = model_names(&brute_models_lcirc(&g, &a, Oracle::default()).unwrap(), &a);
    names.sort();
    assert_eq!(names, ["h", "n"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn table_oracle_matches_definition_lcirc(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let atoms: Vec<Atom> = (0..n as Atom).collect();
        let f = random_lcirc(&mut r, &atoms, 3, 3);
        let alpha = alphabet(n, 0);
        let got = masks(&brute_models_lcirc(&f, &alpha, Oracle::default()).unwrap());
        prop_assert_eq!(got, naive_models_lcirc(&f, n));
    }

    #[test]
    fn table_oracle_matches_definition_nat(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = NatShape { plain: 3, ab: 2, depth: 2, minmax: r.gen_bool(0.3), ..NatShape::default() };
        let t = random_nat(&mut r, &shape);
        let got = masks(&brute_models_nat(&t, Oracle::default()).unwrap());
        prop_assert_eq!(got, naive_models_nat(&t));
    }

    #[test]
    fn prefer_is_a_strict_order_modulo_z(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 4;
        let p: Vec<Atom> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        let z: Vec<Atom> = (0..n).filter(|a| !p.contains(a) && r.gen_bool(0.5)).collect();
        let ctx = PrefContext::new(p, z).unwrap();
        let ms: Vec<Interp> = (0..3).map(|_| Interp::from_mask(n as usize, r.gen_range(0..16))).collect();
        let o = |a: &Interp, b: &Interp| prefer(a, b, &ctx).unwrap();
        prop_assert_ne!(o(&ms[0], &ms[0]), PrefOrder::Less);
        let flip = |x: PrefOrder| match x {
            PrefOrder::Less => PrefOrder::Greater,
            PrefOrder::Greater => PrefOrder::Less,
            y => y,
        };
        prop_assert_eq!(o(&ms[0], &ms[1]), flip(o(&ms[1], &ms[0])));
        if o(&ms[0], &ms[1]) == PrefOrder::Less && o(&ms[1], &ms[2]) == PrefOrder::Less {
            prop_assert_eq!(o(&ms[0], &ms[2]), PrefOrder::Less);
        }
    }
}
