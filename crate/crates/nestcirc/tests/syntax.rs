use nestcirc::syntax::*;
use nestcirc::Error;
use proptest::prelude::*;

fn lc(text: &str) -> (Formula, Alphabet) {
    parse_lcirc_new(text).unwrap()
}

#[test]
fn circ_atom_maps_to_p_and_z() {
    let (f, a) = lc("circ(a|b; a; b)");
    let (x, y) = (a.get("a").unwrap(), a.get("b").unwrap());
    assert_eq!(
        f,
        Formula::circ(
            Formula::or2(Formula::Atom(x), Formula::Atom(y)),
            vec![x],
            vec![y]
        )
    );
}

#[test]
fn nested_example_has_two_levels() {
    let (f, _) = lc("circ(circ(a|b;a;b) | circ(b|c;b;c); a; c)");
    assert_eq!(f.nesting_depth(), 2);
    let Formula::Circ(inner, p, z) = &f else {
        panic!("expected a circ atom")
    };
    assert_eq!((p.len(), z.len()), (1, 1));
    assert!(matches!(&**inner, Formula::Or(v) if v.len() == 2));
}

#[test]
fn overlapping_p_and_z_rejected() {
    let err = parse_lcirc_new("circ(a; a; a)").unwrap_err();
    assert!(matches!(err, Error::Semantic(_)), "{err:?}");
}

#[test]
fn uppercase_circ_accepted() {
    assert_eq!(lc("CIRC(a; a; )").0, lc("circ(a; a; )").0);
}

#[test]
fn parse_errors_carry_positions() {
    match parse_lcirc_new("a &\n  & b").unwrap_err() {
        Error::Parse { line, col, .. } => assert_eq!((line, col), (2, 3)),
        e => panic!("unexpected {e:?}"),
    }
    assert_eq!(parse_lcirc_new("(a").unwrap_err().exit_code(), 2);
}

#[test]
fn precedence() {
    let (f, a) = lc("~a & b | c -> d <-> e");
    let at = |n: &str| Formula::Atom(a.get(n).unwrap());
    let expected = Formula::iff(
        Formula::implies(
            Formula::or2(Formula::and2(Formula::not(at("a")), at("b")), at("c")),
            at("d"),
        ),
        at("e"),
    );
    assert_eq!(f, expected);
    let (g, a) = lc("a -> b -> c");
    let at = |n: &str| Formula::Atom(a.get(n).unwrap());
    assert_eq!(
        g,
        Formula::implies(at("a"), Formula::implies(at("b"), at("c")))
    );
}

#[test]
fn canary_structure() {
    let t = parse_nat("ab ab; { f : f -> ab, { f : b & ~ab -> f, c -> b, c } }").unwrap();
    assert_eq!(t.blocks.len(), 1);
    let b = &t.blocks[0];
    assert_eq!(b.children.len(), 2);
    assert!(matches!(b.children[0], Child::Formula(_)));
    assert!(matches!(b.children[1], Child::Block(_)));
    assert_eq!(t.nesting_depth(), 1);
    assert_eq!(t.block_count(), 2);
    assert!(t.alphabet.is_ab(t.alphabet.get("ab").unwrap()));
}

#[test]
fn bare_formula_desugars_to_block() {
    let t = parse_nat("ab ab; p & q").unwrap();
    assert_eq!(t.blocks.len(), 1);
    assert!(t.blocks[0].described.is_empty());
    assert_eq!(t.blocks[0].children.len(), 1);
    assert_eq!(t.nesting_depth(), 0);
}

#[test]
fn tilde_header_and_missing_ab_declaration() {
    let t = parse_nat("{~: a & ~a}").unwrap();
    assert!(t.blocks[0].described.is_empty());
    assert!(t.alphabet.ab_atoms().is_empty());
}

#[test]
fn described_ab_letter_rejected() {
    assert!(matches!(
        parse_nat("ab a; { a : a }").unwrap_err(),
        Error::Semantic(_)
    ));
}

#[test]
fn circ_inside_nat_rejected() {
    assert!(parse_nat("ab ab; { a : circ(a; a; ) }").is_err());
}

#[test]
fn render_simple() {
    let (f, a) = lc("a&b");
    assert_eq!(render_formula(&f, &a), "a & b");
}

#[test]
fn canary_round_trip() {
    let text = "ab ab; { f : f -> ab, { f : b & ~ab -> f, c -> b, c } }";
    let t = parse_nat(text).unwrap();
    let again = parse_nat(&render_nat(&t)).unwrap();
    assert_eq!(again.blocks, t.blocks);
}

#[test]
fn render_min_max_sections() {
    let t = parse_nat("ab ab; { p; min q; max r : p | q | r }").unwrap();
    let s = render_nat(&t);
    assert!(s.contains("; min q"), "{s}");
    assert!(s.contains("; max r"), "{s}");
    assert_eq!(parse_nat(&s).unwrap().blocks, t.blocks);
}

#[test]
fn nesting_depths() {
    assert_eq!(lc("a & ~b").0.nesting_depth(), 0);
    assert_eq!(
        lc("circ(circ(a|b;a;b) | circ(b|c;b;c); a; c)")
            .0
            .nesting_depth(),
        2
    );
}

#[test]
fn horn_classification() {
    let canary = parse_nat("ab ab; { f : f -> ab, { f : b & ~ab -> f, c -> b, c } }").unwrap();
    assert!(!validate(&canary).is_horn);
    let simplified = parse_nat("ab ab; { f : f -> ab, { f : b -> f, c -> b, c } }").unwrap();
    let r = validate(&simplified);
    assert!(r.is_horn);
    assert!(r.has_fixed_letters);
    let names = |v: &[Atom]| {
        let mut n = simplified.alphabet.names(v);
        n.sort();
        n
    };
    assert_eq!(names(&r.fixed[0].fixed), ["b", "c"]);
    let all = parse_nat("ab ab; { a, b : a -> b, { a, b : b } }").unwrap();
    assert!(!validate(&all).has_fixed_letters);
}

#[test]
fn model_literals() {
    let (_, a) = lc("a | b | c");
    let m = parse_model("c, a", &a).unwrap();
    assert_eq!(render_model(&m, &a), "a,c");
    assert!(parse_model("d", &a).is_err());
}

#[test]
fn fresh_names_avoid_collisions() {
    let mut a = Alphabet::new();
    a.intern("u");
    let u2 = a.fresh("u", false);
    assert_eq!(a.name(u2), "u'");
    let p = a.fresh_primed("u");
    assert_eq!(a.name(p), "u'1");
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        (0u32..5).prop_map(Formula::Atom)
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (
                inner,
                prop::sample::subsequence(vec![0u32, 1, 2, 3, 4], 0..5),
                any::<u8>()
            )
                .prop_map(|(g, pz, s)| {
                    let (p, z): (Vec<u32>, Vec<u32>) =
                        pz.into_iter().partition(|a| s >> a & 1 == 1);
                    Formula::circ(g, p, z)
                }),
        ]
    })
}

fn five() -> Alphabet {
    let mut a = Alphabet::new();
    for n in ["a", "b", "c", "d", "e"] {
        a.intern(n);
    }
    a
}

/// Flattens nested n-ary operators so that structurally equivalent
/// associations compare equal.
fn normalize(f: &Formula) -> Formula {
    match f {
        Formula::And(gs) => Formula::And(
            gs.iter()
                .map(normalize)
                .flat_map(|g| match g {
                    Formula::And(hs) => hs,
                    g => vec![g],
                })
                .collect(),
        ),
        Formula::Or(gs) => Formula::Or(
            gs.iter()
                .map(normalize)
                .flat_map(|g| match g {
                    Formula::Or(hs) => hs,
                    g => vec![g],
                })
                .collect(),
        ),
        Formula::Not(g) => Formula::not(normalize(g)),
        Formula::Implies(a, b) => Formula::implies(normalize(a), normalize(b)),
        Formula::Iff(a, b) => Formula::iff(normalize(a), normalize(b)),
        Formula::Circ(g, p, z) => Formula::circ(normalize(g), p.clone(), z.clone()),
        other => other.clone(),
    }
}

proptest! {
    #[test]
    fn render_parse_round_trip(f in formula_strategy()) {
        let mut alpha = five();
        alpha.closed = true;
        let text = render_formula(&f, &alpha);
        let g = parse_lcirc(&text, &mut alpha).unwrap();
        prop_assert_eq!(normalize(&g), normalize(&f), "{}", text);
        prop_assert_eq!(render_formula(&g, &alpha), text);
    }
}
