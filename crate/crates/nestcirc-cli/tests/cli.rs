use std::path::PathBuf;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

/// Runs the CLI in-process; returns exit code, stdout and stderr.
fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nestcirc").chain(args.iter().copied());
    let code = nestcirc_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn check_answers_and_exit_codes() {
    let f = data("nested.lc");
    assert_eq!(
        cli(&["check", "-m", "b", &f]),
        (0, "model\n".into(), String::new())
    );
    assert_eq!(cli(&["check", "-m", "a", &f]).0, 1);
    let c = data("canary.nat");
    for s in ["auto", "qbf", "brute"] {
        assert_eq!(
            cli(&["check", "--strategy", s, "-m", "b,c,f", &c]).1,
            "model\n"
        );
    }
    let (code, _, err) = cli(&["check", "-m", "zz", &f]);
    assert_eq!(code, 3);
    assert!(err.contains("zz"), "{err}");
}

#[test]
fn infer_and_sat() {
    assert_eq!(
        cli(&["infer", "-q", "~a", &data("nested.lc")]),
        (0, "entailed\n".into(), String::new())
    );
    assert_eq!(
        cli(&["infer", "-q", "a", &data("nested.lc")]).1,
        "not entailed\n"
    );
    assert_eq!(
        cli(&["sat", &data("canary.nat")]),
        (0, "sat\n".into(), String::new())
    );
    assert_eq!(
        cli(&["sat", "--verify", &data("contradiction.nat")]),
        (1, "unsat\n".into(), String::new())
    );
    assert_eq!(cli(&["infer", "-q", "ab", &data("canary.nat")]).0, 3);
}

#[test]
fn strategy_horn_on_non_horn_input_is_a_semantic_error() {
    let (code, _, err) = cli(&["sat", "--strategy", "horn", &data("nested.lc")]);
    assert_eq!(code, 3);
    assert!(!err.is_empty());
}

#[test]
fn models_listing() {
    assert_eq!(
        cli(&["models", &data("ab.lc")]),
        (0, "{b}\n{a}\n{a,b}\n".into(), String::new())
    );
    assert_eq!(cli(&["models", &data("contradiction.nat")]).0, 1);
    assert_eq!(cli(&["models", "--cap", "1", &data("ab.lc")]).0, 4);
}

#[test]
fn parse_errors_and_usage() {
    let (code, _, err) = cli(&["sat", &data("broken.nat")]);
    assert_eq!(code, 2);
    assert!(err.contains("2:1"), "{err}");
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["check", &data("ab.lc")]).0, 2);
    assert_eq!(cli(&["sat", &data("missing.nat")]).0, 3);
}

#[test]
fn flatten_emits_dimacs_and_least_model() {
    let (code, out, _) = cli(&["flatten", &data("horn.nat")]);
    assert_eq!(code, 0);
    assert!(out.contains("p cnf 3 3\n2 0\n-3 2 0\n3 0\n"), "{out}");
    assert!(out.ends_with("c least model {p,q}\n"), "{out}");
    assert_eq!(cli(&["flatten", &data("canary.nat")]).0, 3);
}

#[test]
fn to_qdimacs_closures() {
    let (_, e, _) = cli(&["to-qdimacs", &data("ab.lc")]);
    assert!(e.contains("p cnf 2 1\ne 1 2 0\n1 2 0\n"), "{e}");
    let (_, a, _) = cli(&["to-qdimacs", "--closure", "forall", &data("ab.lc")]);
    assert!(a.contains("a 1 2 0"), "{a}");
    assert_eq!(
        cli(&["to-qdimacs", &data("canary.nat")]),
        cli(&["to-qdimacs", &data("canary.nat")])
    );
}

#[test]
fn rewriting_commands() {
    let (_, out, _) = cli(&["sigma-star", &data("canary.nat")]);
    assert!(out.ends_with("# introduced: ab@0 ab@0.1\n"), "{out}");
    let (_, out, _) = cli(&["eliminate-fixed", &data("fixed.lc")]);
    assert_eq!(
        out,
        "circ((q -> p) & (q <-> ~q'); p, q, q'; )\n# introduced: q'\n"
    );
    let (_, out, _) = cli(&["eliminate-fixed", &data("canary.nat")]);
    assert!(out.contains("# introduced: ab_b ab'_b ab_c ab'_c"), "{out}");
    let (_, out, _) = cli(&["lower-minmax", &data("diagnosis.nat")]);
    assert!(
        out.contains("(~ab_ok1@0 -> ok1) & (~ab_ok2@0 -> ok2)"),
        "{out}"
    );
    let (_, out, _) = cli(&["prioritize", "--levels", "a; b", &data("ab.lc")]);
    assert_eq!(out, "circ(circ(a | b; a; b); b; )\n");
}

#[test]
fn stats_report() {
    let (code, out, _) = cli(&["stats", &data("canary.nat")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("kind: nat\nnd: 1\nblocks: 2\n"), "{out}");
}

#[test]
fn directory_batch() {
    let (code, out, _) = cli(&["sat", "--jobs", "2", &data("theories")]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].ends_with("canary.nat: sat"));
    assert!(lines[1].ends_with("contradiction.nat: unsat"));
    assert!(lines[2].ends_with("horn.nat: sat"));
    assert_eq!(code, 1);
}

#[test]
fn encode_writes_theories_and_manifest() {
    let dir = std::env::temp_dir().join(format!("nestcirc-encode-{}", std::process::id()));
    let out_dir = dir.to_string_lossy().into_owned();
    let (code, out, err) = cli(&["encode", "inf", &data("batch"), "-o", &out_dir]);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let theory = dir.join(row["theory"].as_str().unwrap());
        let path = theory.to_string_lossy().into_owned();
        let query = row["query"].as_str().unwrap();
        let (c, answer, _) = cli(&["infer", "--strategy", "brute", "-q", query, &path]);
        assert_eq!(
            c,
            if row["expected"].as_bool().unwrap() {
                0
            } else {
                1
            },
            "{row}"
        );
        assert!(!answer.is_empty());
    }
    let manifest = std::fs::read_to_string(dir.join("manifest.inf.jsonl")).unwrap();
    assert_eq!(manifest, out);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_runs() {
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_nestcirc"))
        .args(["check", "-m", "b", &data("nested.lc")])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&status.stdout), "model\n");
}
