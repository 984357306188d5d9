use super::*;

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn call(args: &[&str]) -> (Result<Status, CliError>, String) {
    let cli = Cli::try_parse_from(std::iter::once("virtres").chain(args.iter().copied())).unwrap();
    let mut buf = Vec::new();
    let r = run(&cli.command, &mut buf);
    (r, String::from_utf8(buf).unwrap())
}

#[test]
fn res_json_has_the_curve_totals() {
    let curve = fixture_path("curve.vr");
    let (r, out) = call(&["res", "--ideal", &curve, "--json"]);
    assert_eq!(r.unwrap(), 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["betti"]["totals"], serde_json::json!([1, 8, 12, 6, 1]));
    assert_eq!(v["length"], 4);
    // the text rendering reports the same totals
    let (_, text) = call(&["betti", "--ideal", &curve]);
    assert!(text.contains("totals: [1, 8, 12, 6, 1]"), "{text}");
}

#[test]
fn winnow_and_pair_agree_on_the_curve() {
    let curve = fixture_path("curve.vr");
    let (_, a) = call(&["winnow", "--ideal", &curve, "--degree", "2,1", "--json"]);
    let (_, b) = call(&["virtual-of-pair", "--ideal", &curve, "--degree", "2,1", "--json", "--verify"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["betti"]["totals"], serde_json::json!([1, 4, 3]));
}

#[test]
fn exit_codes_follow_the_checks() {
    let curve = fixture_path("curve.vr");
    let planes = fixture_path("two_planes.vr");
    assert_eq!(call(&["is-virtual", "--ideal", &curve, "--degree", "2,1"]).0.unwrap(), 0);
    // winnowing at (-1,-1) drops F_2 and F_3
    assert_eq!(call(&["is-virtual", "--ideal", &planes, "--degree", "-1,-1"]).0.unwrap(), 1);
    let (r, out) = call(&["reg-check", "--ideal", &curve, "--degree", "2,1", "--window", "-2,-2:5,5"]);
    assert_eq!(r.unwrap(), 1, "{out}");
    assert!(out.contains("H^2_B(M)_(2,0) has dimension 2"), "{out}");
    assert_eq!(call(&["reg-check", "--ideal", &curve, "--degree", "2,2", "--window", "-2,-2:5,5"]).0.unwrap(), 0);
    assert_eq!(call(&["hilbert-burch", "--ideal", &curve, "--degree", "2,1"]).0.unwrap(), 0);
}

#[test]
fn input_errors() {
    let curve = fixture_path("curve.vr");
    assert!(matches!(call(&["fixtures", "nonexistent"]).0, Err(CliError::UnknownFixture(_))));
    assert_eq!(main_with_args(["virtres", "fixtures", "nonexistent"]), 2);
    assert_eq!(main_with_args(["virtres", "res"]), 2);
    assert!(matches!(call(&["res", "--ideal", "/nonexistent.vr"]).0, Err(CliError::Io { .. })));
    assert!(matches!(
        call(&["winnow", "--ideal", &curve, "--degree", "1,2,3"]).0,
        Err(CliError::Flag(ParseError::DegreeLength { expected: 2, got: 3, .. }))
    ));
    let dir = std::env::temp_dir().join(format!("virtres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.vr");
    std::fs::write(&empty, "ring P(1,1) char 32003\n").unwrap();
    let (r, _) = call(&["res", "--ideal", empty.to_str().unwrap()]);
    assert_eq!(r.unwrap_err().to_string(), "nothing to resolve: no ideal given");
    std::fs::write(&empty, "ring P(1,1) char 32003\nideal I =\n").unwrap();
    let (r, _) = call(&["betti", "--ideal", empty.to_str().unwrap()]);
    assert_eq!(r.unwrap_err().to_string(), "nothing to resolve: no ideal given");
    let bad = dir.join("bad.vr");
    std::fs::write(&bad, "ring P(1,1) char 32003\nideal I = x10 + x20\n").unwrap();
    assert!(matches!(call(&["res", "--ideal", bad.to_str().unwrap()]).0, Err(CliError::Parse { .. })));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn points_output_is_reproducible() {
    let args = ["points", "--space", "1,1", "--count", "5", "--seed", "11", "--koszul"];
    let (r, a) = call(&args);
    assert_eq!(r.unwrap(), 0);
    assert!(a.starts_with("# seed 11\n"), "{a}");
    assert_eq!(a, call(&args).1);
    assert!(a.contains("virtual: yes"), "{a}");
}

#[test]
fn saturate_and_truncate() {
    let curve = fixture_path("curve.vr");
    let (_, out) = call(&["saturate", "--ideal", &curve]);
    assert!(out.starts_with("already saturated"), "{out}");
    let (_, out) = call(&["truncate", "--ideal", &curve, "--degree", "3,1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(!v["generators"].as_array().unwrap().is_empty());
}

#[test]
fn quick_fixtures_pass_in_order() {
    for name in ["curve", "two-planes", "koszul", "del-pezzo", "hirzebruch", "surface"] {
        let report = fixtures::run_fixtures(Some(name), 1).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn fixture_runner_keeps_suite_order_with_threads() {
    let names: Vec<&str> = fixtures::FIXTURES.iter().map(|f| f.name).collect();
    assert_eq!(names.len(), 8);
    let report = fixtures::run_fixtures(Some("hirzebruch"), 4).unwrap();
    assert_eq!(report.results.len(), 1);
    assert!(report.to_string().starts_with("PASS hirzebruch"));
}
