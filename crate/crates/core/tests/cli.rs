use serde_json::Value;

use qlattice::cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("qlattice").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn construct_emits_full_basis() {
    let (code, out, _) = run(&["construct", "--q", "2", "--n", "3", "--verify", "full"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    let vectors: usize = doc["chains"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["vectors"].as_array().unwrap().len())
        .sum();
    assert_eq!(vectors, 16);
}

#[test]
fn non_prime_q_is_a_usage_error() {
    let (code, out, err) = run(&["construct", "--q", "4", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("q must be prime"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["construct", "--q", "2"]).0, 2);
    assert_eq!(run(&["construct", "--q", "2", "--n", "2", "--bogus"]).0, 2);
    assert_eq!(run(&["scheme", "--q", "2", "--n", "4", "--m", "3"]).0, 2);
    assert_eq!(run(&["trees", "--q", "2", "--n", "3", "--m", "2"]).0, 2);
    assert_eq!(
        run(&["construct", "--q", "2", "--n", "2", "--verify", "sometimes"]).0,
        2
    );
    assert_eq!(run(&["verify", "/nonexistent/basis.json"]).0, 2);
    assert_eq!(
        run(&["--threads", "0", "identities", "--q", "2", "--n", "3"]).0,
        2
    );
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn trees_with_oracle() {
    let (code, out, _) = run(&["trees", "--q", "2", "--n", "3", "--m", "1", "--oracle"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["formula"], "117649");
    assert_eq!(doc["oracle"], "117649");
    assert_eq!(doc["match"], true);
    assert_eq!(doc["identity"]["holds"], true);

    let (code, out, _) = run(&["trees", "--q", "2", "--n", "4", "--m", "2"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert!(doc.get("oracle").is_none());
    assert_eq!(
        doc["formula"],
        "8122010029745217295127579546475640869140625"
    );
}

#[test]
fn scheme_and_johnson() {
    let (code, out, _) = run(&["scheme", "--q", "2", "--n", "3", "--m", "1"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(
        doc["eigentable"][0]["eigenvalues"],
        serde_json::json!(["1", "6"])
    );
    assert_eq!(
        doc["eigentable"][1]["eigenvalues"],
        serde_json::json!(["1", "-1"])
    );
    assert_eq!(doc["match"], true);

    let (code, out, _) = run(&["johnson", "--n", "4", "--m", "1"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["oracle"], "64");
    assert_eq!(doc["identity"]["right"], "256");
}

#[test]
fn decompose_and_identities_report() {
    let (code, out, _) = run(&["decompose", "--q", "3", "--n", "2"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["pass"], true);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["counterexample"].is_null()));

    let (code, out, _) = run(&["--threads", "1", "identities", "--q", "5", "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn output_is_deterministic_and_verifiable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let (code, out, _) = run(&[
            "construct",
            "--q",
            "3",
            "--n",
            "3",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    assert_eq!(run(&["verify", a.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["verify", "--mode", "spot", a.to_str().unwrap()]).0, 0);

    let mut doc = json(std::str::from_utf8(&bytes).unwrap());
    let coeff = &mut doc["chains"][2]["vectors"][0]["terms"][1]["coeff"];
    let m = coeff["m"].as_i64().unwrap();
    coeff["m"] = Value::from(m - 1);
    std::fs::write(&a, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, out, _) = run(&["verify", a.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["pass"], false);

    std::fs::write(&a, "{\"q\": 3}").unwrap();
    assert_eq!(run(&["verify", a.to_str().unwrap()]).0, 2);
}
