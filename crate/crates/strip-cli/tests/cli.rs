use serde_json::Value;
use strip_cli::run_args;

fn strip(args: &[&str]) -> strip_cli::Outcome {
    run_args(std::iter::once("strip").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = strip(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn betti_table_and_json() {
    let out = strip(&["betti", "--n", "3", "--w", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("1  7"), "{}", out.stdout);

    let v = json(&["betti", "--n", "3", "--w", "3"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "betti");
    assert_eq!(v["passed"], true);
    assert_eq!(v["result"]["betti"], serde_json::json!([1, 3, 2]));
    assert!(v["meta"]["generated_at_unix"].is_u64());
}

#[test]
fn verify_scopes_pass() {
    for scope in ["boundary", "basis", "decomposition"] {
        let v = json(&["verify", "--scope", scope, "--n", "4", "--w", "2"]);
        assert_eq!(v["passed"], true, "{scope}: {v}");
    }
    let out = strip(&["verify", "--scope", "relations", "--w", "2", "--max-labels", "4"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("status: pass"));
}

#[test]
fn reduce_examples() {
    let out = strip(&["reduce", "--w", "2", "--expr", "W(1)|W(2)"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&["reduce", "--w", "3", "--expr", "W(1)|W(2,3)"]);
    assert_eq!(v["command"], "reduce");
    assert!(v["result"].is_object());
}

#[test]
fn two_wheel_averaged_filter_is_a_usage_error() {
    let out = strip(&["reduce", "--w", "2", "--expr", "AF(W(1),W(2))"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("W(1)|W(2)") || out.stderr.contains("W(2)|W(1)"), "{}", out.stderr);
}

#[test]
fn parse_errors_and_bad_arguments_exit_2() {
    assert_eq!(strip(&["reduce", "--w", "2", "--expr", "W(1"]).code, 2);
    assert_eq!(strip(&["betti", "--n", "3"]).code, 2);
    assert_eq!(strip(&["reduce", "--w", "3", "--expr", "W(1)", "--quotient", "5"]).code, 2);
}

#[test]
fn cap_refusal_exits_3() {
    let out = strip(&["--cap", "10", "betti", "--n", "6", "--w", "3"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("limit"));
}

#[test]
fn stability_parameters() {
    let v = json(&["stability", "--w", "4", "--k", "5"]);
    assert_eq!(v["passed"], true);
    let out = strip(&["stability", "--w", "4", "--order", "2", "--i", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("FIW(2)_4"), "{}", out.stdout);
}

#[test]
fn cached_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let run = || {
        let mut v = json(&["--cache-dir", cache, "betti", "--n", "4", "--w", "2"]);
        v.as_object_mut().unwrap().remove("meta");
        serde_json::to_string(&v).unwrap()
    };
    let cold = run();
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    assert_eq!(cold, run());
}
