use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_circuit-feas"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str], stdin: &str) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full, stdin);
    assert_eq!(code, 0, "stderr: {err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "circuit-feas/1");
    v
}

#[test]
fn feas_positive_examples() {
    let cases = [
        (
            "1 - 2*x1 + x1^2 + x2",
            false,
            "CircuitProductEqualDegenerate",
        ),
        ("1 - 3*x1 + x1^2 + x2", true, "CircuitProductStrict"),
        ("1 - 2*x1 + x1^2", true, "CircuitDegeneratePoint"),
        ("1 + x1 + x2", false, "AllSameSign"),
    ];
    for (p, feasible, rule) in cases {
        let v = run_json(&["feas", "--domain", "positive"], p);
        assert_eq!(v["feasible"], feasible, "{p}");
        assert_eq!(v["rule"], rule, "{p}");
    }
}

#[test]
fn text_and_json_agree() {
    let polys = [
        "1 - 2*x1 + x1^2 + x2",
        "1 + 7*x1 - 43*x1^99",
        "x1^2 + x2^2 + 1",
        "1 - x1*x2 + x1^2",
    ];
    for p in polys {
        for domain in ["positive", "nonzero", "real"] {
            let (code, text, _) = run(&["feas", "--domain", domain], p);
            assert_eq!(code, 0);
            let v = run_json(&["feas", "--domain", domain], p);
            let word = if v["feasible"] == true {
                "feasible"
            } else {
                "infeasible"
            };
            assert!(
                text.starts_with(&format!("{word} over the {domain} domain")),
                "{p} {domain}: {text}"
            );
            assert!(text.contains(&format!("rule: {}", v["rule"].as_str().unwrap())));
        }
    }
}

#[test]
fn json_input_matches_text_input() {
    let text = run_json(&["feas"], "1 - 3*x1 + x1^2 + x2");
    let json_in = r#"{"n":2,"terms":[{"c":"1","a":[0,0]},{"c":"-3","a":[1,0]},{"c":"1","a":[2,0]},{"c":"1","a":[0,1]}]}"#;
    let v = run_json(&["--format", "json", "feas"], json_in);
    assert_eq!(text, v);
}

#[test]
fn oracle_flag_reports_consistency() {
    let v = run_json(&["feas", "--oracle"], "1 - 3*x1 + x1^2");
    assert_eq!(v["oracle"]["consistent"], true);
    assert_eq!(v["oracle"]["outcome"], "FeasibleWitness");
    let v = run_json(&["oracle-check"], "2 + x1 + x2");
    assert_eq!(v["oracle"]["outcome"], "InfeasibleExhausted");
    assert_eq!(v["consistent"], true);
}

#[test]
fn real_trinomial_through_reduction() {
    let p = "1 + 7*x1^2*x2*x3^7*x4^3 - 43*x1^198*x2^99*x3^693*x4^297";
    let v = run_json(&["feas", "--domain", "real"], p);
    assert_eq!(v["feasible"], true);
    let r = run_json(&["reduce"], p);
    assert_eq!(r["d"], 1);
    let exps: Vec<i64> = r["g"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["a"][0].as_i64().unwrap())
        .collect();
    assert_eq!(exps, vec![0, 1, 99]);
}

#[test]
fn classify_and_disc() {
    let v = run_json(&["classify"], "1 - 2*x1 + x1^2");
    assert_eq!(v["kind"], "NonDegenerateCircuit");
    assert_eq!(v["b"], serde_json::json!(["1", "-2", "1"]));
    let v = run_json(&["disc"], "1 - 2*x1 + x1^2");
    assert_eq!(v["vanishes"], true);
    let v = run_json(&["disc", "--mode", "sign"], "1 - 3*x1 + x1^2");
    assert_ne!(v["sign"], "Zero");
}

#[test]
fn sat2poly_targets() {
    let cnf = "c one clause\np cnf 3 1\n1 -2 3 0\n";
    for target in ["gb", "hb", "fb"] {
        let v = run_json(&["sat2poly", "--target", target], cnf);
        assert!(v["polynomial"]["n"].as_u64().unwrap() >= 3, "{target}");
    }
    let v = run_json(&["sat2poly", "--target", "FB"], cnf);
    assert_eq!(v["polynomials"].as_array().unwrap().len(), 5);
    // Output of --json can be fed back as input.
    let (code, out, _) = run(&["--json", "sat2poly", "--target", "gb"], cnf);
    assert_eq!(code, 0);
    let (code, _, err) = run(&["--format", "json", "feas"], &out);
    assert!(code == 0 || code == 3, "{err}");
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["feas"], "1 + * x1");
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["feas", "--domain", "bogus"], "1").0, 2);
    assert_eq!(run(&["feas"], "1 + x1 + x2 + x3 + x1*x2 + x1*x3").0, 3);
    let (code, _, _) = run(
        &["--cap-M", "2", "sat2poly", "--epsilon", "1/4"],
        "p cnf 3 1\n1 2 3 0\n",
    );
    assert_eq!(code, 3);
    assert_eq!(run(&["sat2poly"], "p cnf 3 1\n1 1 2 0\n").0, 2);
    assert_eq!(run(&["--help"], "").0, 0);
}

#[test]
fn jobs_flag_gives_same_answer() {
    let p = "1 - x1^3*x2 + x2^2 - x1*x2^3";
    let a = run_json(&["feas", "--domain", "real"], p);
    let b = run_json(&["--jobs", "3", "feas", "--domain", "real"], p);
    assert_eq!(a, b);
}
