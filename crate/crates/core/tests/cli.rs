use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistform"))
        .args(args)
        .env("TWISTFORM_THREADS", "2")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn bracket_examples() {
    let (code, out, _) = run(&["bracket", "--type", "A3", "--k", "2", "--m", "1", "x+[mu1;(0)]", "x-[mu1;(1)]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "h[mu1;(1)]");

    let (code, out, _) = run(&["bracket", "--type", "A3", "h[1;(0)]", "h[1;(5)]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "0");

    let (code, out, _) = run(&["--json", "bracket", "--type", "A3", "x+[mu1;(0)]", "x-[mu1;(1)]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], "h[mu1;(1)]");
}

#[test]
fn usage_errors() {
    let (code, _, err) = run(&["bracket", "--type", "A3", "x+[mu1;(0)", "h[1;(0)]"]);
    assert_eq!(code, 64);
    assert!(err.contains("parse error at 10"), "{err}");

    let (code, _, _) = run(&["bracket", "--type", "A3", "x+[mu7;(0)]", "h[1;(0)]"]);
    assert_eq!(code, 65);

    // no diagram automorphism of order 3 on D5
    let (code, _, _) = run(&["--type", "D5", "--k", "3", "roots"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&["verify", "no-such-suite"]);
    assert_eq!(code, 64);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Element grammar"));
}

#[test]
fn straighten_examples() {
    let (code, out, _) = run(&["straighten", "(x+[mu1;(0)])^(1) (x-[mu1;(0)])^(1)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(x-[mu1;(0)]) (x+[mu1;(0)]) + 2·h[mu1;(0)]\nintegral=true\n");

    let (code, out, _) = run(&["straighten", "(x+[mu1;(0)])^(2) (x+[mu1;(0)])^(3)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("10·(x+[mu1;(0)])^(5)\n"), "{out}");

    let a = run(&["--type", "A3", "straighten", "Λ[1;(1);1] Λ[1;(-1);1]"]);
    let b = run(&["--type", "A3", "straighten", "Λ[1;(-1);1] Λ[1;(1);1]"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let (_, sq, _) = run(&["--type", "A3", "straighten", "Λ[1;(1);1] Λ[1;(1);1]"]);
    assert!(sq.contains("integral=true"));
}

#[test]
fn lambda_reduce_closed_case() {
    let (code, out, _) = run(&["verify", "lambda-reduce", "--d", "2", "--l", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "Λ(2s,1) = 2Λ(s,2) − Λ(s,1)^2");
}

#[test]
fn verify_examples() {
    let (code, out, _) = run(&["verify", "lemma-brackets", "--type", "A2", "--k", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("checked"));

    let (code, out, _) = run(&["verify", "integral-basis", "--type", "D4", "--k", "3", "--m", "2", "--deg", "3"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["--json", "--type", "A3", "--seed", "7", "verify", "integral-basis", "--deg", "3", "--samples", "300"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], "twistform-report/1");
    assert_eq!(v["bounds"]["seed"], "7");
}
