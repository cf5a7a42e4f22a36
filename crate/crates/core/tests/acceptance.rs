//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported as FAIL but do not fail the
//! run; any other failure does, and so does a known failure that starts passing.

use std::time::{Duration, Instant};

use serde_json::Value;
use twistform::cli;

/// Criterion 12 on A2: the non-simple divided powers are not in the ℤ-span of
/// products of simple-root divided powers (4·x is).
const KNOWN_FAILURES: &[u32] = &[12];

const CORE: &[&[&str]] = &[
    &["--type", "A2", "--k", "2"],
    &["--type", "A3", "--k", "2"],
    &["--type", "A4", "--k", "2"],
    &["--type", "D4", "--k", "2"],
    &["--type", "D4", "--k", "3"],
];

fn run_raw(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["twistform", "--json"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn verify(cfg: &[&str], suite: &str, extra: &[&str]) -> (i32, Value) {
    let mut args = cfg.to_vec();
    args.extend(["verify", suite]);
    args.extend_from_slice(extra);
    let (code, out) = run_raw(&args);
    let v = serde_json::from_str(&out).unwrap_or(Value::Null);
    (code, v)
}

fn tally(v: &Value, check: &str) -> (u64, u64) {
    let t = &v["tallies"][check];
    (t["checked"].as_u64().unwrap_or(0), t["failed"].as_u64().unwrap_or(0))
}

fn first_failure(v: &Value) -> String {
    v["rows"]
        .as_array()
        .and_then(|rows| rows.iter().find(|r| r["pass"] == false))
        .map(|r| {
            let f = |k: &str| r[k].as_str().unwrap_or_default().to_string();
            format!("{} {}: expected {} got {}", f("check"), f("instance"), f("expected"), f("got"))
        })
        .unwrap_or_else(|| format!("verdict {}", v["verdict"]))
}

/// Runs `suite` on every config; fails on the first non-pass.
fn all_pass(cfgs: &[&[&str]], ms: &[&str], suite: &str, extra: &[&str]) -> Result<u64, String> {
    let mut checked = 0;
    for cfg in cfgs {
        for m in ms {
            let mut c = cfg.to_vec();
            c.extend(["--m", m]);
            let (code, v) = verify(&c, suite, extra);
            if code != 0 {
                return Err(format!("{} m={m}: exit {code}, {}", v["instance"], first_failure(&v)));
            }
            checked += v["tallies"]
                .as_object()
                .map(|t| t.values().map(|x| x["checked"].as_u64().unwrap()).sum::<u64>())
                .unwrap_or(0);
        }
    }
    Ok(checked)
}

type Criterion = (u32, &'static str, fn() -> Result<String, String>);

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

fn c1() -> Result<String, String> {
    let mut cfgs = CORE.to_vec();
    cfgs.push(&["--type", "E6", "--k", "2"]);
    let expected = ["A1 (BC1)", "C2", "B2 (BC2)", "B3", "G2", "F4"];
    let mut seen = Vec::new();
    for (cfg, want) in cfgs.iter().zip(expected) {
        let ((code, v), dt) = timed(|| verify(cfg, "folding", &[]));
        if code != 0 {
            return Err(format!("{}: {}", v["instance"], first_failure(&v)));
        }
        if dt > Duration::from_secs(1) {
            return Err(format!("{} took {dt:?}", v["instance"]));
        }
        seen.push(format!("{}→{want}", v["instance"].as_str().unwrap()));
    }
    Ok(seen.join(", "))
}

fn c2() -> Result<String, String> {
    let (res, dt) = timed(|| {
        let mut parts = Vec::new();
        for t in ["A2", "A3", "A4", "D4", "E6"] {
            let (code, v) = verify(&["--type", t, "--samples", "10000"], "chevalley", &[]);
            if code != 0 {
                return Err(format!("{t}: {}", first_failure(&v)));
            }
            let (jac, _) = tally(&v, "jacobi");
            parts.push(format!("{t} jacobi {jac} ({})", v["bounds"]["jacobi"].as_str().unwrap()));
        }
        Ok(parts.join("; "))
    });
    let s = res?;
    if dt > Duration::from_secs(30) {
        return Err(format!("took {dt:?}"));
    }
    Ok(format!("{s}; {dt:.1?}"))
}

fn c4() -> Result<String, String> {
    all_pass(CORE, &["1"], "grels", &[])?;
    for t in ["A2", "A4"] {
        let (_, v) = verify(&["--type", t], "grels", &[]);
        let s = v["findings"]["doubling-s-values"].as_str().unwrap_or("");
        if !s.split(',').any(|x| x == "+:1") {
            return Err(format!("{t}: s values {s}"));
        }
    }
    Ok("all relations hold; s = +1 on the positive doubling relation for A2 and A4".into())
}

fn c5() -> Result<String, String> {
    let n = all_pass(CORE, &["1"], "lemma-brackets", &[])?;
    let (_, v) = verify(&["--type", "A4"], "lemma-brackets", &[]);
    let (d, r) = (&v["findings"]["delta-subscript"], &v["findings"]["doubled-weight-class"]);
    let (_, a2) = verify(&["--type", "A2"], "lemma-brackets", &[]);
    if tally(&a2, "item2-doubled").0 == 0 {
        return Err("no A2 doubled-weight case checked".into());
    }
    Ok(format!("{n} checks; delta: {d}; doubled class: {r}"))
}

fn c8() -> Result<String, String> {
    let n = all_pass(CORE, &["1", "2"], "prop-repeat", &["--deg", "6"])?;
    Ok(format!("{n} checks, r+s ≤ 6"))
}

fn c9() -> Result<String, String> {
    let (res, dt) = timed(|| all_pass(CORE, &["1", "2"], "prop-arrange", &["--deg", "5", "--expwin", "2"]));
    let n = res?;
    if dt > Duration::from_secs(600) {
        return Err(format!("took {dt:?}"));
    }
    Ok(format!("{n} checks, r+s ≤ 5, exponents in [-2,2]^m; {dt:.1?}"))
}

fn c10() -> Result<String, String> {
    let n = all_pass(CORE, &["1", "2"], "lambda-reduce", &["--d", "2,3", "--l", "1,2,3,4"])?;
    let (_, v) = verify(&["--type", "A3"], "lambda-reduce", &["--d", "2", "--l", "1"]);
    let f = v["findings"]["formula d=2 l=1"].as_str().unwrap_or("");
    if f != "Λ(2s,1) = 2Λ(s,2) − Λ(s,1)^2" || tally(&v, "closed-case") != (1, 0) {
        return Err(format!("closed case: {f}"));
    }
    Ok(format!("{n} checks; {f}"))
}

fn c11() -> Result<String, String> {
    let (res, dt) = timed(|| all_pass(CORE, &["1", "2"], "integral-basis", &[]));
    let n = res?;
    if dt > Duration::from_secs(1800) {
        return Err(format!("took {dt:?}"));
    }
    Ok(format!("{n} checks (products, round trip, rank); {dt:.1?}"))
}

fn c12() -> Result<String, String> {
    let mut notes = Vec::new();
    let mut failed = Vec::new();
    for t in ["A2", "A3"] {
        let (code, v) = verify(&["--type", t, "--m", "1", "--deg", "4"], "prop-generators", &[]);
        let (n, bad) = tally(&v, "member");
        match code {
            0 => notes.push(format!("{t}: {n} targets member")),
            2 => failed.push(format!("{t}: inconclusive")),
            _ => failed.push(format!("{t}: {bad} of {n} targets not in the lattice, e.g. {}", first_failure(&v))),
        }
    }
    if failed.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(failed.into_iter().chain(notes).collect::<Vec<_>>().join("; "))
    }
}

fn c13() -> Result<String, String> {
    let runs: &[&[&str]] = &[
        &["--type", "A3", "--seed", "5", "verify", "integral-basis", "--deg", "3", "--samples", "500"],
        &["--type", "D4", "--k", "3", "--m", "2", "--seed", "9", "verify", "prop-repeat", "--samples", "50"],
        &["--type", "A4", "--m", "2", "--seed", "3", "verify", "prop-arrange", "--deg", "4", "--samples", "200"],
        &["--type", "A2", "verify", "prop-generators"],
    ];
    for args in runs {
        let (c1, a) = run_raw(args);
        let (c2, b) = run_raw(args);
        if a.is_empty() || a != b || c1 != c2 {
            return Err(format!("differs: {}", args.join(" ")));
        }
    }
    Ok(format!("{} configurations byte-identical across runs", runs.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "folding table", c1),
        (2, "Chevalley certification", c2),
        (3, "sigma automorphism", || all_pass(CORE, &["1"], "sigma", &[]).map(|n| format!("{n} checks"))),
        (4, "twisted generator relations", c4),
        (5, "bracket lemma", c5),
        (6, "twisted bracket integrality", || {
            all_pass(CORE, &["1"], "integrality", &[]).map(|n| format!("{n} brackets"))
        }),
        (7, "g0 Chevalley basis", || all_pass(CORE, &["1"], "g0-chevalley", &[]).map(|n| format!("{n} checks"))),
        (8, "Λ commutation and divided-power binomials", c8),
        (9, "reordering identities", c9),
        (10, "Λ reduction", c10),
        (11, "integral basis", c11),
        (12, "generation by simple-root divided powers", c12),
        (13, "determinism", c13),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let (res, dt) = timed(f);
        let known = KNOWN_FAILURES.contains(&id);
        match &res {
            Ok(detail) => println!("criterion {id:>2} [{name}]: PASS ({detail}) [{dt:.1?}]"),
            Err(why) => println!(
                "criterion {id:>2} [{name}]: FAIL ({why}){} [{dt:.1?}]",
                if known { " [known failure]" } else { "" }
            ),
        }
        if res.is_ok() == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
