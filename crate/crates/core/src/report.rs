//! Machine-readable verification reports.

use std::collections::BTreeMap;

use serde::Serialize;

pub const REPORT_SCHEMA: &str = "twistform-report/1";

/// One failed (or explicitly recorded) comparison.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRow {
    pub check: String,
    pub instance: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, Default)]
pub struct CheckTally {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Violation,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Violation => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// Report of one verification suite on one algebra instance.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub instance: String,
    pub bounds: BTreeMap<String, String>,
    pub tallies: BTreeMap<String, CheckTally>,
    /// Failing rows (capped per check) and explicitly recorded observations.
    pub rows: Vec<CheckRow>,
    pub notes: Vec<String>,
    /// Readings and conventions settled by the computation.
    pub findings: BTreeMap<String, String>,
    pub inconclusive: u64,
    pub verdict: Verdict,
}

const MAX_ROWS_PER_CHECK: u64 = 10;

impl Report {
    pub fn new(suite: &str, instance: &str) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            suite: suite.into(),
            instance: instance.into(),
            bounds: BTreeMap::new(),
            tallies: BTreeMap::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            findings: BTreeMap::new(),
            inconclusive: 0,
            verdict: Verdict::Pass,
        }
    }

    pub fn bound(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.bounds.insert(key.into(), value.to_string());
        self
    }

    /// Record a comparison; `expected`/`got` are only rendered on failure.
    pub fn check(
        &mut self,
        check: &str,
        pass: bool,
        detail: impl FnOnce() -> (String, String, String),
    ) {
        let t = self.tallies.entry(check.into()).or_default();
        t.checked += 1;
        if !pass {
            t.failed += 1;
            if t.failed <= MAX_ROWS_PER_CHECK {
                let (instance, expected, got) = detail();
                self.rows.push(CheckRow {
                    check: check.into(),
                    instance,
                    expected,
                    got,
                    pass,
                });
            }
            self.verdict = Verdict::Violation;
        }
    }

    /// Record a passing row verbatim (used for reported observations).
    pub fn observe(&mut self, check: &str, instance: String, expected: String, got: String) {
        let pass = expected == got;
        let t = self.tallies.entry(check.into()).or_default();
        t.checked += 1;
        if !pass {
            t.failed += 1;
            self.verdict = Verdict::Violation;
        }
        self.rows.push(CheckRow {
            check: check.into(),
            instance,
            expected,
            got,
            pass,
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn finding(&mut self, key: &str, value: impl Into<String>) {
        self.findings.insert(key.into(), value.into());
    }

    pub fn mark_inconclusive(&mut self) {
        self.inconclusive += 1;
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
        }
    }

    pub fn merge(&mut self, other: Report) {
        for (k, v) in other.tallies {
            let t = self.tallies.entry(k).or_default();
            t.checked += v.checked;
            t.failed += v.failed;
        }
        self.rows.extend(other.rows);
        self.notes.extend(other.notes);
        self.findings.extend(other.findings);
        self.inconclusive += other.inconclusive;
        self.verdict = self.verdict.max(other.verdict);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn total_checked(&self) -> u64 {
        self.tallies.values().map(|t| t.checked).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "suite {} on {}: {:?}\n",
            self.suite, self.instance, self.verdict
        );
        for (k, v) in &self.bounds {
            s.push_str(&format!("  bound {k} = {v}\n"));
        }
        for (k, t) in &self.tallies {
            s.push_str(&format!("  {k}: {} checked, {} failed\n", t.checked, t.failed));
        }
        for r in &self.rows {
            s.push_str(&format!(
                "  [{}] {} {}: expected {} got {}\n",
                if r.pass { "ok" } else { "FAIL" },
                r.check,
                r.instance,
                r.expected,
                r.got
            ));
        }
        for (k, v) in &self.findings {
            s.push_str(&format!("  finding {k}: {v}\n"));
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}
