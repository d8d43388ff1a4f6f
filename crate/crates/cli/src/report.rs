use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Labels tying each check to the statement it exercises.
pub mod anchor {
    pub const SHA_CLOSED_FORM: &str = "sha-closed-form";
    pub const SHAPIRO_VANISHING: &str = "shapiro-vanishing";
    pub const SHAPIRO_RESTRICTION: &str = "shapiro-restriction";
    pub const LONG_EXACT_SEQUENCE: &str = "long-exact-sequence";
    pub const SEQUENCE_DUALITY: &str = "sequence-duality";
    pub const AUGMENTATION: &str = "augmentation-identification";
    pub const CUP_CONNECTING: &str = "cup-connecting";
    pub const INFLATION_RESTRICTION: &str = "inflation-restriction";
    pub const PLUMBING: &str = "plumbing";

    pub const ALL: &[&str] = &[
        SHA_CLOSED_FORM,
        SHAPIRO_VANISHING,
        SHAPIRO_RESTRICTION,
        LONG_EXACT_SEQUENCE,
        SEQUENCE_DUALITY,
        AUGMENTATION,
        CUP_CONNECTING,
        INFLATION_RESTRICTION,
        PLUMBING,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check_id: String,
    pub paper_anchor: &'static str,
    pub inputs: Value,
    pub outcome: Outcome,
    pub details: Value,
    pub elapsed_ms: f64,
}

impl Record {
    /// Runs `check`, timing it. `Ok(None)` marks the check as skipped.
    pub fn run(
        check_id: impl Into<String>,
        paper_anchor: &'static str,
        inputs: Value,
        check: impl FnOnce() -> Result<(bool, Value), Skip>,
    ) -> Record {
        let start = Instant::now();
        let (outcome, details) = match check() {
            Ok((true, d)) => (Outcome::Pass, d),
            Ok((false, d)) => (Outcome::Fail, d),
            Err(Skip(reason)) => (Outcome::Skipped, Value::String(reason)),
        };
        Record {
            check_id: check_id.into(),
            paper_anchor,
            inputs,
            outcome,
            details,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// A check that could not run within the resource bound.
#[derive(Clone, Debug)]
pub struct Skip(pub String);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub config: Value,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub ok: bool,
}

impl VerificationReport {
    pub fn new(command: &str, config: Value, records: Vec<Record>) -> Self {
        let mut summary = Summary { total: records.len(), ..Summary::default() };
        for r in &records {
            match r.outcome {
                Outcome::Pass => summary.pass += 1,
                Outcome::Fail => summary.fail += 1,
                Outcome::Skipped => summary.skipped += 1,
            }
        }
        let ok = summary.fail == 0;
        VerificationReport { command: command.to_string(), config, records, summary, ok }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with every timing field zeroed, for reproducibility checks.
    pub fn to_json_without_timings(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip_timings(&mut v);
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn render_table(&self) -> String {
        let width = self.records.iter().map(|r| r.check_id.len()).max().unwrap_or(8).max(8);
        let mut out = String::new();
        for r in &self.records {
            let outcome = match r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skipped => "SKIPPED",
            };
            let _ = writeln!(out, "{outcome:<8} {:<width$}  {:<28} {:>9.1} ms", r.check_id, r.paper_anchor, r.elapsed_ms);
            if r.outcome != Outcome::Pass {
                let _ = writeln!(out, "         {}", r.details);
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "{}: {} checks, {} pass, {} fail, {} skipped", self.command, s.total, s.pass, s.fail, s.skipped);
        out
    }
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                if k.ends_with("_ms") || k == "timings" {
                    *x = Value::Null;
                } else {
                    strip_timings(x);
                }
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn summary_counts() {
        let records = vec![
            Record::run("a", anchor::PLUMBING, json!({}), || Ok((true, json!(null)))),
            Record::run("b", anchor::PLUMBING, json!({}), || Ok((false, json!("bad")))),
            Record::run("c", anchor::PLUMBING, json!({}), || Err(Skip("too big".into()))),
        ];
        let r = VerificationReport::new("t", json!({}), records);
        assert_eq!(r.summary, Summary { total: 3, pass: 1, fail: 1, skipped: 1 });
        assert!(!r.ok);
        assert!(r.render_table().contains("SKIPPED"));
        let j: Value = serde_json::from_str(&r.to_json_without_timings()).unwrap();
        assert_eq!(j["records"][0]["elapsed_ms"], Value::Null);
        assert_eq!(j["records"][2]["outcome"], "SKIPPED");
    }

    #[test]
    fn skipped_alone_is_not_failure() {
        let records = vec![Record::run("c", anchor::PLUMBING, json!({}), || Err(Skip("x".into())))];
        assert!(VerificationReport::new("t", json!({}), records).ok);
    }
}
