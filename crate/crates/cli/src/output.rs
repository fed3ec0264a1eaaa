//! The machine-readable report a command produces.

use std::collections::BTreeMap;
use std::fmt;

use patcalc_core::Report;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Field order is part of the format: golden files compare byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Output {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub counterexamples: Vec<String>,
    pub budget: usize,
    pub timings: Timings,
    #[serde(skip)]
    pub report: Option<Report>,
}

impl Output {
    pub fn from_report(command: &str, inputs: BTreeMap<String, String>, budget: usize, report: Report) -> Output {
        let mut witnesses = Vec::new();
        let mut counterexamples = Vec::new();
        flatten(&report, &mut witnesses, &mut counterexamples);
        Output {
            command: command.to_string(),
            inputs,
            status: if report.passed { Status::Pass } else { Status::Fail },
            witnesses,
            counterexamples,
            budget,
            timings: Timings::default(),
            report: Some(report),
        }
    }

    pub fn error(command: &str, inputs: BTreeMap<String, String>, message: String) -> Output {
        Output {
            command: command.to_string(),
            inputs,
            status: Status::Error,
            witnesses: Vec::new(),
            counterexamples: vec![message],
            budget: 0,
            timings: Timings::default(),
            report: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The JSON body without timings, for comparisons between runs.
    pub fn canonical_json(&self) -> String {
        #[derive(Serialize)]
        struct Canonical<'a> {
            command: &'a str,
            inputs: &'a BTreeMap<String, String>,
            status: Status,
            witnesses: &'a [String],
            counterexamples: &'a [String],
            budget: usize,
        }
        serde_json::to_string_pretty(&Canonical {
            command: &self.command,
            inputs: &self.inputs,
            status: self.status,
            witnesses: &self.witnesses,
            counterexamples: &self.counterexamples,
            budget: self.budget,
        })
        .expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = match (&self.report, self.status) {
            (Some(r), _) => r.to_string(),
            (None, _) => self.counterexamples.iter().map(|c| format!("error: {c}\n")).collect(),
        };
        s.push_str(&format!("status: {}\n", self.status));
        s
    }
}

/// Drops the trailing `timings` entry from pretty-printed output.
pub fn strip_timings(json: &str) -> String {
    match json.find(",\n  \"timings\"") {
        Some(k) => format!("{}\n}}", &json[..k]),
        None => json.trim_end().to_string(),
    }
}

/// Every node contributes `check: item` lines; a passing node with nothing
/// else to show still records its verdict.
fn flatten(r: &Report, witnesses: &mut Vec<String>, counterexamples: &mut Vec<String>) {
    if r.passed && r.witnesses.is_empty() && r.children.is_empty() {
        witnesses.push(format!("{}: pass", r.check));
    }
    witnesses.extend(r.witnesses.iter().map(|w| format!("{}: {w}", r.check)));
    witnesses.extend(r.notes.iter().map(|n| format!("{}: note: {n}", r.check)));
    counterexamples.extend(r.counterexamples.iter().map(|c| format!("{}: {c}", r.check)));
    if r.omitted > 0 {
        counterexamples.push(format!("{}: {} more omitted", r.check, r.omitted));
    }
    if !r.passed && r.counterexamples.is_empty() && r.children.iter().all(|c| c.passed) {
        counterexamples.push(format!("{}: fail", r.check));
    }
    for c in &r.children {
        flatten(c, witnesses, counterexamples);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_keep_their_order() {
        let mut r = Report::new("outer");
        r.witness("w");
        let mut c = Report::new("inner");
        c.fail("x");
        r.push_child(c);
        let o = Output::from_report("validate", BTreeMap::from([("name".into(), "F".into())]), 3, r);
        let json = o.to_json();
        let keys: Vec<usize> = ["command", "inputs", "status", "witnesses", "counterexamples", "budget", "timings"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert_eq!(o.status, Status::Fail);
        assert_eq!(o.witnesses, ["outer: w"]);
        assert_eq!(o.counterexamples, ["inner: x"]);
        let canonical = o.canonical_json();
        assert!(!canonical.contains("timings"));
        assert_eq!(strip_timings(&json), canonical);
    }
}
