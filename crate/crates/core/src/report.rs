//! Pass/fail verification reports with JSON and aligned-text renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::model::ModelParams;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    /// `"<="` when `value` must not exceed `tolerance`, `">"` when it must exceed it.
    pub relation: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Option<ModelParams>,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, params: Option<ModelParams>) -> Self {
        VerificationReport {
            suite: suite.into(),
            params,
            passed: true,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Passes when `value <= tolerance`; NaN fails.
    pub fn at_most(&mut self, name: impl Into<String>, value: f64, tolerance: f64) -> bool {
        self.push(name.into(), value, tolerance, "<=", value <= tolerance)
    }

    /// Passes when `value > threshold`; used for negative controls.
    pub fn above(&mut self, name: impl Into<String>, value: f64, threshold: f64) -> bool {
        self.push(name.into(), value, threshold, ">", value > threshold)
    }

    fn push(
        &mut self,
        name: String,
        value: f64,
        tolerance: f64,
        relation: &'static str,
        passed: bool,
    ) -> bool {
        self.passed &= passed;
        self.checks.push(Check {
            name,
            value,
            tolerance,
            relation,
            passed,
        });
        passed
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        let prefix = other.suite.clone();
        self.passed &= other.passed;
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
        self.notes
            .extend(other.notes.into_iter().map(|n| format!("{prefix}: {n}")));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = String::new();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "suite: {}  [{status}]", self.suite);
        if let Some(p) = &self.params {
            let _ = writeln!(
                out,
                "params: N={} lambda={} r={} omega={} s={} m={}",
                p.n_particles(),
                p.lambda(),
                p.range(),
                p.omega(),
                p.degree(),
                p.m()
            );
        }
        let _ = writeln!(
            out,
            "{:<width$}  {:>24}  {:>2}  {:>24}  result",
            "check", "value", "", "tolerance"
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<width$}  {:>24.16e}  {:>2}  {:>24.16e}  {}",
                c.name,
                c.value,
                c.relation,
                c.tolerance,
                if c.passed { "pass" } else { "FAIL" }
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_fail_accumulates() {
        let mut r = VerificationReport::new("demo", None);
        assert!(r.at_most("small", 1e-9, 1e-8));
        assert!(r.passed);
        assert!(!r.at_most("nan", f64::NAN, 1.0));
        assert!(!r.passed);
        assert!(r.above("control", 0.5, 0.1));
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn merge_prefixes_names() {
        let mut a = VerificationReport::new("all", None);
        let mut b = VerificationReport::new("spectrum", None);
        b.at_most("n=0", 2.0, 1.0);
        b.note("hello");
        a.merge(b);
        assert!(!a.passed);
        assert_eq!(a.checks[0].name, "spectrum: n=0");
        assert_eq!(a.notes[0], "spectrum: hello");
    }

    #[test]
    fn text_has_one_line_per_check() {
        let mut r = VerificationReport::new("demo", None);
        r.at_most("a", 0.0, 1.0);
        r.at_most("bb", 0.0, 1.0);
        let text = r.to_text();
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("[PASS]"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["checks"].as_array().unwrap().len(), 2);
    }
}
