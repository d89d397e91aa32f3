//! Machine-readable run reports. A report is flat `key: value` text with
//! a stable schema — `command`, `inputs.*`, `result.*`, and `checks.*` —
//! rendered in insertion order so identical runs produce byte-identical
//! output. Every invariant a command executes appears exactly once under
//! `checks`; `fail` is reserved for violated mathematical expectations,
//! and expectation rules can mark specific failures as anticipated so
//! documented discrepancies are distinguishable from regressions.

use crate::format::{glob_match, ExpectRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// One executed invariant: name, outcome, and an optional witness line.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
    /// Set when an expectation rule anticipated this exact status.
    pub expected: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub result: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) {
        self.inputs.push((key.into(), value.to_string()));
    }

    pub fn result(&mut self, key: impl Into<String>, value: impl ToString) {
        self.result.push((key.into(), value.to_string()));
    }

    pub fn check(&mut self, name: impl Into<String>, status: CheckStatus, witness: Option<String>) {
        let name = name.into();
        debug_assert!(
            self.checks.iter().all(|c| c.name != name),
            "each invariant appears exactly once under checks"
        );
        self.checks.push(Check { name, status, witness, expected: false });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.check(name, CheckStatus::Pass, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.check(name, CheckStatus::Fail, Some(witness.into()));
    }

    pub fn skip(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.check(name, CheckStatus::Skipped, Some(witness.into()));
    }

    /// Match expectation rules against check names (first matching rule
    /// wins) and mark checks whose status was anticipated.
    pub fn apply_expectations(&mut self, rules: &[ExpectRule]) {
        for check in &mut self.checks {
            if let Some(rule) = rules.iter().find(|r| glob_match(&r.pattern, &check.name)) {
                check.expected = rule.status == check.status.as_str();
            }
        }
    }

    /// Failures not anticipated by an expectation rule. A pass that a rule
    /// claimed would fail is a stale expectation, not a regression: passing
    /// checks never affect the exit status.
    pub fn unexpected(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail && !c.expected)
            .collect()
    }

    /// Exit status under the contract: 1 iff an unanticipated check failed.
    pub fn exit_code(&self) -> i32 {
        if self.unexpected().is_empty() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("inputs.{k}: {v}\n"));
        }
        for (k, v) in &self.result {
            out.push_str(&format!("result.{k}: {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("checks.{}: {}\n", c.name, c.status.as_str()));
            if let Some(w) = &c.witness {
                out.push_str(&format!("checks.{}.witness: {w}\n", c.name));
            }
            if c.expected {
                out.push_str(&format!("checks.{}.expected: {}\n", c.name, c.status.as_str()));
            }
        }
        out
    }
}
