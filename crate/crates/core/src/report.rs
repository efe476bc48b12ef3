//! Verification outcomes: per-law counts and counterexample witnesses.

use std::fmt;

use serde::Serialize;

pub const DEFAULT_WITNESS_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Witnesses kept per law. Always at least one.
    pub witness_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { witness_cap: DEFAULT_WITNESS_CAP }
    }
}

impl CheckOptions {
    pub fn with_cap(cap: usize) -> Self {
        CheckOptions { witness_cap: cap.max(1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub law: String,
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: String,
    /// Tuples the law was evaluated on.
    pub examined: u64,
    /// Total violations, including those beyond the witness cap.
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    /// Set when a failure means something other than "the axiom is false",
    /// e.g. an inconsistent table for a law that is a theorem.
    pub diagnosis: Option<String>,
}

impl LawResult {
    pub fn status(&self) -> Status {
        if self.witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub laws: Vec<LawResult>,
}

impl AxiomReport {
    pub fn new() -> Self {
        AxiomReport::default()
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn law(&self, id: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == id)
    }

    pub fn law_ids(&self) -> Vec<&str> {
        self.laws.iter().map(|l| l.law.as_str()).collect()
    }

    pub fn failed_laws(&self) -> Vec<&str> {
        self.laws.iter().filter(|l| !l.passed()).map(|l| l.law.as_str()).collect()
    }

    pub fn examined(&self) -> u64 {
        self.laws.iter().map(|l| l.examined).sum()
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.laws.iter().flat_map(|l| l.witnesses.iter())
    }

    pub fn push(&mut self, law: LawResult) {
        self.laws.push(law);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.laws.extend(other.laws);
    }

    /// Prefixes every law id, used when nesting a sub-check.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for l in &mut self.laws {
            l.law = format!("{prefix}{}", l.law);
            for w in &mut l.witnesses {
                w.law = l.law.clone();
            }
        }
        self
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            write!(f, "{:<28} {} ({} examined", l.law, l.status(), l.examined)?;
            if l.violations > 0 {
                write!(f, ", {} violations", l.violations)?;
            }
            f.write_str(")")?;
            if let Some(d) = &l.diagnosis {
                if !l.passed() {
                    write!(f, " [{d}]")?;
                }
            }
            writeln!(f)?;
            for w in &l.witnesses {
                writeln!(f, "    witness {}: expected {}, got {}", w.inputs.join(", "), w.expected, w.actual)?;
            }
        }
        Ok(())
    }
}

/// Accumulates one law's sweep.
pub(crate) struct LawCheck {
    result: LawResult,
    cap: usize,
}

impl LawCheck {
    pub(crate) fn new(law: &str, opts: &CheckOptions) -> Self {
        LawCheck {
            result: LawResult {
                law: law.to_string(),
                examined: 0,
                violations: 0,
                witnesses: Vec::new(),
                diagnosis: None,
            },
            cap: opts.witness_cap.max(1),
        }
    }

    pub(crate) fn diagnosis(mut self, d: &str) -> Self {
        self.result.diagnosis = Some(d.to_string());
        self
    }

    pub(crate) fn tick(&mut self) {
        self.result.examined += 1;
    }

    pub(crate) fn full(&self) -> bool {
        self.result.witnesses.len() >= self.cap
    }

    /// Records a violation; the witness is only rendered while under the cap.
    pub(crate) fn fail_with(&mut self, render: impl FnOnce() -> (Vec<String>, String, String)) {
        self.result.violations += 1;
        if !self.full() {
            let (inputs, expected, actual) = render();
            self.result.witnesses.push(Witness { law: self.result.law.clone(), inputs, expected, actual });
        }
    }

    /// Ticks and records a violation unless `ok`.
    pub(crate) fn check(&mut self, ok: bool, render: impl FnOnce() -> (Vec<String>, String, String)) {
        self.tick();
        if !ok {
            self.fail_with(render);
        }
    }

    pub(crate) fn finish(self) -> LawResult {
        self.result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_limits_witnesses_not_violations() {
        let opts = CheckOptions::with_cap(2);
        let mut law = LawCheck::new("demo", &opts);
        for i in 0..5 {
            law.check(i % 2 == 0, || (vec![i.to_string()], "a".into(), "b".into()));
        }
        let r = law.finish();
        assert_eq!(r.examined, 5);
        assert_eq!(r.violations, 2);
        assert_eq!(r.witnesses.len(), 2);
        assert_eq!(r.status(), Status::Fail);
    }

    #[test]
    fn zero_cap_is_clamped() {
        assert_eq!(CheckOptions::with_cap(0).witness_cap, 1);
        let mut law = LawCheck::new("x", &CheckOptions { witness_cap: 0 });
        law.check(false, || (vec![], String::new(), String::new()));
        assert!(!law.finish().passed());
    }

    #[test]
    fn empty_report_passes() {
        assert!(AxiomReport::new().passed());
    }
}
