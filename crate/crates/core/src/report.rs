//! Check results shared by the registry, metrology and the `verify` command.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check cannot be evaluated, e.g. a reciprocal of an irregular
    /// number. Not counted as a failure.
    NotApplicable,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "n/a",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub check_id: String,
    /// Where the identity comes from (tablet, table row, section).
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub status: CheckStatus,
}

impl CheckEntry {
    pub fn new(
        check_id: impl Into<String>,
        anchor: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        status: CheckStatus,
    ) -> Self {
        CheckEntry {
            check_id: check_id.into(),
            anchor: anchor.into(),
            expected: expected.into(),
            actual: actual.into(),
            status,
        }
    }

    /// Pass iff `expected == actual` as text.
    pub fn compare(
        check_id: impl Into<String>,
        anchor: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        let (e, a) = (expected.to_string(), actual.to_string());
        let status = CheckStatus::from_bool(e == a);
        CheckEntry::new(check_id, anchor, e, a, status)
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

/// Entries are kept sorted by `check_id`, so serialization is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        let at = self.entries.partition_point(|e| e.check_id <= entry.check_id);
        self.entries.insert(at, entry);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for e in other.entries {
            self.push(e);
        }
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn get(&self, check_id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status == CheckStatus::Fail)
    }

    pub fn summary(&self) -> Summary {
        let count = |s| self.entries.iter().filter(|e| e.status == s).count();
        Summary {
            total: self.entries.len(),
            passed: count(CheckStatus::Pass),
            failed: count(CheckStatus::Fail),
            not_applicable: count(CheckStatus::NotApplicable),
        }
    }

    /// No entry failed.
    pub fn ok(&self) -> bool {
        self.failures().next().is_none()
    }

    /// One TAB-separated line per entry:
    /// `check_id, status, expected, actual, anchor`.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.check_id,
                e.status.label(),
                e.expected,
                e.actual,
                e.anchor
            ));
        }
        out
    }

    /// Aligned columns followed by a summary line.
    pub fn to_text(&self) -> String {
        let width = |f: fn(&CheckEntry) -> &str, min: usize| {
            self.entries.iter().map(|e| f(e).chars().count()).max().unwrap_or(0).max(min)
        };
        let wid = width(|e| &e.check_id, 5);
        let wexp = width(|e| &e.expected, 8);
        let wact = width(|e| &e.actual, 6);
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
        let mut out = format!(
            "{}  {:<4}  {}  {}  source\n",
            pad("check", wid),
            "",
            pad("expected", wexp),
            pad("actual", wact)
        );
        for e in &self.entries {
            out.push_str(&format!(
                "{}  {:<4}  {}  {}  {}\n",
                pad(&e.check_id, wid),
                e.status.label(),
                pad(&e.expected, wexp),
                pad(&e.actual, wact),
                e.anchor
            ));
        }
        let s = self.summary();
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} not applicable\n",
            s.total, s.passed, s.failed, s.not_applicable
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_sorted_and_counted() {
        let mut r = VerificationReport::new();
        r.push(CheckEntry::compare("b", "x", 1, 1));
        r.push(CheckEntry::compare("a", "x", 1, 2));
        r.push(CheckEntry::new("c", "x", "", "", CheckStatus::NotApplicable));
        let ids: Vec<_> = r.entries().iter().map(|e| e.check_id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        let s = r.summary();
        assert_eq!((s.total, s.passed, s.failed, s.not_applicable), (3, 1, 1, 1));
        assert!(!r.ok());
        assert_eq!(r.to_records().lines().next().unwrap(), "a\tFAIL\t1\t2\tx");
    }
}
