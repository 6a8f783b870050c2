//! Structured pass/fail records for verification runs.

use serde::{Deserialize, Serialize};

use crate::SCHEMA;

/// One sub-check of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    /// Table row or branch the item exercises, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// What went wrong, in a form a reader can recheck by hand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub check: String,
    pub passed: bool,
    pub items: Vec<CheckItem>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            schema: SCHEMA.to_string(),
            check: check.into(),
            passed: true,
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.passed &= item.passed;
        self.items.push(item);
    }

    /// Records a sub-check; `witness` is kept only on failure.
    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>, witness: Option<String>) {
        self.push(CheckItem {
            name: name.into(),
            passed,
            row: None,
            detail,
            witness: if passed { None } else { witness },
        });
    }

    /// Appends every item of `other`, prefixing names with its check name.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut item in other.items {
            item.name = format!("{}: {}", other.check, item.name);
            self.push(item);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.check, if self.passed { "PASS" } else { "FAIL" });
        for item in &self.items {
            out.push_str(&format!("  [{}] {}", if item.passed { "ok" } else { "FAIL" }, item.name));
            if let Some(d) = &item.detail {
                out.push_str(&format!(": {d}"));
            }
            if let Some(w) = &item.witness {
                out.push_str(&format!(" (witness: {w})"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_propagates_and_witness_is_dropped_on_pass() {
        let mut r = VerificationReport::new("demo");
        r.record("first", true, None, Some("unused".into()));
        assert!(r.passed);
        assert_eq!(r.items[0].witness, None);
        r.record("second", false, None, Some("p_{1,1}".into()));
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
        let mut outer = VerificationReport::new("outer");
        outer.absorb(r);
        assert!(!outer.passed);
        assert_eq!(outer.items[1].name, "demo: second");
        let json = serde_json::to_string(&outer).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, outer);
    }
}
