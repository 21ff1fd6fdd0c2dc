//! Itemized pass/fail reports shared by all validators.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Where the failure was observed, e.g. a basis triple or a coordinate.
    pub location: String,
    /// The nonzero residual, in the shared text syntax.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Witness>,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckItem { name: name.into(), passed: true, detail: String::new(), witness: Vec::new() }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckItem { name: name.into(), passed: false, detail: detail.into(), witness: Vec::new() }
    }

    /// Passes iff `witness` is empty.
    pub fn from_witnesses(name: impl Into<String>, witness: Vec<Witness>) -> Self {
        CheckItem { name: name.into(), passed: witness.is_empty(), detail: String::new(), witness }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub title: String,
    pub verdict: Verdict,
    pub items: Vec<CheckItem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { schema_version: SCHEMA_VERSION, title: title.into(), verdict: Verdict::Pass, items: Vec::new() }
    }

    pub fn push(&mut self, item: CheckItem) {
        if !item.passed {
            self.verdict = Verdict::Fail;
        }
        self.items.push(item);
    }

    pub fn extend(&mut self, other: Report) {
        for item in other.items {
            self.push(item);
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        let mut s = format!("{}: {}\n", self.title, if self.passed() { "PASS" } else { "FAIL" });
        for item in &self.items {
            s.push_str(&format!("  [{}] {}", if item.passed { "ok" } else { "FAIL" }, item.name));
            if !item.detail.is_empty() {
                s.push_str(&format!(" ({})", item.detail));
            }
            s.push('\n');
            for w in item.witness.iter().take(5) {
                s.push_str(&format!("      at {}: {}\n", w.location, w.residual));
            }
            if item.witness.len() > 5 {
                s.push_str(&format!("      ... {} more\n", item.witness.len() - 5));
            }
        }
        s
    }
}

impl From<Vec<CheckItem>> for Report {
    fn from(items: Vec<CheckItem>) -> Self {
        let mut r = Report::new("report");
        for i in items {
            r.push(i);
        }
        r
    }
}
