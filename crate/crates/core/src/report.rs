//! Pass/fail reports produced by the identity checkers.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            lines: Vec::new(),
        }
    }

    pub fn check(&mut self, label: impl Into<String>, passed: bool) -> &mut Self {
        self.lines.push(CheckLine {
            label: label.into(),
            passed,
            detail: None,
        });
        self
    }

    pub fn check_with(
        &mut self,
        label: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> &mut Self {
        self.lines.push(CheckLine {
            label: label.into(),
            passed,
            detail: Some(detail.into()),
        });
        self
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn passed(&self) -> bool {
        !self.lines.is_empty() && self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed)
    }
}
