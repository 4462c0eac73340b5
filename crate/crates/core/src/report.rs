//! Pass/fail claims with witnesses, rendered as JSON or aligned text.

use std::fmt::{Debug, Write as _};

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub tag: String,
    pub passed: bool,
    /// Observed value or a short description of what was checked.
    pub detail: String,
    /// Concrete counterexample when the claim fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report { suite: suite.into(), claims: Vec::new() }
    }

    pub fn check(&mut self, tag: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.claims.push(Claim { tag: tag.into(), passed, detail: detail.into(), witness: None });
        passed
    }

    /// A claim that fails with `witness` when it is `Some`.
    pub fn check_witness(&mut self, tag: &str, detail: impl Into<String>, witness: Option<String>) -> bool {
        let passed = witness.is_none();
        self.claims.push(Claim { tag: tag.into(), passed, detail: detail.into(), witness });
        passed
    }

    pub fn expect_eq<T: PartialEq + Debug>(&mut self, tag: &str, observed: T, expected: T) -> bool {
        let passed = observed == expected;
        let witness = (!passed).then(|| format!("expected {expected:?}"));
        self.claims.push(Claim { tag: tag.into(), passed, detail: format!("{observed:?}"), witness });
        passed
    }

    pub fn extend(&mut self, other: Report) {
        self.claims.extend(other.claims);
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed)
    }

    pub fn claim(&self, tag: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.tag == tag)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let width = self.claims.iter().map(|c| c.tag.len()).max().unwrap_or(0);
        let mut out = format!("== {} ==\n", self.suite);
        for c in &self.claims {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{mark}  {:width$}  {}", c.tag, c.detail);
            if let Some(w) = &c.witness {
                let _ = write!(out, "  [{w}]");
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} claims, {} failed", self.claims.len(), failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let mut r = Report::new("demo");
        r.expect_eq("a.count", 3, 3);
        r.expect_eq("b.count", 2, 5);
        r.check_witness("c.none", "checked", None);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        let text = r.to_text();
        assert!(text.contains("FAIL  b.count  2  [expected 5]"));
        assert!(r.to_json().contains("\"witness\": \"expected 5\""));
        assert!(r.claim("a.count").unwrap().passed);
    }
}
