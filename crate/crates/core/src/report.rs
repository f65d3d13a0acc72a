//! Verification reports: a count of checks performed plus every violation found.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: u64,
    pub violations: Vec<Violation>,
    /// Human-readable description of what was quantified over, for truncated structures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, ok: bool, rule: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                rule: rule.to_string(),
                detail: detail(),
            });
        }
    }

    pub fn violation(&mut self, rule: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule: rule.to_string(),
            detail: detail.into(),
        });
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "OK ({} checks)", self.checks)?;
            if let Some(s) = &self.support {
                write!(f, "\nsupport: {s}")?;
            }
            Ok(())
        } else {
            writeln!(
                f,
                "FAILED ({} violation{} in {} checks)",
                self.violations.len(),
                if self.violations.len() == 1 { "" } else { "s" },
                self.checks
            )?;
            for (k, v) in self.violations.iter().enumerate() {
                if k > 0 {
                    writeln!(f)?;
                }
                write!(f, "  {v}")?;
            }
            if let Some(s) = &self.support {
                write!(f, "\nsupport: {s}")?;
            }
            Ok(())
        }
    }
}
