use serde::Serialize;

/// Outcome of a verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inapplicable,
    Fail,
    Counterexample,
}

impl Verdict {
    /// `true` for outcomes that signal a violated statement.
    pub fn is_violation(self) -> bool {
        matches!(self, Verdict::Fail | Verdict::Counterexample)
    }

    /// Combine two verdicts, keeping the more severe one.
    pub fn worst(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Fail => "fail",
            Verdict::Counterexample => "counterexample",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
