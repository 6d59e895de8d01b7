use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

/// Outcome of a batch of checks. Merging is associative and keeps the
/// violations of both sides in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records one check; on failure, the detail is built lazily.
    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                check: name.to_string(),
                detail: detail(),
            });
        }
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.absorb(other);
        self
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }

    pub fn has_violation(&self, name: &str) -> bool {
        self.violations.iter().any(|v| v.check == name)
    }
}
