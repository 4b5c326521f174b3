use crate::exactlin::Vector;

/// One failed identity: which axiom, at which basis indices (0-based), and
/// the two sides that should have agreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub indices: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Result of an axiom check. Verifiers collect every violation rather than
/// stopping at the first one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn push(&mut self, axiom: impl Into<String>, indices: Vec<usize>, lhs: Vector, rhs: Vector) {
        self.violations.push(Violation {
            axiom: axiom.into(),
            indices,
            lhs,
            rhs,
        });
    }

    /// Records a violation only when the two sides differ.
    pub fn check(&mut self, axiom: &str, indices: &[usize], lhs: Vector, rhs: Vector) {
        if lhs != rhs {
            self.push(axiom, indices.to_vec(), lhs, rhs);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.violations.extend(other.violations);
    }

    /// Merges `other`, prefixing each axiom id with `scope/`.
    pub fn merge_scoped(&mut self, scope: &str, other: VerificationReport) {
        self.violations
            .extend(other.violations.into_iter().map(|mut v| {
                v.axiom = format!("{scope}/{}", v.axiom);
                v
            }));
    }

    /// Whether any violation carries the given axiom id (exact match).
    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Distinct axiom ids in first-seen order.
    pub fn axioms(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !seen.contains(&v.axiom.as_str()) {
                seen.push(&v.axiom);
            }
        }
        seen
    }
}
