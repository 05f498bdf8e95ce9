//! Verification reports: every law checked is counted, every failure is a
//! concrete witness.
//!
//! Verification routines in this crate never abort on the first broken law.
//! They evaluate every instance of every condition in a deterministic order
//! and return a [`VerificationReport`]; a report with no violations means the
//! property holds. Structural problems (wrong shapes, unknown names) are
//! `Error`s instead — see [`crate::error::Error`].

use std::fmt;

use crate::grading::GradedBasis;
use crate::vector::GradedVector;

/// One failed law instance: the law's label, the elements it was
/// instantiated at, and the two sides that should have agreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Label of the law that failed, e.g. `"jacobi"` or `"(3)"`.
    pub law: String,
    /// Names of the elements the law was instantiated at, in argument order.
    pub witness: Vec<String>,
    /// Rendered left-hand side.
    pub left: String,
    /// Rendered right-hand side.
    pub right: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.law)?;
        if !self.witness.is_empty() {
            write!(f, " at ({})", self.witness.join(", "))?;
        }
        write!(f, ": {} != {}", self.left, self.right)
    }
}

/// The outcome of verifying a family of laws.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    checked: usize,
    violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport::default()
    }

    /// True when every checked instance held.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Number of law instances evaluated.
    pub fn checked(&self) -> usize {
        self.checked
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Counts one evaluated law instance.
    pub fn tally(&mut self) {
        self.checked += 1;
    }

    /// Records a failed instance (does not tally; pair with [`tally`]
    /// or use one of the `check_*` helpers).
    ///
    /// [`tally`]: VerificationReport::tally
    pub fn violation(
        &mut self,
        law: impl Into<String>,
        witness: Vec<String>,
        left: impl Into<String>,
        right: impl Into<String>,
    ) {
        self.violations.push(Violation {
            law: law.into(),
            witness,
            left: left.into(),
            right: right.into(),
        });
    }

    /// Tallies one instance comparing two vectors over `basis`; records a
    /// violation with both sides rendered when they differ.
    pub fn check_vectors(
        &mut self,
        law: &str,
        witness: &[&str],
        basis: &GradedBasis,
        left: &GradedVector,
        right: &GradedVector,
    ) {
        self.tally();
        if left != right {
            self.violation(
                law,
                witness.iter().map(|s| s.to_string()).collect(),
                left.render(basis),
                right.render(basis),
            );
        }
    }

    /// Tallies one instance comparing two named values (group elements,
    /// rendered vectors, ...); records a violation when they differ.
    pub fn check_named<T: PartialEq>(
        &mut self,
        law: &str,
        witness: &[&str],
        left: T,
        right: T,
        render: impl Fn(&T) -> String,
    ) {
        self.tally();
        if left != right {
            self.violation(
                law,
                witness.iter().map(|s| s.to_string()).collect(),
                render(&left),
                render(&right),
            );
        }
    }

    /// Appends another report's tallies and violations to this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "ok ({} checks)", self.checked)
        } else {
            writeln!(
                f,
                "FAILED ({} of {} checks)",
                self.violations.len(),
                self.checked
            )?;
            for v in &self.violations {
                writeln!(f, "  {}", v)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradingMode;
    use crate::rational::Rational;

    #[test]
    fn reports_collect_all_failures() {
        let basis = GradedBasis::new(
            vec![("x".into(), 0), ("y".into(), 0)],
            GradingMode::Z,
        )
        .unwrap();
        let mut r = VerificationReport::new();
        let v = GradedVector::basis(0);
        let w = GradedVector::term(1, Rational::from_integer(2));
        r.check_vectors("law-a", &["x", "y"], &basis, &v, &v);
        r.check_vectors("law-a", &["y", "x"], &basis, &v, &w);
        r.check_vectors("law-b", &[], &basis, &w, &v);
        assert_eq!(r.checked(), 3);
        assert!(!r.passed());
        assert_eq!(r.violations().len(), 2);
        assert_eq!(
            r.violations()[0].to_string(),
            "law-a at (y, x): 1*x != 2*y"
        );
        assert_eq!(r.violations()[1].to_string(), "law-b: 2*y != 1*x");
    }

    #[test]
    fn absorb_merges() {
        let mut a = VerificationReport::new();
        a.tally();
        let mut b = VerificationReport::new();
        b.tally();
        b.violation("z", vec![], "0", "1");
        a.absorb(b);
        assert_eq!(a.checked(), 2);
        assert_eq!(a.violations().len(), 1);
    }
}
