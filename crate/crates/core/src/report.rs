//! Axiom-check reports shared by every checker in the crate.

use serde::Serialize;

use crate::scalar::Scalar;

/// Maximum number of offending index tuples kept per report.
pub const MAX_VIOLATIONS: usize = 20;

/// Outcome of one law over every sampled index tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawCheck<T> {
    pub name: String,
    pub max_residual: T,
    pub checked: usize,
    pub passed: bool,
    /// Bound on `max_residual`; the report tolerance unless declared otherwise.
    pub tolerance: T,
    /// Derived laws are consequences of the defining ones; they are reported
    /// but do not enter [`ValidityReport::passed`].
    pub derived: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation<T> {
    pub law: String,
    pub indices: Vec<usize>,
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidityReport<T> {
    pub passed: bool,
    pub tolerance: T,
    pub laws: Vec<LawCheck<T>>,
    pub violations: Vec<Violation<T>>,
    /// Informational yes/no facts (e.g. whether a Leibniz bracket is antisymmetric).
    pub flags: Vec<(String, bool)>,
}

impl<T: Scalar> ValidityReport<T> {
    pub fn new(tolerance: T) -> Self {
        Self { passed: true, tolerance, laws: Vec::new(), violations: Vec::new(), flags: Vec::new() }
    }

    fn entry(&mut self, law: &str, derived: bool) -> usize {
        match self.laws.iter().position(|l| l.name == law) {
            Some(i) => i,
            None => {
                self.laws.push(LawCheck {
                    name: law.to_string(),
                    max_residual: T::zero(),
                    checked: 0,
                    passed: true,
                    tolerance: self.tolerance,
                    derived,
                });
                self.laws.len() - 1
            }
        }
    }

    /// Registers a law so it appears in the report even if nothing is sampled.
    pub fn declare(&mut self, law: &str) {
        self.entry(law, false);
    }

    pub fn declare_derived(&mut self, law: &str) {
        self.entry(law, true);
    }

    /// Registers a defining law with its own tolerance.
    pub fn declare_with_tolerance(&mut self, law: &str, tolerance: T) {
        let i = self.entry(law, false);
        self.laws[i].tolerance = tolerance;
    }

    /// Records one residual for a defining law.
    pub fn record(&mut self, law: &str, indices: &[usize], residual: T) {
        let i = self.entry(law, false);
        self.push(i, indices, residual);
    }

    /// Records one residual for a derived law.
    pub fn record_derived(&mut self, law: &str, indices: &[usize], residual: T) {
        let i = self.entry(law, true);
        self.push(i, indices, residual);
    }

    fn push(&mut self, i: usize, indices: &[usize], residual: T) {
        let law = &mut self.laws[i];
        let tol = law.tolerance;
        law.checked += 1;
        // NaN counts as a failure
        let ok = residual <= tol;
        if residual > law.max_residual || residual.is_nan() {
            law.max_residual = residual;
        }
        if !ok {
            law.passed = false;
            if !law.derived {
                self.passed = false;
            }
            if self.violations.len() < MAX_VIOLATIONS {
                self.violations.push(Violation {
                    law: law.name.clone(),
                    indices: indices.to_vec(),
                    residual,
                });
            }
        }
    }

    pub fn flag(&mut self, name: &str, value: bool) {
        match self.flags.iter_mut().find(|(n, _)| n == name) {
            Some(entry) => entry.1 = value,
            None => self.flags.push((name.to_string(), value)),
        }
    }

    pub fn get_flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn law(&self, name: &str) -> Option<&LawCheck<T>> {
        self.laws.iter().find(|l| l.name == name)
    }

    /// Largest residual across defining laws.
    pub fn max_residual(&self) -> T {
        self.laws.iter().filter(|l| !l.derived).fold(T::zero(), |m, l| m.max(l.max_residual))
    }

    /// First failing defining law, if any.
    pub fn first_failure(&self) -> Option<&LawCheck<T>> {
        self.laws.iter().find(|l| !l.derived && !l.passed)
    }

    /// True iff every derived law passed too.
    pub fn derived_passed(&self) -> bool {
        self.laws.iter().filter(|l| l.derived).all(|l| l.passed)
    }

    /// Appends another report's laws under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: &ValidityReport<T>) {
        for law in &other.laws {
            let name = format!("{prefix}.{}", law.name);
            let i = self.entry(&name, law.derived);
            let entry = &mut self.laws[i];
            entry.tolerance = law.tolerance;
            entry.checked += law.checked;
            entry.max_residual = entry.max_residual.max(law.max_residual);
            entry.passed &= law.passed;
            if !law.passed && !law.derived {
                self.passed = false;
            }
        }
        for v in &other.violations {
            if self.violations.len() < MAX_VIOLATIONS {
                self.violations.push(Violation { law: format!("{prefix}.{}", v.law), ..v.clone() });
            }
        }
        for (name, value) in &other.flags {
            self.flag(&format!("{prefix}.{name}"), *value);
        }
    }

    pub fn to_f64(&self) -> ValidityReport<f64> {
        ValidityReport {
            passed: self.passed,
            tolerance: self.tolerance.as_f64(),
            laws: self
                .laws
                .iter()
                .map(|l| LawCheck {
                    name: l.name.clone(),
                    max_residual: l.max_residual.as_f64(),
                    checked: l.checked,
                    passed: l.passed,
                    tolerance: l.tolerance.as_f64(),
                    derived: l.derived,
                })
                .collect(),
            violations: self
                .violations
                .iter()
                .map(|v| Violation { law: v.law.clone(), indices: v.indices.clone(), residual: v.residual.as_f64() })
                .collect(),
            flags: self.flags.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violations_are_capped() {
        let mut r = ValidityReport::new(1e-9);
        for i in 0..50 {
            r.record("law", &[i], 1.0);
        }
        assert!(!r.passed);
        assert_eq!(r.violations.len(), MAX_VIOLATIONS);
        assert_eq!(r.law("law").unwrap().checked, 50);
    }

    #[test]
    fn per_law_tolerance() {
        let mut r = ValidityReport::new(1e-9);
        r.declare_with_tolerance("loose", 1e-6);
        r.record("loose", &[], 1e-7);
        assert!(r.passed);
        r.record("tight", &[], 1e-7);
        assert!(!r.passed);
    }

    #[test]
    fn derived_failures_do_not_fail_report() {
        let mut r = ValidityReport::new(1e-9);
        r.record("defining", &[0], 0.0);
        r.record_derived("derived", &[0], 1.0);
        assert!(r.passed);
        assert!(!r.derived_passed());
    }

    #[test]
    fn nan_residual_fails() {
        let mut r = ValidityReport::new(1e-9);
        r.record("law", &[], f64::NAN);
        assert!(!r.passed);
    }
}
