//! Statistical test outcomes and battery-level summaries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Significance level used throughout unless a caller overrides it.
pub const DEFAULT_ALPHA: f64 = 0.01;

/// Outcome of one statistical test. Tests that produce several P-values
/// (serial, cumulative sums, the template batteries, random excursions)
/// store them all; the test passes only if every P-value clears `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub test_name: String,
    pub p_values: Vec<f64>,
    pub passed: bool,
    pub applicable: bool,
    pub alpha: f64,
}

impl TestResult {
    /// Builds a result, deriving `passed` from applicability and P-values.
    pub fn new(
        test_name: impl Into<String>,
        p_values: Vec<f64>,
        applicable: bool,
        alpha: f64,
    ) -> Result<Self> {
        if p_values.is_empty() {
            return Err(Error::InvalidConfig("test produced no P-values".into()));
        }
        if !(0.0 < alpha && alpha < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must be in (0, 1), got {alpha}"
            )));
        }
        for &p in &p_values {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(Error::Domain(format!("P-value {p} outside [0, 1]")));
            }
        }
        let passed = applicable && p_values.iter().all(|&p| p >= alpha);
        Ok(Self {
            test_name: test_name.into(),
            p_values,
            passed,
            applicable,
            alpha,
        })
    }

    /// Smallest P-value; the aggregate statistic for multi-value tests.
    pub fn min_p(&self) -> f64 {
        self.p_values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Results of a whole battery run over one bit sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub results: Vec<TestResult>,
    /// Passed applicable tests over applicable tests; 0 when none apply.
    pub pass_fraction: f64,
    pub sequence_length: usize,
}

impl TestReport {
    pub fn from_results(results: Vec<TestResult>, sequence_length: usize) -> Self {
        let pass_fraction = Self::compute_pass_fraction(&results);
        Self {
            results,
            pass_fraction,
            sequence_length,
        }
    }

    /// Recomputes the pass fraction from the stored results.
    pub fn compute_pass_fraction(results: &[TestResult]) -> f64 {
        let applicable = results.iter().filter(|r| r.applicable).count();
        if applicable == 0 {
            return 0.0;
        }
        let passed = results.iter().filter(|r| r.applicable && r.passed).count();
        passed as f64 / applicable as f64
    }

    pub fn applicable_count(&self) -> usize {
        self.results.iter().filter(|r| r.applicable).count()
    }

    pub fn passed_count(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.applicable && r.passed)
            .count()
    }

    pub fn result(&self, test_name: &str) -> Option<&TestResult> {
        self.results.iter().find(|r| r.test_name == test_name)
    }
}
