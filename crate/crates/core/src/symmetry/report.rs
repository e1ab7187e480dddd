use serde::{Deserialize, Serialize};

/// One verified condition: the measured worst case against its tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub condition: String,
    pub samples: usize,
    pub seed: u64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// `pass` is `max_deviation ≤ tolerance`; NaN never passes.
    pub fn new(condition: impl Into<String>, samples: usize, seed: u64, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            condition: condition.into(),
            samples,
            seed,
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        }
    }

    /// A lower-bound diagnostic: passes when the deviation is at least the
    /// threshold.
    pub fn at_least(condition: impl Into<String>, samples: usize, seed: u64, deviation: f64, threshold: f64) -> Self {
        Self {
            condition: condition.into(),
            samples,
            seed,
            max_deviation: deviation,
            tolerance: threshold,
            pass: deviation >= threshold,
        }
    }
}

/// Records in request order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CovarianceReport {
    pub records: Vec<CheckRecord>,
}

impl CovarianceReport {
    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_follows_tolerance() {
        assert!(CheckRecord::new("a", 1, 0, 1e-11, 1e-10).pass);
        assert!(!CheckRecord::new("a", 1, 0, 2e-10, 1e-10).pass);
        assert!(!CheckRecord::new("a", 1, 0, f64::NAN, 1e-10).pass);
        let mut r = CovarianceReport::default();
        assert!(r.pass());
        r.push(CheckRecord::new("b", 1, 0, 1.0, 0.1));
        assert!(!r.pass());
        assert_eq!(r.failures().count(), 1);
    }
}
