use alloc::collections::BTreeMap;
use alloc::string::String;

/// Outcome of a single identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: BTreeMap<String, f64>,
}

impl CheckReport {
    /// `pass` is true iff the residual is a number not exceeding `tolerance`.
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            details: BTreeMap::new(),
        }
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: f64) -> Self {
        self.details.insert(key.into(), value);
        self
    }
}

/// Running maximum that poisons to NaN once any NaN is folded in.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct MaxResidual(f64);

impl MaxResidual {
    pub(crate) fn push(&mut self, value: f64) {
        if value.is_nan() || self.0.is_nan() {
            self.0 = f64::NAN;
        } else if value > self.0 {
            self.0 = value;
        }
    }

    pub(crate) fn get(self) -> f64 {
        self.0
    }
}
