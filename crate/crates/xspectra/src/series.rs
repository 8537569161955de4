//! Validated time series container.

use crate::error::{Error, Result};

/// A finite real-valued sequence, the raw input to every spectral routine.
///
/// Invariants: length >= 4 (so at least two positive Fourier frequencies
/// exist) and every value finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::InvalidLength(format!(
                "need at least 4 observations, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: format!("non-finite value at index {bad}"),
            });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 4 by construction
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Values with the sample mean removed.
    pub fn demeaned(&self) -> Vec<f64> {
        let mu = self.mean();
        self.values.iter().map(|v| v - mu).collect()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_series() {
        assert!(TimeSeries::new(vec![1.0, 2.0, 3.0]).is_err());
        assert!(TimeSeries::new(vec![1.0, 2.0, 3.0, 4.0]).is_ok());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(TimeSeries::new(vec![1.0, f64::NAN, 3.0, 4.0]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::INFINITY, 3.0, 4.0]).is_err());
    }

    #[test]
    fn demeaned_sums_to_zero() {
        let ts = TimeSeries::new(vec![1.0, 2.0, 3.0, 10.0]).unwrap();
        let s: f64 = ts.demeaned().iter().sum();
        assert!(s.abs() < 1e-12);
    }
}
