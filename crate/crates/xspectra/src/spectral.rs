//! Fourier frequencies, discrete transforms, raw and Daniell-smoothed
//! cross-periodograms.
//!
//! The cross-periodogram of series x and y at Fourier frequency
//! `lambda_j = 2*pi*j/T` is
//!
//! ```text
//! I_xy(lambda_j) = w_x(lambda_j) * conj(w_y(lambda_j)) / (2*pi*T),
//! w_x(lambda)    = sum_{t=1..T} x_t * exp(-i*lambda*t)
//! ```
//!
//! for `j = 1..floor(T/2)`, so the spectrum lives on (0, pi]. The transform
//! sum starts at t = 1; relative to a conventional 0-based FFT that is a
//! per-frequency phase `exp(-i*lambda_j)`, which cancels in |I_xy| and in
//! x = y self-spectra but is applied anyway so complex values are
//! bit-reproducible against the definition.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Positive Fourier frequencies `2*pi*j/T`, `j = 1..floor(T/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    series_len: usize,
    frequencies: Vec<f64>,
}

impl FrequencyGrid {
    /// Length T of the series the grid was built for.
    pub fn series_len(&self) -> usize {
        self.series_len
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }
}

/// Cross-periodogram values on a [`FrequencyGrid`].
///
/// `smoothing_span` is 0 for a raw spectrum and the (odd) Daniell span
/// otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSpectrum {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
    smoothing_span: usize,
}

impl CrossSpectrum {
    /// Build a spectrum from precomputed values; mainly useful for feeding
    /// synthetic spectra to the estimators.
    pub fn from_values(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} spectrum values on a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values, smoothing_span: 0 })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn series_len(&self) -> usize {
        self.grid.series_len()
    }

    /// 0 when raw, the Daniell span after smoothing.
    pub fn smoothing_span(&self) -> usize {
        self.smoothing_span
    }
}

/// Fourier frequency grid for a length-T series.
pub fn fourier_frequencies(series_len: usize) -> Result<FrequencyGrid> {
    if series_len < 4 {
        return Err(Error::InvalidLength(format!(
            "need T >= 4 for a two-point frequency grid, got T = {series_len}"
        )));
    }
    let half = series_len / 2;
    let frequencies = (1..=half)
        .map(|j| 2.0 * PI * j as f64 / series_len as f64)
        .collect();
    Ok(FrequencyGrid { series_len, frequencies })
}

/// Transform values `w(lambda_j) = sum_{t=1..T} v_t exp(-i lambda_j t)` for
/// `j = 1..floor(T/2)`, computed via a full-length FFT plus the 1-based
/// phase shift.
fn transform(values: &[f64]) -> Vec<Complex64> {
    let t_len = values.len();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(t_len).process(&mut buf);
    let half = t_len / 2;
    (1..=half)
        .map(|j| {
            let lambda = 2.0 * PI * j as f64 / t_len as f64;
            Complex64::from_polar(1.0, -lambda) * buf[j]
        })
        .collect()
}

/// Discrete Fourier transform of a series at the positive Fourier
/// frequencies, time index starting at t = 1.
pub fn discrete_fourier(x: &TimeSeries) -> Vec<Complex64> {
    transform(x.values())
}

/// Raw cross-periodogram with mean-centering on (the default).
pub fn cross_periodogram(x: &TimeSeries, y: &TimeSeries) -> Result<CrossSpectrum> {
    cross_periodogram_opts(x, y, true)
}

/// Raw cross-periodogram; `demean` controls mean-centering before the
/// transform (removes zero-frequency leakage into `lambda_1` under
/// smoothing).
pub fn cross_periodogram_opts(x: &TimeSeries, y: &TimeSeries, demean: bool) -> Result<CrossSpectrum> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "series lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let t_len = x.len();
    let (wx, wy) = if demean {
        (transform(&x.demeaned()), transform(&y.demeaned()))
    } else {
        (transform(x.values()), transform(y.values()))
    };
    let scale = 1.0 / (2.0 * PI * t_len as f64);
    let values = wx
        .iter()
        .zip(&wy)
        .map(|(a, b)| a * b.conj() * scale)
        .collect();
    Ok(CrossSpectrum {
        grid: fourier_frequencies(t_len)?,
        values,
        smoothing_span: 0,
    })
}

/// Daniell smoothing: a moving average of `span` consecutive values with
/// half weights on the two window endpoints. Windows truncated by the
/// spectrum boundary keep their surviving weights, renormalized to sum
/// to one.
pub fn daniell_smooth(spectrum: &CrossSpectrum, span: usize) -> Result<CrossSpectrum> {
    let n = spectrum.len();
    if span < 3 || span.is_multiple_of(2) {
        return Err(Error::InvalidParameter {
            name: "span",
            reason: format!("span must be an odd integer >= 3, got {span}"),
        });
    }
    if span > n {
        return Err(Error::InvalidParameter {
            name: "span",
            reason: format!("span {span} exceeds spectrum length {n}"),
        });
    }

    let half = (span - 1) / 2;
    let interior_w = 1.0 / (span - 1) as f64;
    let boundary_w = 0.5 * interior_w;
    let values = spectrum.values();

    let smoothed = (0..n)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut total = 0.0;
            let lo = j.saturating_sub(half);
            let hi = (j + half).min(n - 1);
            for (k, value) in values.iter().enumerate().take(hi + 1).skip(lo) {
                let offset = k as isize - j as isize;
                let w = if offset.unsigned_abs() == half {
                    boundary_w
                } else {
                    interior_w
                };
                acc += value * w;
                total += w;
            }
            acc / total
        })
        .collect();

    Ok(CrossSpectrum {
        grid: spectrum.grid.clone(),
        values: smoothed,
        smoothing_span: span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(values: Vec<f64>) -> TimeSeries {
        TimeSeries::new(values).unwrap()
    }

    #[test]
    fn frequencies_even_length() {
        let grid = fourier_frequencies(8).unwrap();
        let expect = [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI];
        assert_eq!(grid.len(), 4);
        for (got, want) in grid.frequencies().iter().zip(expect) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn frequencies_odd_length() {
        let grid = fourier_frequencies(9).unwrap();
        assert_eq!(grid.len(), 4);
        let last = *grid.frequencies().last().unwrap();
        assert!((last - 8.0 * PI / 9.0).abs() < 1e-15);
        assert!(last < PI);
    }

    #[test]
    fn frequencies_study_length() {
        let grid = fourier_frequencies(5000).unwrap();
        assert_eq!(grid.len(), 2500);
        assert!((grid.frequencies()[0] - 2.0 * PI / 5000.0).abs() < 1e-18);
    }

    #[test]
    fn frequencies_reject_short() {
        assert!(fourier_frequencies(3).is_err());
    }

    #[test]
    fn transform_of_constant_vanishes() {
        let c = 3.25;
        let x = ts(vec![c; 64]);
        let w = discrete_fourier(&x);
        let tol = 1e-10 * 64.0 * c.abs();
        for v in w {
            assert!(v.norm() < tol, "nonzero transform of constant: {v}");
        }
    }

    #[test]
    fn transform_of_unit_impulse() {
        // x = (1, 0, 0, 0): w(lambda_1) = exp(-i*pi/2) = -i.
        let x = ts(vec![1.0, 0.0, 0.0, 0.0]);
        let w = discrete_fourier(&x);
        assert!((w[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn self_spectrum_real_nonnegative() {
        let x = ts((0..128).map(|t| ((t * t) % 17) as f64 - 8.0).collect());
        let spec = cross_periodogram(&x, &x).unwrap();
        for v in spec.values() {
            assert!(v.im.abs() <= 1e-12 * (v.re.abs() + 1.0));
            assert!(v.re >= -1e-12);
        }
    }

    #[test]
    fn conjugate_antisymmetry() {
        let x = ts((0..50).map(|t| (t as f64 * 0.7).sin()).collect());
        let y = ts((0..50).map(|t| (t as f64 * 1.3).cos() + 0.1 * t as f64).collect());
        let fxy = cross_periodogram(&x, &y).unwrap();
        let fyx = cross_periodogram(&y, &x).unwrap();
        for (a, b) in fxy.values().iter().zip(fyx.values()) {
            let scale = a.norm().max(1e-300);
            assert!((a - b.conj()).norm() / scale < 1e-12);
        }
    }

    #[test]
    fn length_mismatch_rejected() {
        let x = ts(vec![1.0; 8]);
        let y = ts(vec![1.0; 10]);
        assert!(matches!(
            cross_periodogram(&x, &y),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn smoothing_keeps_constant_sequence() {
        let grid = fourier_frequencies(40).unwrap();
        let c = Complex64::new(2.0, -1.0);
        let spec = CrossSpectrum::from_values(grid, vec![c; 20]).unwrap();
        for span in [3, 5, 9] {
            let sm = daniell_smooth(&spec, span).unwrap();
            assert_eq!(sm.smoothing_span(), span);
            for v in sm.values() {
                assert!((v - c).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn span_three_interior_weights() {
        let grid = fourier_frequencies(16).unwrap();
        let values: Vec<Complex64> = (0..8)
            .map(|k| Complex64::new(k as f64, (k * k) as f64))
            .collect();
        let spec = CrossSpectrum::from_values(grid, values.clone()).unwrap();
        let sm = daniell_smooth(&spec, 3).unwrap();
        for j in 1..7 {
            let want = values[j - 1] * 0.25 + values[j] * 0.5 + values[j + 1] * 0.25;
            assert!((sm.values()[j] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn smoothing_rejects_bad_span() {
        let grid = fourier_frequencies(16).unwrap();
        let spec = CrossSpectrum::from_values(grid, vec![Complex64::new(1.0, 0.0); 8]).unwrap();
        assert!(daniell_smooth(&spec, 4).is_err());
        assert!(daniell_smooth(&spec, 9).is_err());
        assert!(daniell_smooth(&spec, 1).is_err());
    }
}
