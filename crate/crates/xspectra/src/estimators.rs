//! The three spectrum-based estimators of the bivariate Hurst exponent.
//!
//! All three read the lowest `m` frequencies of a (smoothed) cross-
//! periodogram, where the cross-power spectrum of long-range cross-correlated
//! series diverges as `|f_xy(lambda)| ~ lambda^(1 - 2*H_xy)`:
//!
//! * APE — ratio of the cumulative co-spectrum at two cutoffs `q*lambda_m`
//!   and `lambda_m`;
//! * XPE — least-squares fit of `log|I_xy(lambda_j)|` on `log lambda_j`,
//!   slope `b` mapping to `H_xy = (1 - b) / 2`;
//! * LXW — minimizer of a Kuensch-type local likelihood over the admissible
//!   range (1/2, 1].
//!
//! Smoothing is applied before all three estimators; the raw cross-
//! periodogram is inconsistent. APE accumulates the real part (co-spectrum),
//! which preserves sign information and reduces to the ordinary periodogram
//! when x = y; magnitudes would bias the cumulative sum upward for weakly
//! coherent pairs.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::spectral::{cross_periodogram_opts, daniell_smooth, CrossSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    Ape,
    Xpe,
    Lxw,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 3] = [EstimatorKind::Ape, EstimatorKind::Xpe, EstimatorKind::Lxw];

    pub fn as_str(&self) -> &'static str {
        match self {
            EstimatorKind::Ape => "ape",
            EstimatorKind::Xpe => "xpe",
            EstimatorKind::Lxw => "lxw",
        }
    }
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Bandwidth, either a frequency count or a fraction of the series length.
/// A fraction resolves as `m = max(2, floor(fraction * T))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    Count(usize),
    Fraction(f64),
}

impl Bandwidth {
    pub fn resolve(&self, series_len: usize) -> Result<usize> {
        let half = series_len / 2;
        let m = match *self {
            Bandwidth::Count(m) => m,
            Bandwidth::Fraction(f) => {
                if !(f.is_finite() && f > 0.0 && f <= 0.5) {
                    return Err(Error::InvalidParameter {
                        name: "m_over_T",
                        reason: format!("bandwidth fraction must lie in (0, 0.5], got {f}"),
                    });
                }
                ((f * series_len as f64).floor() as usize).max(2)
            }
        };
        if m < 2 {
            return Err(Error::InsufficientPoints(format!(
                "bandwidth m must be at least 2, got {m}"
            )));
        }
        if m > half {
            return Err(Error::InvalidParameter {
                name: "m",
                reason: format!("bandwidth {m} exceeds floor(T/2) = {half}"),
            });
        }
        Ok(m)
    }
}

/// Shared estimator settings.
#[derive(Debug, Clone)]
pub struct EstimatorConfig {
    pub bandwidth: Bandwidth,
    /// APE cutoff ratio, in (0, 1).
    pub q: f64,
    /// Daniell span; 0 keeps the raw cross-periodogram.
    pub smoothing_span: usize,
    /// Mean-center the series before transforming.
    pub demean: bool,
    pub lxw_lower: f64,
    pub lxw_upper: f64,
    pub lxw_tol: f64,
}

impl EstimatorConfig {
    pub fn new(bandwidth: Bandwidth) -> Self {
        Self {
            bandwidth,
            q: 0.5,
            smoothing_span: 21,
            demean: true,
            lxw_lower: 0.5 + 1e-6,
            lxw_upper: 1.0,
            lxw_tol: 1e-6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_nan() || self.q <= 0.0 || self.q >= 1.0 {
            return Err(Error::InvalidParameter {
                name: "q",
                reason: format!("cutoff ratio must lie in (0, 1), got {}", self.q),
            });
        }
        if self.smoothing_span != 0 && (self.smoothing_span < 3 || self.smoothing_span.is_multiple_of(2)) {
            return Err(Error::InvalidParameter {
                name: "smoothing_span",
                reason: format!("span must be 0 or an odd integer >= 3, got {}", self.smoothing_span),
            });
        }
        if self.lxw_lower.is_nan() || self.lxw_upper.is_nan() || self.lxw_lower >= self.lxw_upper {
            return Err(Error::InvalidParameter {
                name: "lxw_lower",
                reason: format!(
                    "search bounds must satisfy lower < upper, got [{}, {}]",
                    self.lxw_lower, self.lxw_upper
                ),
            });
        }
        if self.lxw_tol.is_nan() || self.lxw_tol <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "lxw_tol",
                reason: format!("tolerance must be positive, got {}", self.lxw_tol),
            });
        }
        Ok(())
    }
}

/// Estimator-specific by-products of a fit.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostics {
    Ape { f_at_q_cutoff: f64, f_at_cutoff: f64 },
    Xpe { intercept: f64, slope_std_err: f64 },
    Lxw { objective: f64, boundary_hit: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub estimator: EstimatorKind,
    pub h_xy: f64,
    pub m_used: usize,
    pub diagnostics: Diagnostics,
}

/// Smoothed cross-periodogram as consumed by the estimators under `config`.
pub fn prepared_spectrum(x: &TimeSeries, y: &TimeSeries, config: &EstimatorConfig) -> Result<CrossSpectrum> {
    config.validate()?;
    let raw = cross_periodogram_opts(x, y, config.demean)?;
    if config.smoothing_span == 0 {
        Ok(raw)
    } else {
        daniell_smooth(&raw, config.smoothing_span)
    }
}

/// Cumulative co-spectrum `F(lambda) = (2*pi/m) * sum_{j=1..floor(m*lambda/(2*pi))} Re I_xy(lambda_j)`.
///
/// An index bound below 1 gives an empty sum and F = 0.
pub fn cumulative_cross_periodogram(spectrum: &CrossSpectrum, m: usize, lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "lambda",
            reason: format!("cutoff frequency must be positive, got {lambda}"),
        });
    }
    if m == 0 || m > spectrum.len() {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("bandwidth must lie in 1..={}, got {m}", spectrum.len()),
        });
    }
    // The 1e-9 nudge keeps floor() exact when m*lambda/(2*pi) lands on an
    // integer up to rounding (e.g. lambda at a Fourier multiple).
    let count = ((m as f64 * lambda / (2.0 * PI)) + 1e-9).floor() as usize;
    let count = count.min(spectrum.len());
    let sum: f64 = spectrum.values()[..count].iter().map(|v| v.re).sum();
    Ok(2.0 * PI / m as f64 * sum)
}

/// Averaged periodogram estimate on a prepared spectrum.
///
/// Evaluates the cumulative co-spectrum at `q*lambda_m` and `lambda_m`
/// (`lambda_m = 2*pi*m/T`), i.e. over the lowest `floor(q*m)` and `m`
/// Fourier frequencies, and maps the ratio through
/// `H_xy = 1 - log(F(q*lambda_m)/F(lambda_m)) / (2*log(q))`.
pub fn ape_from_spectrum(spectrum: &CrossSpectrum, m: usize, q: f64) -> Result<EstimateResult> {
    if q.is_nan() || q <= 0.0 || q >= 1.0 {
        return Err(Error::InvalidParameter {
            name: "q",
            reason: format!("cutoff ratio must lie in (0, 1), got {q}"),
        });
    }
    if m == 0 || m > spectrum.len() {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("bandwidth must lie in 1..={}, got {m}", spectrum.len()),
        });
    }
    let co_sum = |count: usize| -> f64 {
        2.0 * PI / m as f64 * spectrum.values()[..count].iter().map(|v| v.re).sum::<f64>()
    };
    let inner_count = ((q * m as f64) + 1e-9).floor() as usize;
    let f_at_cutoff = co_sum(m);
    let f_at_q_cutoff = co_sum(inner_count);
    if f_at_cutoff == 0.0 {
        return Err(Error::DegenerateInput(
            "cumulative co-spectrum vanishes at the outer cutoff".into(),
        ));
    }
    let ratio = f_at_q_cutoff / f_at_cutoff;
    if ratio <= 0.0 {
        return Err(Error::NonPositiveSpectrum(format!(
            "cumulative ratio {ratio} is not positive"
        )));
    }
    let h_xy = 1.0 - ratio.ln() / (2.0 * q.ln());
    Ok(EstimateResult {
        estimator: EstimatorKind::Ape,
        h_xy,
        m_used: m,
        diagnostics: Diagnostics::Ape { f_at_q_cutoff, f_at_cutoff },
    })
}

/// Cross-periodogram regression estimate on a prepared spectrum.
pub fn xpe_from_spectrum(spectrum: &CrossSpectrum, m: usize) -> Result<EstimateResult> {
    if m < 3 {
        return Err(Error::InsufficientPoints(format!(
            "regression needs m >= 3 frequencies, got {m}"
        )));
    }
    if m > spectrum.len() {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("bandwidth {m} exceeds spectrum length {}", spectrum.len()),
        });
    }
    let mut xs = Vec::with_capacity(m);
    let mut ys = Vec::with_capacity(m);
    for j in 0..m {
        let mag = spectrum.values()[j].norm();
        if mag == 0.0 {
            return Err(Error::LogOfZero(format!(
                "|I_xy| vanishes at frequency index {}",
                j + 1
            )));
        }
        xs.push(spectrum.grid().frequencies()[j].ln());
        ys.push(mag.ln());
    }

    let n = m as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let slope_std_err = if m > 2 { (ssr / (n - 2.0) / sxx).sqrt() } else { 0.0 };

    Ok(EstimateResult {
        estimator: EstimatorKind::Xpe,
        h_xy: (1.0 - slope) / 2.0,
        m_used: m,
        diagnostics: Diagnostics::Xpe { intercept, slope_std_err },
    })
}

/// Kuensch-type local likelihood
/// `R(h) = log((1/m) sum_j lambda_j^(2h-1) |I_xy(lambda_j)|) - (2h-1)/m * sum_j log lambda_j`.
///
/// As a function of h this is a log-sum-exp of affine terms minus a linear
/// term, hence convex; a bounded unimodal search finds its global minimum.
pub fn lxw_objective(spectrum: &CrossSpectrum, m: usize, h: f64) -> Result<f64> {
    if m < 2 || m > spectrum.len() {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("bandwidth must lie in 2..={}, got {m}", spectrum.len()),
        });
    }
    let exponent = 2.0 * h - 1.0;
    let mut weighted = 0.0;
    let mut log_sum = 0.0;
    for j in 0..m {
        let lambda = spectrum.grid().frequencies()[j];
        weighted += lambda.powf(exponent) * spectrum.values()[j].norm();
        log_sum += lambda.ln();
    }
    let mean = weighted / m as f64;
    if mean <= 0.0 {
        return Err(Error::LogOfZero(
            "cross-periodogram magnitudes sum to zero over the band".into(),
        ));
    }
    Ok(mean.ln() - exponent / m as f64 * log_sum)
}

/// Local X-Whittle estimate on a prepared spectrum: bounded scalar
/// minimization of [`lxw_objective`] over `[lower, upper]`.
pub fn lxw_from_spectrum(
    spectrum: &CrossSpectrum,
    m: usize,
    lower: f64,
    upper: f64,
    tol: f64,
) -> Result<EstimateResult> {
    if lower.is_nan() || upper.is_nan() || lower >= upper {
        return Err(Error::InvalidParameter {
            name: "lxw_lower",
            reason: format!("search bounds must satisfy lower < upper, got [{lower}, {upper}]"),
        });
    }
    let (h_xy, objective) =
        golden_section_min(|h| lxw_objective(spectrum, m, h), lower, upper, tol)?;
    let boundary_hit = (h_xy - lower) <= tol || (upper - h_xy) <= tol;
    Ok(EstimateResult {
        estimator: EstimatorKind::Lxw,
        h_xy,
        m_used: m,
        diagnostics: Diagnostics::Lxw { objective, boundary_hit },
    })
}

/// Golden-section search for the minimum of `f` on `[a, b]` to an interval
/// width of `tol`; returns the best probed `(x, f(x))`.
fn golden_section_min(
    f: impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    let xm = 0.5 * (a + b);
    let fm = f(xm)?;
    let mut best = (xm, fm);
    if f1 < best.1 {
        best = (x1, f1);
    }
    if f2 < best.1 {
        best = (x2, f2);
    }
    Ok(best)
}

/// Univariate asymptotic reference variance: `pi^2/(24 m)` for XPE and
/// `1/(4 m)` for LXW. APE has no published reference.
pub fn asymptotic_reference(estimator: EstimatorKind, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: "bandwidth must be positive".into(),
        });
    }
    match estimator {
        EstimatorKind::Xpe => Ok(PI * PI / (24.0 * m as f64)),
        EstimatorKind::Lxw => Ok(0.25 / m as f64),
        EstimatorKind::Ape => Err(Error::NoReference("ape")),
    }
}

pub fn estimate_ape(x: &TimeSeries, y: &TimeSeries, config: &EstimatorConfig) -> Result<EstimateResult> {
    let spectrum = prepared_spectrum(x, y, config)?;
    let m = config.bandwidth.resolve(x.len())?;
    ape_from_spectrum(&spectrum, m, config.q)
}

pub fn estimate_xpe(x: &TimeSeries, y: &TimeSeries, config: &EstimatorConfig) -> Result<EstimateResult> {
    let spectrum = prepared_spectrum(x, y, config)?;
    let m = config.bandwidth.resolve(x.len())?;
    xpe_from_spectrum(&spectrum, m)
}

pub fn estimate_lxw(x: &TimeSeries, y: &TimeSeries, config: &EstimatorConfig) -> Result<EstimateResult> {
    let spectrum = prepared_spectrum(x, y, config)?;
    let m = config.bandwidth.resolve(x.len())?;
    lxw_from_spectrum(&spectrum, m, config.lxw_lower, config.lxw_upper, config.lxw_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::fourier_frequencies;
    use num_complex::Complex64;

    /// Synthetic spectrum |I_xy(lambda_j)| = c * lambda_j^(1-2h) on the grid
    /// of a length-T series.
    fn power_law_spectrum(t_len: usize, h: f64, c: f64) -> CrossSpectrum {
        let grid = fourier_frequencies(t_len).unwrap();
        let values = grid
            .frequencies()
            .iter()
            .map(|&l| Complex64::new(c * l.powf(1.0 - 2.0 * h), 0.0))
            .collect();
        CrossSpectrum::from_values(grid, values).unwrap()
    }

    fn constant_spectrum(t_len: usize, c: f64) -> CrossSpectrum {
        let grid = fourier_frequencies(t_len).unwrap();
        let n = grid.len();
        CrossSpectrum::from_values(grid, vec![Complex64::new(c, 0.0); n]).unwrap()
    }

    #[test]
    fn bandwidth_resolution() {
        assert_eq!(Bandwidth::Fraction(0.1).resolve(5000).unwrap(), 500);
        assert_eq!(Bandwidth::Fraction(0.0004).resolve(5000).unwrap(), 2);
        assert_eq!(Bandwidth::Count(40).resolve(100).unwrap(), 40);
        assert!(Bandwidth::Count(1).resolve(100).is_err());
        assert!(Bandwidth::Count(51).resolve(100).is_err());
        assert!(Bandwidth::Fraction(0.6).resolve(100).is_err());
    }

    #[test]
    fn cumulative_empty_below_first_bin() {
        let spec = constant_spectrum(64, 1.0);
        // lambda below 2*pi/m floors to an empty sum.
        let m = 16;
        let lambda = 2.0 * PI / m as f64 * 0.99;
        assert_eq!(cumulative_cross_periodogram(&spec, m, lambda).unwrap(), 0.0);
    }

    #[test]
    fn cumulative_rejects_nonpositive_lambda() {
        let spec = constant_spectrum(64, 1.0);
        assert!(cumulative_cross_periodogram(&spec, 16, 0.0).is_err());
        assert!(cumulative_cross_periodogram(&spec, 16, -1.0).is_err());
    }

    #[test]
    fn cumulative_nondecreasing_for_self_spectrum() {
        let spec = power_law_spectrum(128, 0.8, 2.0);
        let m = 32;
        let mut prev = 0.0;
        for k in 1..=60 {
            let lambda = k as f64 * 0.05;
            let f = cumulative_cross_periodogram(&spec, m, lambda).unwrap();
            assert!(f >= prev);
            prev = f;
        }
    }

    #[test]
    fn ape_flat_spectrum_near_half() {
        // Constant spectrum: F grows linearly in the summand count, so the
        // ratio is q and the estimate sits at H = 0.5.
        let spec = constant_spectrum(4096, 1.0);
        let r = ape_from_spectrum(&spec, 1024, 0.5).unwrap();
        assert!((r.h_xy - 0.5).abs() < 1e-12, "got {}", r.h_xy);
    }

    #[test]
    fn ape_rejects_sign_flip() {
        let grid = fourier_frequencies(64).unwrap();
        let mut values = vec![Complex64::new(1.0, 0.0); 32];
        // Negative co-spectrum at the lowest frequency only: with m = 16 the
        // cutoff sums run over 8 (inner, q = 0.5) and 16 (outer) values, so
        // the inner sum is negative while the outer stays positive.
        values[0] = Complex64::new(-8.5, 0.0);
        let spec = CrossSpectrum::from_values(grid, values).unwrap();
        let err = ape_from_spectrum(&spec, 16, 0.5).unwrap_err();
        assert!(matches!(err, Error::NonPositiveSpectrum(_)), "{err}");
    }

    #[test]
    fn ape_scale_invariant() {
        let spec = power_law_spectrum(4096, 0.75, 1.0);
        let scaled = power_law_spectrum(4096, 0.75, 123.456);
        let a = ape_from_spectrum(&spec, 1024, 0.5).unwrap();
        let b = ape_from_spectrum(&scaled, 1024, 0.5).unwrap();
        assert!((a.h_xy - b.h_xy).abs() < 1e-12);
    }

    #[test]
    fn xpe_recovers_exact_power_law() {
        let spec = power_law_spectrum(2048, 0.9, 3.0);
        let r = xpe_from_spectrum(&spec, 512).unwrap();
        assert!((r.h_xy - 0.9).abs() < 1e-10);
        if let Diagnostics::Xpe { slope_std_err, .. } = r.diagnostics {
            assert!(slope_std_err < 1e-10);
        } else {
            panic!("wrong diagnostics variant");
        }
    }

    #[test]
    fn xpe_flat_spectrum_is_memoryless() {
        let spec = constant_spectrum(2048, 4.2);
        let r = xpe_from_spectrum(&spec, 512).unwrap();
        assert!((r.h_xy - 0.5).abs() < 1e-12);
    }

    #[test]
    fn xpe_needs_three_points() {
        let spec = constant_spectrum(64, 1.0);
        assert!(matches!(
            xpe_from_spectrum(&spec, 2),
            Err(Error::InsufficientPoints(_))
        ));
    }

    #[test]
    fn xpe_rejects_zero_magnitude() {
        let grid = fourier_frequencies(32).unwrap();
        let mut values = vec![Complex64::new(1.0, 0.0); 16];
        values[3] = Complex64::new(0.0, 0.0);
        let spec = CrossSpectrum::from_values(grid, values).unwrap();
        assert!(matches!(
            xpe_from_spectrum(&spec, 8),
            Err(Error::LogOfZero(_))
        ));
    }

    #[test]
    fn lxw_objective_closed_form_at_truth() {
        let (t_len, h0, c) = (512, 0.8, 2.5);
        let spec = power_law_spectrum(t_len, h0, c);
        let m = 128;
        let log_sum: f64 = spec.grid().frequencies()[..m].iter().map(|l| l.ln()).sum();
        let want = c.ln() - (2.0 * h0 - 1.0) / m as f64 * log_sum;
        let got = lxw_objective(&spec, m, h0).unwrap();
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn lxw_objective_grid_minimum_near_truth() {
        let spec = power_law_spectrum(512, 0.8, 1.0);
        let m = 128;
        let mut best = (f64::INFINITY, 0.0);
        for k in 51..=100 {
            let h = k as f64 / 100.0;
            let r = lxw_objective(&spec, m, h).unwrap();
            if r < best.0 {
                best = (r, h);
            }
        }
        assert!((best.1 - 0.8).abs() < 1e-12, "grid argmin {}", best.1);
    }

    #[test]
    fn lxw_objective_shift_under_scaling() {
        let spec = power_law_spectrum(512, 0.8, 1.0);
        let scaled = power_law_spectrum(512, 0.8, 7.0);
        let m = 128;
        for k in [55, 70, 85, 100] {
            let h = k as f64 / 100.0;
            let a = lxw_objective(&spec, m, h).unwrap();
            let b = lxw_objective(&scaled, m, h).unwrap();
            assert!((b - a - 7.0f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn lxw_recovers_power_law() {
        let spec = power_law_spectrum(4096, 0.9, 1.0);
        let r = lxw_from_spectrum(&spec, 1024, 0.5 + 1e-6, 1.0, 1e-6).unwrap();
        assert!((r.h_xy - 0.9).abs() < 1e-4, "got {}", r.h_xy);
    }

    #[test]
    fn lxw_pins_flat_spectrum_at_lower_bound() {
        let spec = constant_spectrum(2048, 1.0);
        let lower = 0.5 + 1e-6;
        let r = lxw_from_spectrum(&spec, 512, lower, 1.0, 1e-6).unwrap();
        assert!((r.h_xy - lower).abs() <= 1e-5, "got {}", r.h_xy);
        match r.diagnostics {
            Diagnostics::Lxw { boundary_hit, .. } => assert!(boundary_hit),
            _ => panic!("wrong diagnostics variant"),
        }
    }

    #[test]
    fn zero_spectrum_error_paths() {
        let spec = constant_spectrum(64, 0.0);
        assert!(matches!(
            ape_from_spectrum(&spec, 16, 0.5),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            xpe_from_spectrum(&spec, 16),
            Err(Error::LogOfZero(_))
        ));
        assert!(matches!(
            lxw_objective(&spec, 16, 0.8),
            Err(Error::LogOfZero(_))
        ));
    }

    #[test]
    fn reference_variances() {
        let xpe = asymptotic_reference(EstimatorKind::Xpe, 1).unwrap();
        assert!((xpe - 0.411234).abs() < 1e-6);
        let lxw = asymptotic_reference(EstimatorKind::Lxw, 1).unwrap();
        assert_eq!(lxw, 0.25);
        for m in [1, 10, 250, 2500] {
            let x = asymptotic_reference(EstimatorKind::Xpe, m).unwrap();
            let l = asymptotic_reference(EstimatorKind::Lxw, m).unwrap();
            assert!(l < x);
        }
        assert!(matches!(
            asymptotic_reference(EstimatorKind::Ape, 10),
            Err(Error::NoReference(_))
        ));
    }

    #[test]
    fn config_validation() {
        let mut cfg = EstimatorConfig::new(Bandwidth::Fraction(0.1));
        assert!(cfg.validate().is_ok());
        cfg.q = 1.0;
        assert!(cfg.validate().is_err());
        cfg.q = 0.5;
        cfg.smoothing_span = 4;
        assert!(cfg.validate().is_err());
        cfg.smoothing_span = 0;
        cfg.lxw_lower = 1.0;
        assert!(cfg.validate().is_err());
    }
}
