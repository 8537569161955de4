//! Spectrum-based estimation of the bivariate Hurst exponent.
//!
//! Long-range cross-correlated series have a cross-power spectrum diverging
//! at the origin as `|f_xy(lambda)| ~ lambda^(1 - 2*H_xy)`. This crate
//! provides:
//!
//! * [`spectral`] — Fourier frequencies, discrete transforms, raw and
//!   Daniell-smoothed cross-periodograms;
//! * [`estimators`] — the averaged periodogram (APE), cross-periodogram
//!   regression (XPE) and local X-Whittle (LXW) estimators of `H_xy`;
//! * [`arfima`] — correlated and mixed-correlated ARFIMA(0,d,0) pair
//!   simulators with reproducible seeding;
//! * [`study`] — a Monte Carlo harness sweeping innovation correlation and
//!   bandwidth, reducing replications to mean/variance/bias tables.

pub mod arfima;
pub mod error;
pub mod estimators;
pub mod series;
pub mod spectral;
pub mod study;

pub use error::{Error, Result};
pub use series::TimeSeries;
