//! Fractionally integrated noise generators: correlated ARFIMA(0,d,0) pairs
//! and mixed-correlated ARFIMA pairs from four jointly correlated innovation
//! streams.
//!
//! The MA(inf) coefficients `a_n(d) = Gamma(n+d) / (Gamma(n+1) Gamma(d))` are
//! built with the stable multiplicative recursion `a_n = a_{n-1} (n-1+d)/n`.
//! The infinite sums are truncated at the available history; a burn-in prefix
//! (default 2000) absorbs the start-up transient and is discarded.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Below this length the fractional filter uses the direct O(N^2) sum;
/// above it, transform-based fast convolution.
const FFT_CONV_THRESHOLD: usize = 128;

/// MA(inf) coefficients of a fractional difference of order d.
#[derive(Debug, Clone)]
pub struct FracCoeffs {
    d: f64,
    coeffs: Vec<f64>,
}

impl FracCoeffs {
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Coefficients `a_0 ..= a_{n_max}`, with `a_0 = 1`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Coefficients `a_0 ..= a_{n_max}` for fractional order d in (-0.5, 0.5).
pub fn frac_coeffs(d: f64, n_max: usize) -> Result<FracCoeffs> {
    if !(d > -0.5 && d < 0.5) {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: format!("fractional order must lie in (-0.5, 0.5), got {d}"),
        });
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(1.0);
    for n in 1..=n_max {
        let prev = coeffs[n - 1];
        coeffs.push(prev * (n as f64 - 1.0 + d) / n as f64);
    }
    Ok(FracCoeffs { d, coeffs })
}

/// Derive the seed for one replication from a study-level base seed.
///
/// splitmix64-style mixing; parallel and serial sweeps that agree on
/// (base, index) agree on every stream.
pub fn derive_replication_seed(base_seed: u64, replication: u64) -> u64 {
    let mut z = base_seed.wrapping_add(replication.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Two standard-normal sequences with contemporaneous correlation `rho`:
/// `nu_t = rho * eps_t + sqrt(1 - rho^2) * eta_t`.
pub fn correlated_normals(rho: f64, n: usize, seed: u64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(rho.is_finite() && rho.abs() <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "rho",
            reason: format!("correlation must lie in [-1, 1], got {rho}"),
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "need a positive number of draws".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comp = (1.0 - rho * rho).sqrt();
    let mut eps = Vec::with_capacity(n);
    let mut nu = Vec::with_capacity(n);
    for _ in 0..n {
        let e: f64 = rng.sample(StandardNormal);
        let h: f64 = rng.sample(StandardNormal);
        eps.push(e);
        nu.push(rho * e + comp * h);
    }
    Ok((eps, nu))
}

/// Causal fractional filter: `out_t = sum_{n=0..t} a_n * u_{t-n}` (history
/// before the start treated as zero).
pub fn fractional_filter(innovations: &[f64], coeffs: &FracCoeffs) -> Result<Vec<f64>> {
    let n = innovations.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if coeffs.coeffs.len() < n {
        return Err(Error::InvalidParameter {
            name: "coeffs",
            reason: format!("need n_max >= {}, got {}", n - 1, coeffs.n_max()),
        });
    }
    if n < FFT_CONV_THRESHOLD {
        Ok(convolve_direct(innovations, &coeffs.coeffs[..n]))
    } else {
        Ok(convolve_fft(innovations, &coeffs.coeffs[..n]))
    }
}

fn convolve_direct(u: &[f64], a: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut out = vec![0.0; n];
    for (t, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (k, &ak) in a[..=t].iter().enumerate() {
            acc += ak * u[t - k];
        }
        *slot = acc;
    }
    out
}

fn convolve_fft(u: &[f64], a: &[f64]) -> Vec<f64> {
    let n = u.len();
    let size = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);

    let mut ubuf: Vec<Complex64> = u
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(size)
        .collect();
    let mut abuf: Vec<Complex64> = a
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(size)
        .collect();

    fwd.process(&mut ubuf);
    fwd.process(&mut abuf);
    for (x, y) in ubuf.iter_mut().zip(&abuf) {
        *x *= y;
    }
    inv.process(&mut ubuf);

    let scale = 1.0 / size as f64;
    ubuf[..n].iter().map(|v| v.re * scale).collect()
}

/// Parameters of a correlated ARFIMA(0,d,0) pair: `x` filters eps with d1,
/// `y` filters nu with d2, `corr(eps_t, nu_t) = rho`.
#[derive(Debug, Clone)]
pub struct ArfimaSpec {
    pub d1: f64,
    pub d2: f64,
    pub rho: f64,
    pub t_len: usize,
    pub burn_in: usize,
    pub sigma_eps: f64,
    pub sigma_nu: f64,
}

impl ArfimaSpec {
    pub fn new(d1: f64, d2: f64, rho: f64, t_len: usize) -> Self {
        Self {
            d1,
            d2,
            rho,
            t_len,
            burn_in: 2000,
            sigma_eps: 1.0,
            sigma_nu: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, d) in [("d1", self.d1), ("d2", self.d2)] {
            if !(d > -0.5 && d < 0.5) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("fractional order must lie in (-0.5, 0.5), got {d}"),
                });
            }
        }
        if !(self.rho.is_finite() && self.rho.abs() <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "rho",
                reason: format!("correlation must lie in [-1, 1], got {}", self.rho),
            });
        }
        if self.t_len < 4 {
            return Err(Error::InvalidLength(format!(
                "need T >= 4, got {}",
                self.t_len
            )));
        }
        for (name, s) in [("sigma_eps", self.sigma_eps), ("sigma_nu", self.sigma_nu)] {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("standard deviation must be positive, got {s}"),
                });
            }
        }
        Ok(())
    }
}

/// Simulate one correlated ARFIMA pair; deterministic given (spec, seed).
pub fn simulate_correlated_arfima(spec: &ArfimaSpec, seed: u64) -> Result<(TimeSeries, TimeSeries)> {
    spec.validate()?;
    let n = spec.t_len + spec.burn_in;
    let (mut eps, mut nu) = correlated_normals(spec.rho, n, seed)?;
    if spec.sigma_eps != 1.0 {
        for v in &mut eps {
            *v *= spec.sigma_eps;
        }
    }
    if spec.sigma_nu != 1.0 {
        for v in &mut nu {
            *v *= spec.sigma_nu;
        }
    }
    let cx = frac_coeffs(spec.d1, n - 1)?;
    let cy = frac_coeffs(spec.d2, n - 1)?;
    let x = fractional_filter(&eps, &cx)?;
    let y = fractional_filter(&nu, &cy)?;
    Ok((
        TimeSeries::new(x[spec.burn_in..].to_vec())?,
        TimeSeries::new(y[spec.burn_in..].to_vec())?,
    ))
}

/// Parameters of a mixed-correlated ARFIMA pair: `x = filter(d1, e1) +
/// filter(d2, e2)`, `y = filter(d3, e3) + filter(d4, e4)`, with the four
/// innovation streams jointly Gaussian under `correlation`.
#[derive(Debug, Clone)]
pub struct McArfimaSpec {
    pub d: [f64; 4],
    pub correlation: [[f64; 4]; 4],
    pub t_len: usize,
    pub burn_in: usize,
}

impl McArfimaSpec {
    /// Identity innovation correlation; set off-diagonals afterwards.
    pub fn new(d: [f64; 4], t_len: usize) -> Self {
        let mut correlation = [[0.0; 4]; 4];
        for (i, row) in correlation.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self {
            d,
            correlation,
            t_len,
            burn_in: 2000,
        }
    }

    /// The study family: `d = [d_outer, d_inner, d_inner, d_outer]` with the
    /// two inner streams correlated at `rho`, all other pairs independent.
    pub fn coupled_inner(d_outer: f64, d_inner: f64, rho: f64, t_len: usize) -> Self {
        let mut spec = Self::new([d_outer, d_inner, d_inner, d_outer], t_len);
        spec.set_correlation(1, 2, rho);
        spec
    }

    /// Set a symmetric off-diagonal entry (stream indices 0..4).
    pub fn set_correlation(&mut self, i: usize, j: usize, rho: f64) {
        self.correlation[i][j] = rho;
        self.correlation[j][i] = rho;
    }

    pub fn validate(&self) -> Result<()> {
        for (k, &d) in self.d.iter().enumerate() {
            if !(d > -0.5 && d < 0.5) {
                return Err(Error::InvalidParameter {
                    name: "d",
                    reason: format!("d[{k}] must lie in (-0.5, 0.5), got {d}"),
                });
            }
        }
        if self.t_len < 4 {
            return Err(Error::InvalidLength(format!(
                "need T >= 4, got {}",
                self.t_len
            )));
        }
        for i in 0..4 {
            if self.correlation[i][i] != 1.0 {
                return Err(Error::InvalidParameter {
                    name: "correlation",
                    reason: format!("diagonal entry ({i},{i}) must be 1"),
                });
            }
            for j in 0..4 {
                let v = self.correlation[i][j];
                if !(v.is_finite() && v.abs() <= 1.0) {
                    return Err(Error::InvalidParameter {
                        name: "correlation",
                        reason: format!("entry ({i},{j}) must lie in [-1, 1], got {v}"),
                    });
                }
                if (v - self.correlation[j][i]).abs() > 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "correlation",
                        reason: format!("matrix not symmetric at ({i},{j})"),
                    });
                }
            }
        }
        psd_factor(&self.correlation)?;
        Ok(())
    }
}

/// Lower-triangular square root of a positive semidefinite 4x4 matrix.
/// Zero pivots are tolerated so degenerate correlations (|rho| = 1)
/// factor exactly; genuinely indefinite input is rejected.
pub(crate) fn psd_factor(a: &[[f64; 4]; 4]) -> Result<[[f64; 4]; 4]> {
    const TOL: f64 = 1e-9;
    let mut l = [[0.0; 4]; 4];
    for j in 0..4 {
        let diag = a[j][j] - l[j][..j].iter().map(|v| v * v).sum::<f64>();
        if diag < -TOL {
            return Err(Error::InvalidParameter {
                name: "correlation",
                reason: "matrix is not positive semidefinite".into(),
            });
        }
        l[j][j] = diag.max(0.0).sqrt();
        for i in (j + 1)..4 {
            let cross: f64 = l[i][..j].iter().zip(&l[j][..j]).map(|(x, y)| x * y).sum();
            let s = a[i][j] - cross;
            if l[j][j] > TOL {
                l[i][j] = s / l[j][j];
            } else if s.abs() <= TOL {
                l[i][j] = 0.0;
            } else {
                return Err(Error::InvalidParameter {
                    name: "correlation",
                    reason: "matrix is not positive semidefinite".into(),
                });
            }
        }
    }
    Ok(l)
}

/// Simulate one mixed-correlated ARFIMA pair; deterministic given
/// (spec, seed).
pub fn simulate_mc_arfima(spec: &McArfimaSpec, seed: u64) -> Result<(TimeSeries, TimeSeries)> {
    spec.validate()?;
    let factor = psd_factor(&spec.correlation)?;
    let n = spec.t_len + spec.burn_in;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut streams = [
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    ];
    for _ in 0..n {
        let z: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        for (i, stream) in streams.iter_mut().enumerate() {
            let v: f64 = factor[i][..=i].iter().zip(&z).map(|(f, z)| f * z).sum();
            stream.push(v);
        }
    }

    let mut filtered = Vec::with_capacity(4);
    for (d, stream) in spec.d.iter().zip(&streams) {
        let coeffs = frac_coeffs(*d, n - 1)?;
        filtered.push(fractional_filter(stream, &coeffs)?);
    }

    let x: Vec<f64> = (spec.burn_in..n)
        .map(|t| filtered[0][t] + filtered[1][t])
        .collect();
    let y: Vec<f64> = (spec.burn_in..n)
        .map(|t| filtered[2][t] + filtered[3][t])
        .collect();
    Ok((TimeSeries::new(x)?, TimeSeries::new(y)?))
}
