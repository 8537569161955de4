//! Monte Carlo study harness: sweep model family, innovation correlation and
//! bandwidth, reduce replications to mean/variance/bias tables.
//!
//! Replications run in parallel; per-replication seeds are derived from the
//! base seed, and per-cell estimates are collected in replication order
//! before reduction, so the summary is byte-identical at any parallelism
//! degree.

use rayon::prelude::*;

use crate::arfima::{
    derive_replication_seed, simulate_correlated_arfima, simulate_mc_arfima, ArfimaSpec,
    McArfimaSpec,
};
use crate::error::{Error, Result};
use crate::estimators::{
    ape_from_spectrum, lxw_from_spectrum, xpe_from_spectrum, Bandwidth, EstimatorConfig,
    EstimatorKind,
};
use crate::spectral::{cross_periodogram, daniell_smooth};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    CorrelatedArfima,
    McArfima,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::CorrelatedArfima => "arfima",
            Model::McArfima => "mc-arfima",
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full study specification. The correlated family reads `d[0]`, `d[1]`;
/// the mixed family uses all four with the inner streams (2, 3) correlated
/// at each swept rho.
#[derive(Debug, Clone)]
pub struct StudyGrid {
    pub model: Model,
    pub d: [f64; 4],
    pub rho_values: Vec<f64>,
    pub m_over_t_values: Vec<f64>,
    pub t_len: usize,
    pub replications: usize,
    pub smoothing_span: usize,
    pub burn_in: usize,
    pub base_seed: u64,
}

impl StudyGrid {
    /// Correlated ARFIMA defaults: d1 = d2 = 0.4, rho in 0.2..=1.0 step 0.2,
    /// m/T in 0.05..=0.5 step 0.05, T = 5000, 1000 replications, span 21.
    pub fn correlated(base_seed: u64) -> Self {
        Self {
            model: Model::CorrelatedArfima,
            d: [0.4, 0.4, 0.0, 0.0],
            rho_values: default_rho_grid(),
            m_over_t_values: default_m_grid(),
            t_len: 5000,
            replications: 1000,
            smoothing_span: 21,
            burn_in: 2000,
            base_seed,
        }
    }

    /// Mixed-correlated defaults: d1 = d4 = 0.4, d2 = d3 = 0.2, same sweep.
    pub fn mixed(base_seed: u64) -> Self {
        Self {
            model: Model::McArfima,
            d: [0.4, 0.2, 0.2, 0.4],
            ..Self::correlated(base_seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidConfig("need at least one replication".into()));
        }
        if self.t_len < 4 {
            return Err(Error::InvalidConfig(format!("need T >= 4, got {}", self.t_len)));
        }
        if self.rho_values.is_empty() || self.m_over_t_values.is_empty() {
            return Err(Error::InvalidConfig("empty rho or m/T grid".into()));
        }
        for &rho in &self.rho_values {
            if !(rho.is_finite() && rho.abs() <= 1.0) {
                return Err(Error::InvalidConfig(format!("rho {rho} outside [-1, 1]")));
            }
        }
        for &f in &self.m_over_t_values {
            if !(f.is_finite() && f > 0.0 && f <= 0.5) {
                return Err(Error::InvalidConfig(format!("m/T {f} outside (0, 0.5]")));
            }
        }
        if self.smoothing_span != 0 && (self.smoothing_span < 3 || self.smoothing_span.is_multiple_of(2)) {
            return Err(Error::InvalidConfig(format!(
                "smoothing span must be 0 or odd >= 3, got {}",
                self.smoothing_span
            )));
        }
        for &d in &self.d {
            if !(d > -0.5 && d < 0.5) {
                return Err(Error::InvalidConfig(format!("d {d} outside (-0.5, 0.5)")));
            }
        }
        Ok(())
    }
}

fn default_rho_grid() -> Vec<f64> {
    vec![0.2, 0.4, 0.6, 0.8, 1.0]
}

fn default_m_grid() -> Vec<f64> {
    (1..=10).map(|k| k as f64 * 0.05).collect()
}

/// Theoretical bivariate Hurst exponent of the study family.
pub fn true_h_xy(grid: &StudyGrid) -> f64 {
    match grid.model {
        Model::CorrelatedArfima => 0.5 + (grid.d[0] + grid.d[1]) / 2.0,
        Model::McArfima => 0.5 + (grid.d[1] + grid.d[2]) / 2.0,
    }
}

/// One summary cell: a (rho, m/T, estimator) slice of the study.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub model: Model,
    pub rho: f64,
    pub m_over_t: f64,
    pub estimator: EstimatorKind,
    pub mean: f64,
    pub variance: f64,
    pub bias: f64,
    pub failed: usize,
    pub reps_used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudySummary {
    pub model: Model,
    pub t_len: usize,
    pub true_h: f64,
    pub rows: Vec<SummaryRow>,
}

impl StudySummary {
    pub fn find(&self, estimator: EstimatorKind, rho: f64, m_over_t: f64) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| {
            r.estimator == estimator
                && (r.rho - rho).abs() < 1e-12
                && (r.m_over_t - m_over_t).abs() < 1e-12
        })
    }

    /// CSV with the fixed header `model,rho,m_over_T,estimator,mean,variance,bias,failed,reps`;
    /// floating-point fields carry 10 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("model,rho,m_over_T,estimator,mean,variance,bias,failed,reps\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.model,
                sig10(r.rho),
                sig10(r.m_over_t),
                r.estimator,
                sig10(r.mean),
                sig10(r.variance),
                sig10(r.bias),
                r.failed,
                r.reps_used
            ));
        }
        out
    }
}

/// Format with 10 significant digits, fixed notation for moderate exponents
/// and scientific otherwise (printf `%.10g` behavior).
pub fn sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.9e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("numeric exponent");
    if (-4..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        let trimmed = fixed.trim_end_matches('0').trim_end_matches('.');
        if trimmed == "-0" {
            "0".to_string()
        } else {
            trimmed.to_string()
        }
    } else {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}

/// Sample mean, unbiased variance (0 for a single observation) and bias
/// against the theoretical value.
pub fn summarize(estimates: &[f64], true_h: f64) -> Result<(f64, f64, f64)> {
    if estimates.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let variance = if estimates.len() == 1 {
        0.0
    } else {
        estimates.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (n - 1.0)
    };
    Ok((mean, variance, mean - true_h))
}

/// Estimates from one replication: `per_m[mi][k]` is estimator k (APE, XPE,
/// LXW) at bandwidth index mi, `None` when that estimator failed on this
/// sample.
struct ReplicationEstimates {
    per_m: Vec<[Option<f64>; 3]>,
}

/// Run the full sweep. Each replication simulates one pair per rho cell,
/// computes the smoothed cross-periodogram once, and evaluates every
/// estimator at every bandwidth on that shared spectrum.
pub fn run_study(grid: &StudyGrid) -> Result<StudySummary> {
    grid.validate()?;
    let true_h = true_h_xy(grid);
    let defaults = EstimatorConfig::new(Bandwidth::Fraction(0.1));
    let ms: Vec<usize> = grid
        .m_over_t_values
        .iter()
        .map(|&f| Bandwidth::Fraction(f).resolve(grid.t_len))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(grid.rho_values.len() * ms.len() * 3);
    for &rho in &grid.rho_values {
        let reps: Vec<Result<ReplicationEstimates>> = (0..grid.replications)
            .into_par_iter()
            .map(|r| replicate(grid, rho, &ms, &defaults, r as u64))
            .collect();

        let mut collected: Vec<ReplicationEstimates> = Vec::with_capacity(reps.len());
        for rep in reps {
            collected.push(rep?);
        }

        for (mi, &m_over_t) in grid.m_over_t_values.iter().enumerate() {
            for (k, &estimator) in EstimatorKind::ALL.iter().enumerate() {
                let values: Vec<f64> = collected
                    .iter()
                    .filter_map(|rep| rep.per_m[mi][k])
                    .collect();
                let failed = grid.replications - values.len();
                let (mean, variance, bias) = if values.is_empty() {
                    (f64::NAN, f64::NAN, f64::NAN)
                } else {
                    summarize(&values, true_h)?
                };
                rows.push(SummaryRow {
                    model: grid.model,
                    rho,
                    m_over_t,
                    estimator,
                    mean,
                    variance,
                    bias,
                    failed,
                    reps_used: values.len(),
                });
            }
        }
    }

    Ok(StudySummary {
        model: grid.model,
        t_len: grid.t_len,
        true_h,
        rows,
    })
}

fn replicate(
    grid: &StudyGrid,
    rho: f64,
    ms: &[usize],
    defaults: &EstimatorConfig,
    replication: u64,
) -> Result<ReplicationEstimates> {
    let seed = derive_replication_seed(grid.base_seed, replication);
    let (x, y) = match grid.model {
        Model::CorrelatedArfima => {
            let mut spec = ArfimaSpec::new(grid.d[0], grid.d[1], rho, grid.t_len);
            spec.burn_in = grid.burn_in;
            simulate_correlated_arfima(&spec, seed)?
        }
        Model::McArfima => {
            let mut spec = McArfimaSpec::coupled_inner(grid.d[0], grid.d[1], rho, grid.t_len);
            spec.d = grid.d;
            spec.burn_in = grid.burn_in;
            simulate_mc_arfima(&spec, seed)?
        }
    };

    let mut spectrum = cross_periodogram(&x, &y)?;
    if grid.smoothing_span != 0 {
        spectrum = daniell_smooth(&spectrum, grid.smoothing_span)?;
    }

    let mut per_m = Vec::with_capacity(ms.len());
    for &m in ms {
        let ape = settle(ape_from_spectrum(&spectrum, m, defaults.q))?;
        let xpe = settle(xpe_from_spectrum(&spectrum, m))?;
        let lxw = settle(lxw_from_spectrum(
            &spectrum,
            m,
            defaults.lxw_lower,
            defaults.lxw_upper,
            defaults.lxw_tol,
        ))?;
        per_m.push([ape, xpe, lxw]);
    }
    Ok(ReplicationEstimates { per_m })
}

/// Sample-level failures become `None` (counted per cell); anything else is
/// a configuration bug and propagates.
fn settle(result: Result<crate::estimators::EstimateResult>) -> Result<Option<f64>> {
    match result {
        Ok(r) => Ok(Some(r.h_xy)),
        Err(e) if e.is_sample_failure() => Ok(None),
        Err(e) => Err(e),
    }
}

/// OLS slope of log(variance) on log(m) over the m-grid of one
/// (estimator, rho) slice.
pub fn variance_scaling_exponent(
    summary: &StudySummary,
    estimator: EstimatorKind,
    rho: f64,
) -> Result<f64> {
    let mut points = Vec::new();
    for row in &summary.rows {
        if row.estimator == estimator && (row.rho - rho).abs() < 1e-12 {
            let m = Bandwidth::Fraction(row.m_over_t).resolve(summary.t_len)?;
            if row.variance.is_nan() || row.variance <= 0.0 {
                return Err(Error::LogOfZero(format!(
                    "variance {} at m/T = {} is not positive",
                    row.variance, row.m_over_t
                )));
            }
            points.push(((m as f64).ln(), row.variance.ln()));
        }
    }
    if points.len() < 3 {
        return Err(Error::InsufficientPoints(format!(
            "need at least 3 bandwidths, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in &points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn true_h_values() {
        let grid = StudyGrid::correlated(1);
        assert!((true_h_xy(&grid) - 0.9).abs() < 1e-15);
        let grid = StudyGrid::mixed(1);
        assert!((true_h_xy(&grid) - 0.7).abs() < 1e-15);
        let mut grid = StudyGrid::correlated(1);
        grid.d = [0.0, 0.0, 0.0, 0.0];
        assert_eq!(true_h_xy(&grid), 0.5);
    }

    #[test]
    fn summarize_hand_cases() {
        let (mean, var, bias) = summarize(&[0.9, 0.9, 0.9], 0.9).unwrap();
        assert_eq!((mean, var, bias), (0.9, 0.0, 0.0));
        let (mean, var, bias) = summarize(&[0.8, 1.0], 0.9).unwrap();
        assert!((mean - 0.9).abs() < 1e-15);
        assert!((var - 0.02).abs() < 1e-15);
        assert!(bias.abs() < 1e-15);
        assert!(matches!(summarize(&[], 0.9), Err(Error::EmptySample)));
    }

    #[test]
    fn summarize_normal_sample_variance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let draws: Vec<f64> = (0..1000)
            .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        let (_, var, _) = summarize(&draws, 0.0).unwrap();
        assert!((var - 1.0).abs() < 0.15, "variance {var}");
    }

    #[test]
    fn single_replication_study_shape() {
        let mut grid = StudyGrid::correlated(7);
        grid.t_len = 200;
        grid.burn_in = 100;
        grid.replications = 1;
        grid.rho_values = vec![0.8];
        grid.m_over_t_values = vec![0.1];
        let summary = run_study(&grid).unwrap();
        assert_eq!(summary.rows.len(), 3);
        for row in &summary.rows {
            assert_eq!(row.variance, 0.0);
            assert_eq!(row.reps_used + row.failed, 1);
            if row.reps_used > 0 {
                assert!((row.bias - (row.mean - summary.true_h)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn study_is_deterministic() {
        let mut grid = StudyGrid::mixed(99);
        grid.t_len = 256;
        grid.burn_in = 64;
        grid.replications = 4;
        grid.rho_values = vec![0.4, 0.8];
        grid.m_over_t_values = vec![0.1, 0.3];
        let a = run_study(&grid).unwrap();
        let b = run_study(&grid).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn scaling_exponent_exact_cases() {
        let mk = |variances: &[(f64, f64)]| StudySummary {
            model: Model::CorrelatedArfima,
            t_len: 1000,
            true_h: 0.9,
            rows: variances
                .iter()
                .map(|&(m_over_t, variance)| SummaryRow {
                    model: Model::CorrelatedArfima,
                    rho: 0.8,
                    m_over_t,
                    estimator: EstimatorKind::Lxw,
                    mean: 0.9,
                    variance,
                    bias: 0.0,
                    failed: 0,
                    reps_used: 10,
                })
                .collect(),
        };

        // v(m) = c/m gives slope exactly -1.
        let rows: Vec<(f64, f64)> = [0.05, 0.1, 0.2, 0.4]
            .iter()
            .map(|&f| (f, 3.0 / (f * 1000.0)))
            .collect();
        let slope = variance_scaling_exponent(&mk(&rows), EstimatorKind::Lxw, 0.8).unwrap();
        assert!((slope + 1.0).abs() < 1e-12);

        // Constant variance gives slope 0.
        let rows: Vec<(f64, f64)> = [0.05, 0.1, 0.2].iter().map(|&f| (f, 0.25)).collect();
        let slope = variance_scaling_exponent(&mk(&rows), EstimatorKind::Lxw, 0.8).unwrap();
        assert!(slope.abs() < 1e-12);

        // Two points are not enough.
        let rows: Vec<(f64, f64)> = [0.05, 0.1].iter().map(|&f| (f, 0.25)).collect();
        assert!(matches!(
            variance_scaling_exponent(&mk(&rows), EstimatorKind::Lxw, 0.8),
            Err(Error::InsufficientPoints(_))
        ));
    }

    #[test]
    fn csv_header_and_digits() {
        let mut grid = StudyGrid::correlated(3);
        grid.t_len = 128;
        grid.burn_in = 32;
        grid.replications = 2;
        grid.rho_values = vec![0.6];
        grid.m_over_t_values = vec![0.25];
        let summary = run_study(&grid).unwrap();
        let csv = summary.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "model,rho,m_over_T,estimator,mean,variance,bias,failed,reps"
        );
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.contains("arfima,0.6,0.25,"));
    }

    #[test]
    fn sig10_formatting() {
        assert_eq!(sig10(0.0), "0");
        assert_eq!(sig10(0.2), "0.2");
        assert_eq!(sig10(-0.05), "-0.05");
        assert_eq!(sig10(0.9), "0.9");
        assert_eq!(sig10(1.0 / 3.0), "0.3333333333");
        assert_eq!(sig10(12345.678901), "12345.6789");
        assert_eq!(sig10(1.5e-7), "1.5e-7");
        assert_eq!(sig10(2.0e12), "2e12");
        assert_eq!(sig10(f64::NAN), "NaN");
    }
}
