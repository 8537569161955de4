//! `xspectra` — simulate long-range cross-correlated pairs, estimate the
//! bivariate Hurst exponent from two-column CSV data, and run Monte Carlo
//! bias/variance studies over (rho, m/T) grids.
//!
//! Exit codes: 0 success, 2 usage/validation, 1 runtime failure.
//! `XSPECTRA_THREADS` caps internal parallelism (0 or unset = auto).

mod chart;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use xspectra::arfima::{simulate_correlated_arfima, simulate_mc_arfima, ArfimaSpec, McArfimaSpec};
use xspectra::estimators::{
    ape_from_spectrum, asymptotic_reference, lxw_from_spectrum, prepared_spectrum,
    xpe_from_spectrum, Bandwidth, Diagnostics, EstimateResult, EstimatorConfig, EstimatorKind,
};
use xspectra::study::{run_study, sig10, StudyGrid, StudySummary};

#[derive(Parser)]
#[command(
    name = "xspectra",
    version,
    about = "Bivariate Hurst exponent estimation from the cross-spectrum"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a correlated or mixed-correlated ARFIMA pair to CSV
    Simulate(SimulateArgs),
    /// Estimate H_xy from a two-column CSV file
    Estimate(EstimateArgs),
    /// Run a Monte Carlo study and write summary tables (and optional charts)
    Study(StudyArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ModelArg {
    Arfima,
    McArfima,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum EstimatorArg {
    Ape,
    Xpe,
    Lxw,
    All,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Csv,
    Plain,
}

#[derive(Args)]
struct SimulateArgs {
    /// Process family
    #[arg(long, value_enum, default_value_t = ModelArg::Arfima)]
    model: ModelArg,
    /// Fractional order d1 (default 0.4)
    #[arg(long)]
    d1: Option<f64>,
    /// Fractional order d2 (default 0.4; 0.2 for mc-arfima)
    #[arg(long)]
    d2: Option<f64>,
    /// Fractional order d3, mc-arfima only (default 0.2)
    #[arg(long)]
    d3: Option<f64>,
    /// Fractional order d4, mc-arfima only (default 0.4)
    #[arg(long)]
    d4: Option<f64>,
    /// Innovation correlation
    #[arg(long)]
    rho: f64,
    /// Series length
    #[arg(long = "T", default_value_t = 5000)]
    t_len: usize,
    /// Discarded start-up samples
    #[arg(long = "burn-in", default_value_t = 2000)]
    burn_in: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EstimateArgs {
    /// Input CSV with columns x,y (optional header row)
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = EstimatorArg::All)]
    estimator: EstimatorArg,
    /// Bandwidth as a frequency count
    #[arg(long, conflicts_with = "m_frac")]
    m: Option<usize>,
    /// Bandwidth as a fraction of the series length
    #[arg(long = "m-frac")]
    m_frac: Option<f64>,
    /// APE cutoff ratio
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Daniell span (0 = raw cross-periodogram)
    #[arg(long, default_value_t = 21)]
    window: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct StudyArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Arfima)]
    model: ModelArg,
    /// Series length per replication
    #[arg(long = "T", default_value_t = 5000)]
    t_len: usize,
    #[arg(long, default_value_t = 1000)]
    replications: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Directory for summary.csv and optional SVG charts
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
    /// Also write mean_<estimator>.svg and var_<estimator>.svg
    #[arg(long, default_value_t = false)]
    svg: bool,
    /// Comma-separated correlation grid override
    #[arg(long = "rho-list", value_delimiter = ',')]
    rho_list: Option<Vec<f64>>,
    /// Comma-separated m/T grid override
    #[arg(long = "m-frac-list", value_delimiter = ',')]
    m_frac_list: Option<Vec<f64>>,
    /// Daniell span (0 = raw cross-periodogram)
    #[arg(long, default_value_t = 21)]
    window: usize,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Study(args) => cmd_study(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() {
    if let Ok(raw) = std::env::var("XSPECTRA_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn check_fractional(name: &'static str, value: f64) -> Result<(), CliError> {
    if value > -0.5 && value < 0.5 {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "--{name} must lie in (-0.5, 0.5) (got {value})"
        )))
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    if !(args.rho.is_finite() && args.rho.abs() <= 1.0) {
        return Err(CliError::usage(format!(
            "--rho must lie in [-1, 1] (got {})",
            args.rho
        )));
    }
    if args.t_len < 4 {
        return Err(CliError::usage(format!(
            "--T must be at least 4 (got {})",
            args.t_len
        )));
    }

    let (x, y) = match args.model {
        ModelArg::Arfima => {
            let d1 = args.d1.unwrap_or(0.4);
            let d2 = args.d2.unwrap_or(0.4);
            check_fractional("d1", d1)?;
            check_fractional("d2", d2)?;
            let mut spec = ArfimaSpec::new(d1, d2, args.rho, args.t_len);
            spec.burn_in = args.burn_in;
            eprintln!(
                "simulate model=arfima d1={d1} d2={d2} rho={} T={} burn-in={} seed={} out={}",
                args.rho,
                args.t_len,
                args.burn_in,
                args.seed,
                args.out.display()
            );
            simulate_correlated_arfima(&spec, args.seed)
                .map_err(|e| CliError::runtime(e.to_string()))?
        }
        ModelArg::McArfima => {
            let d1 = args.d1.unwrap_or(0.4);
            let d2 = args.d2.unwrap_or(0.2);
            let d3 = args.d3.unwrap_or(0.2);
            let d4 = args.d4.unwrap_or(0.4);
            for (name, d) in [("d1", d1), ("d2", d2), ("d3", d3), ("d4", d4)] {
                check_fractional(name, d)?;
            }
            let mut spec = McArfimaSpec::new([d1, d2, d3, d4], args.t_len);
            spec.set_correlation(1, 2, args.rho);
            spec.burn_in = args.burn_in;
            eprintln!(
                "simulate model=mc-arfima d1={d1} d2={d2} d3={d3} d4={d4} sigma23={} T={} burn-in={} seed={} out={}",
                args.rho,
                args.t_len,
                args.burn_in,
                args.seed,
                args.out.display()
            );
            simulate_mc_arfima(&spec, args.seed).map_err(|e| CliError::runtime(e.to_string()))?
        }
    };

    table::write_series(&args.out, &x, &y).map_err(CliError::runtime)
}

fn bandwidth_from_flags(m: Option<usize>, m_frac: Option<f64>) -> Result<Bandwidth, CliError> {
    match (m, m_frac) {
        (Some(count), None) => Ok(Bandwidth::Count(count)),
        (None, Some(frac)) => Ok(Bandwidth::Fraction(frac)),
        (None, None) => Err(CliError::usage("one of --m or --m-frac is required")),
        (Some(_), Some(_)) => Err(CliError::usage("--m conflicts with --m-frac")),
    }
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), CliError> {
    let (x, y) = table::read_series(&args.input).map_err(CliError::runtime)?;

    let mut config = EstimatorConfig::new(bandwidth_from_flags(args.m, args.m_frac)?);
    config.q = args.q;
    config.smoothing_span = args.window;
    config.validate().map_err(|e| match e {
        xspectra::Error::InvalidParameter { name: "q", .. } => {
            CliError::usage(format!("--q must lie in (0, 1) (got {})", args.q))
        }
        xspectra::Error::InvalidParameter { name: "smoothing_span", .. } => CliError::usage(
            format!("--window must be 0 or an odd integer >= 3 (got {})", args.window),
        ),
        other => CliError::usage(other.to_string()),
    })?;
    if args.window != 0 && args.window > x.len() / 2 {
        return Err(CliError::usage(format!(
            "--window {} exceeds the spectrum length {}",
            args.window,
            x.len() / 2
        )));
    }

    let m = config.bandwidth.resolve(x.len()).map_err(|e| match e {
        xspectra::Error::InsufficientPoints(msg) => CliError::usage(msg),
        xspectra::Error::InvalidParameter { name: "m_over_T", .. } => CliError::usage(format!(
            "--m-frac must lie in (0, 0.5] (got {})",
            args.m_frac.unwrap_or(f64::NAN)
        )),
        xspectra::Error::InvalidParameter { name: "m", reason } => {
            CliError::usage(format!("--m is out of range: {reason}"))
        }
        other => CliError::usage(other.to_string()),
    })?;
    let spectrum = prepared_spectrum(&x, &y, &config)
        .map_err(|e| CliError::runtime(e.to_string()))?;

    let selected: Vec<EstimatorKind> = match args.estimator {
        EstimatorArg::Ape => vec![EstimatorKind::Ape],
        EstimatorArg::Xpe => vec![EstimatorKind::Xpe],
        EstimatorArg::Lxw => vec![EstimatorKind::Lxw],
        EstimatorArg::All => EstimatorKind::ALL.to_vec(),
    };

    for estimator in selected {
        let result = match estimator {
            EstimatorKind::Ape => ape_from_spectrum(&spectrum, m, config.q),
            EstimatorKind::Xpe => xpe_from_spectrum(&spectrum, m),
            EstimatorKind::Lxw => lxw_from_spectrum(
                &spectrum,
                m,
                config.lxw_lower,
                config.lxw_upper,
                config.lxw_tol,
            ),
        };
        match result {
            Ok(fit) => print_estimate(&fit, args.format),
            Err(e) if estimator == EstimatorKind::Ape && e.is_sample_failure() => {
                // Keep the one-row-per-estimator shape for scripts.
                eprintln!("warning: ape failed on this sample: {e}");
                match args.format {
                    FormatArg::Csv => println!("ape,NA,{m},NA,NA"),
                    FormatArg::Plain => println!("APE  H_xy = NA (m = {m}): {e}"),
                }
            }
            Err(e) => return Err(CliError::runtime(format!("{estimator}: {e}"))),
        }
    }
    Ok(())
}

fn print_estimate(fit: &EstimateResult, format: FormatArg) {
    match (format, &fit.diagnostics) {
        (FormatArg::Csv, Diagnostics::Ape { f_at_q_cutoff, f_at_cutoff }) => println!(
            "ape,{},{},{},{}",
            sig10(fit.h_xy),
            fit.m_used,
            sig10(*f_at_q_cutoff),
            sig10(*f_at_cutoff)
        ),
        (FormatArg::Csv, Diagnostics::Xpe { intercept, slope_std_err }) => println!(
            "xpe,{},{},{},{}",
            sig10(fit.h_xy),
            fit.m_used,
            sig10(*intercept),
            sig10(*slope_std_err)
        ),
        (FormatArg::Csv, Diagnostics::Lxw { objective, boundary_hit }) => println!(
            "lxw,{},{},{},{}",
            sig10(fit.h_xy),
            fit.m_used,
            sig10(*objective),
            u8::from(*boundary_hit)
        ),
        (FormatArg::Plain, Diagnostics::Ape { f_at_q_cutoff, f_at_cutoff }) => println!(
            "APE  H_xy = {:.6} (m = {}, F(q*lambda_m) = {:.6e}, F(lambda_m) = {:.6e})",
            fit.h_xy, fit.m_used, f_at_q_cutoff, f_at_cutoff
        ),
        (FormatArg::Plain, Diagnostics::Xpe { intercept, slope_std_err }) => println!(
            "XPE  H_xy = {:.6} (m = {}, intercept = {:.4}, slope se = {:.4})",
            fit.h_xy, fit.m_used, intercept, slope_std_err
        ),
        (FormatArg::Plain, Diagnostics::Lxw { objective, boundary_hit }) => println!(
            "LXW  H_xy = {:.6} (m = {}, objective = {:.6}, boundary hit = {})",
            fit.h_xy, fit.m_used, objective, boundary_hit
        ),
    }
}

fn cmd_study(args: StudyArgs) -> Result<(), CliError> {
    if args.replications == 0 {
        return Err(CliError::usage("--replications must be at least 1"));
    }
    if args.t_len < 4 {
        return Err(CliError::usage(format!(
            "--T must be at least 4 (got {})",
            args.t_len
        )));
    }
    if args.window != 0 && (args.window < 3 || args.window.is_multiple_of(2)) {
        return Err(CliError::usage(format!(
            "--window must be 0 or an odd integer >= 3 (got {})",
            args.window
        )));
    }

    let mut grid = match args.model {
        ModelArg::Arfima => StudyGrid::correlated(args.seed),
        ModelArg::McArfima => StudyGrid::mixed(args.seed),
    };
    grid.t_len = args.t_len;
    grid.replications = args.replications;
    grid.smoothing_span = args.window;
    if let Some(rhos) = args.rho_list {
        for &rho in &rhos {
            if !(rho.is_finite() && rho.abs() <= 1.0) {
                return Err(CliError::usage(format!(
                    "--rho-list entries must lie in [-1, 1] (got {rho})"
                )));
            }
        }
        grid.rho_values = rhos;
    }
    if let Some(fracs) = args.m_frac_list {
        for &f in &fracs {
            if !(f.is_finite() && f > 0.0 && f <= 0.5) {
                return Err(CliError::usage(format!(
                    "--m-frac-list entries must lie in (0, 0.5] (got {f})"
                )));
            }
        }
        grid.m_over_t_values = fracs;
    }

    std::fs::create_dir_all(&args.out_dir).map_err(|e| {
        CliError::runtime(format!("cannot create {}: {e}", args.out_dir.display()))
    })?;

    eprintln!(
        "study model={} T={} replications={} seed={} window={} rho={:?} m/T={:?}",
        grid.model, grid.t_len, grid.replications, grid.base_seed, grid.smoothing_span,
        grid.rho_values, grid.m_over_t_values
    );
    let summary = run_study(&grid).map_err(|e| CliError::runtime(e.to_string()))?;

    let csv_path = args.out_dir.join("summary.csv");
    std::fs::write(&csv_path, summary.to_csv())
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", csv_path.display())))?;
    eprintln!("wrote {}", csv_path.display());

    if args.svg {
        for estimator in EstimatorKind::ALL {
            for (prefix, variance) in [("mean", false), ("var", true)] {
                let chart = summary_chart(&summary, &grid, estimator, variance);
                let path = args.out_dir.join(format!("{prefix}_{estimator}.svg"));
                std::fs::write(&path, chart.render()).map_err(|e| {
                    CliError::runtime(format!("cannot write {}: {e}", path.display()))
                })?;
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

/// Mean chart: mean vs m/T, one grey curve per rho, red true-H line.
/// Variance chart: log-log variance vs m, red univariate reference curve for
/// XPE and LXW.
fn summary_chart(
    summary: &StudySummary,
    grid: &StudyGrid,
    estimator: EstimatorKind,
    variance: bool,
) -> chart::Chart {
    let count = grid.rho_values.len();
    let m_of = |m_over_t: f64| (m_over_t * grid.t_len as f64).floor().max(2.0);

    let series: Vec<chart::Series> = grid
        .rho_values
        .iter()
        .enumerate()
        .map(|(i, &rho)| chart::Series {
            label: format!("rho = {}", sig10(rho)),
            color: chart::grey_shade(i, count),
            points: grid
                .m_over_t_values
                .iter()
                .filter_map(|&m_over_t| {
                    let row = summary.find(estimator, rho, m_over_t)?;
                    if variance {
                        (row.variance > 0.0).then(|| (m_of(m_over_t), row.variance))
                    } else {
                        row.mean.is_finite().then_some((m_over_t, row.mean))
                    }
                })
                .collect(),
        })
        .collect();

    let reference = if variance {
        asymptotic_reference(estimator, 1).ok().map(|_| chart::Series {
            label: "univariate ref".into(),
            color: "#cc0000".into(),
            points: grid
                .m_over_t_values
                .iter()
                .map(|&m_over_t| {
                    let m = m_of(m_over_t);
                    (m, asymptotic_reference(estimator, m as usize).unwrap())
                })
                .collect(),
        })
    } else {
        let (lo, hi) = (
            grid.m_over_t_values.iter().cloned().fold(f64::INFINITY, f64::min),
            grid.m_over_t_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        );
        Some(chart::Series {
            label: format!("true H = {}", sig10(summary.true_h)),
            color: "#cc0000".into(),
            points: vec![(lo, summary.true_h), (hi, summary.true_h)],
        })
    };

    chart::Chart {
        title: format!(
            "{} of {} ({})",
            if variance { "variance" } else { "mean" },
            estimator,
            summary.model
        ),
        x_label: if variance { "m".into() } else { "m/T".into() },
        y_label: if variance { "variance".into() } else { "mean H_xy".into() },
        log_x: variance,
        log_y: variance,
        series,
        reference,
    }
}
