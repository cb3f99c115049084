//! `betatrace`: one interpretable coefficient for multivariate association.
//!
//! Subcommands:
//! - `fit` — load a CSV, estimate the effect, report exact Beta and Wald
//!   inference (one-sided upper tests).
//! - `verify` — certify numerically that the MANOVA trace, the regression
//!   effect, both R² values, and the F-statistic chain agree.
//! - `simulate` — run the Monte Carlo calibration harness.
//!
//! Exit codes: 0 success, 1 data/validation error, 2 numerical failure,
//! 3 usage error.

mod csv_input;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use betatrace_core::{
    beta_effect, f_from_r2, fit_multiple, fit_simple, pillai_trace, r2_from_f, Error,
    InferenceReport, SimConfig,
};
use csv_input::{load_csv, ColumnSpec, Dataset};
use error::CliError;
use report::{
    fmt_float, render_calibration_human, render_json, render_report_human, CalibrationDocument,
    CalibrationSection, DatasetSummary, ReportDocument, SimConfigSection, SCHEMA_VERSION,
};

/// Tolerance for the internal cross-check of the two computation routes.
const EQUIVALENCE_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "betatrace",
    version,
    about = "Single-coefficient multivariate association testing",
    long_about = "Estimates one regression effect for the association between a scalar \
                  predictor x and a block of response columns Y. The effect equals \
                  Pillai's trace and the shared R² of the underlying regressions; \
                  p-values are one-sided upper (the effect is a nonnegative \
                  association measure). Exit codes: 0 success, 1 data error, \
                  2 numerical failure, 3 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the effect on a CSV dataset and report exact and Wald inference
    Fit(FitArgs),
    /// Check the trace/effect/R²/F identity chain on a dataset
    Verify(VerifyArgs),
    /// Run the Monte Carlo calibration harness
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    /// Key/value tree for reading
    Human,
    /// Canonical JSON for pipelines
    Machine,
}

#[derive(Args)]
struct FitArgs {
    /// Input CSV file (comma-separated, mandatory header row)
    #[arg(long)]
    input: PathBuf,
    /// Predictor column: header name or zero-based index
    #[arg(long)]
    x: String,
    /// Response columns (comma-separated names or indices); default: all
    /// remaining numeric columns
    #[arg(long, value_delimiter = ',')]
    y: Option<Vec<String>>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input CSV file (comma-separated, mandatory header row)
    #[arg(long)]
    input: PathBuf,
    /// Predictor column: header name or zero-based index
    #[arg(long)]
    x: String,
    /// Response columns (comma-separated names or indices); default: all
    /// remaining numeric columns
    #[arg(long, value_delimiter = ',')]
    y: Option<Vec<String>>,
    /// Maximum admissible discrepancy between the identity-chain members
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct SimulateArgs {
    /// Observations per replicate (needs n ≥ k + 2)
    #[arg(long)]
    n: usize,
    /// Response columns per replicate
    #[arg(long)]
    k: usize,
    /// Number of replicates
    #[arg(long)]
    replicates: usize,
    /// RNG seed; fully determines the run
    #[arg(long)]
    seed: u64,
    /// Planted signal strength θ (x ← x + θ·Y·w, w = e₁); 0 = null
    #[arg(long, default_value_t = 0.0)]
    effect_strength: f64,
    /// Write the calibration document here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here as "errors"; they are
            // successful terminations, anything else is a usage error
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fit(args) => cmd_fit(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Simulate(args) => cmd_simulate(args),
    }
}

/// Rewrites a fitting error with dataset context so the offending column is
/// named, not just indexed.
fn describe_numerical_error(err: Error, data: &Dataset) -> CliError {
    match err {
        Error::RankDeficient { column } => {
            let name = data
                .y_names
                .get(column)
                .map(|s| s.as_str())
                .unwrap_or("<unknown>");
            CliError::Numerical(format!(
                "response column {name:?} (index {column}) is collinear with the \
                 preceding selected columns (after centering); drop or replace it"
            ))
        }
        Error::DegenerateX => CliError::Numerical(format!(
            "predictor column {:?} is constant, so the effect is undefined; \
             choose a predictor with variation",
            data.x_name
        )),
        Error::TooFewRows { n, k } => CliError::TooFewRows { n, k },
        other => CliError::Numerical(other.to_string()),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            file.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    let spec = ColumnSpec {
        x_column: args.x.clone(),
        y_columns: args.y.clone(),
    };
    let data = load_csv(&args.input, &spec)?;

    let effect = beta_effect(&data.x, &data.y).map_err(|e| describe_numerical_error(e, &data))?;
    let trace = pillai_trace(&data.x, &data.y)
        .map_err(|e| describe_numerical_error(e, &data))?
        .trace;

    let equivalence = (trace - effect).abs();
    let tol = EQUIVALENCE_TOL * (1.0 + trace.abs());
    if equivalence > tol {
        return Err(CliError::Equivalence {
            discrepancy: equivalence,
            tol,
        });
    }

    let mut warnings = Vec::new();
    // rounding inside the ±1e−10 slack is folded back into [0, 1] for the
    // inference formulas
    let effect_for_inference = effect.clamp(0.0, 1.0);
    if effect_for_inference >= 1.0 {
        warnings.push(
            "perfect fit: R² = 1, the F statistic is undefined and the exact p-value is 0"
                .to_string(),
        );
    }
    let inference = InferenceReport::from_effect(effect_for_inference, data.n(), data.k())
        .map_err(|e| describe_numerical_error(e, &data))?;

    let doc = ReportDocument::new(
        DatasetSummary {
            name: data.name.clone(),
            n: data.n(),
            k: data.k(),
        },
        &inference,
        equivalence,
        warnings,
    );
    let text = match args.format {
        Format::Human => render_report_human(&doc),
        Format::Machine => render_json(&doc),
    };
    emit(&text, args.out.as_ref())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(CliError::Usage(format!(
            "--tol must be nonnegative, got {}",
            args.tol
        )));
    }
    let spec = ColumnSpec {
        x_column: args.x.clone(),
        y_columns: args.y.clone(),
    };
    let data = load_csv(&args.input, &spec)?;

    let trace = pillai_trace(&data.x, &data.y)
        .map_err(|e| describe_numerical_error(e, &data))?
        .trace;
    let multi = fit_multiple(&data.x, &data.y).map_err(|e| describe_numerical_error(e, &data))?;
    let simple =
        fit_simple(&multi.score, &data.x).map_err(|e| describe_numerical_error(e, &data))?;
    let effect = simple.slope;
    let r2_multiple = multi.r_squared;
    let r2_simple = simple.r_squared;
    let chain = if r2_multiple < 1.0 {
        let f = f_from_r2(r2_multiple, data.n(), data.k())
            .map_err(|e| describe_numerical_error(e, &data))?;
        r2_from_f(f, data.n(), data.k()).map_err(|e| describe_numerical_error(e, &data))?
    } else {
        // F is infinite at R² = 1; the chain value is its limit
        1.0
    };

    let values = [
        ("pillai_trace", trace),
        ("beta_effect", effect),
        ("r_squared_multiple", r2_multiple),
        ("r_squared_simple", r2_simple),
        ("f_chain", chain),
    ];
    let mut max_discrepancy = 0.0_f64;
    for (i, &(_, a)) in values.iter().enumerate() {
        for &(_, b) in values.iter().skip(i + 1) {
            max_discrepancy = max_discrepancy.max((a - b).abs());
        }
    }

    println!("dataset: {} (n = {}, k = {})", data.name, data.n(), data.k());
    for (name, value) in values {
        println!("{name}: {}", fmt_float(value));
    }
    println!("max_discrepancy: {}", fmt_float(max_discrepancy));
    println!("tolerance: {}", fmt_float(args.tol));

    if max_discrepancy < args.tol {
        println!("verdict: PASS");
        Ok(())
    } else {
        println!("verdict: FAIL");
        Err(CliError::Equivalence {
            discrepancy: max_discrepancy,
            tol: args.tol,
        })
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    // flag combinations are rejected before any computation
    if args.k < 1 {
        return Err(CliError::Usage("--k must be at least 1".to_string()));
    }
    if args.n < args.k + 2 {
        return Err(CliError::Usage(format!(
            "--n must be at least k + 2 = {} (got {})",
            args.k + 2,
            args.n
        )));
    }
    if args.replicates < 1 {
        return Err(CliError::Usage(
            "--replicates must be at least 1".to_string(),
        ));
    }
    if args.effect_strength < 0.0 || !args.effect_strength.is_finite() {
        return Err(CliError::Usage(format!(
            "--effect-strength must be a finite nonnegative number, got {}",
            args.effect_strength
        )));
    }

    let config = SimConfig {
        n: args.n,
        k: args.k,
        replicates: args.replicates,
        seed: args.seed,
        effect_strength: args.effect_strength,
    };
    let (calibration, run) =
        betatrace_core::calibrate_with_run(&config).map_err(|e| CliError::Numerical(e.to_string()))?;

    let mut warnings = Vec::new();
    if run.resampled_draws > 0 {
        warnings.push(format!(
            "{} degenerate draw(s) were resampled with deterministic sub-seed bumps",
            run.resampled_draws
        ));
    }
    let doc = CalibrationDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        config: SimConfigSection {
            n: args.n,
            k: args.k,
            replicates: args.replicates,
            seed: args.seed,
            effect_strength: args.effect_strength,
        },
        calibration: CalibrationSection {
            empirical_mean: calibration.empirical_mean,
            empirical_var: calibration.empirical_var,
            ks_distance: calibration.ks_distance,
            p_uniformity_ks: calibration.p_uniformity_ks,
            rejection_rate_at_05_exact: calibration.rejection_rate_at_05_exact,
            rejection_rate_at_05_wald: calibration.rejection_rate_at_05_wald,
        },
        resampled_draws: run.resampled_draws,
        warnings,
    };
    emit(&render_calibration_human(&doc), args.out.as_ref())
}
