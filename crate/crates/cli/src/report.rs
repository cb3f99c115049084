//! Report documents and their two renderings: a human-readable key/value
//! tree (floats printed with 17 significant digits) and canonical JSON
//! (machine mode), which round-trips every f64 bit-exactly.

use betatrace_core::InferenceReport;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DatasetSummary {
    pub name: String,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InferenceSection {
    pub effect: f64,
    /// `None` at a perfect fit, where the F statistic is infinite.
    pub f_stat: Option<f64>,
    pub df1: usize,
    pub df2: usize,
    pub alpha: f64,
    pub beta: f64,
    pub p_exact: f64,
    pub wald_z: f64,
    pub p_wald: f64,
}

/// The `fit` subcommand's output document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportDocument {
    pub schema_version: String,
    pub dataset: DatasetSummary,
    pub inference: InferenceSection,
    /// Numerical residual |V − β̂| between the MANOVA and regression routes.
    pub equivalence: f64,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn new(
        dataset: DatasetSummary,
        report: &InferenceReport,
        equivalence: f64,
        warnings: Vec<String>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dataset,
            inference: InferenceSection {
                effect: report.effect,
                f_stat: report.f_stat,
                df1: report.df1,
                df2: report.df2,
                alpha: report.beta_params.alpha(),
                beta: report.beta_params.beta(),
                p_exact: report.p_exact,
                wald_z: report.wald_z,
                p_wald: report.p_wald,
            },
            equivalence,
            warnings,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SimConfigSection {
    pub n: usize,
    pub k: usize,
    pub replicates: usize,
    pub seed: u64,
    pub effect_strength: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CalibrationSection {
    pub empirical_mean: f64,
    pub empirical_var: f64,
    pub ks_distance: f64,
    pub p_uniformity_ks: f64,
    pub rejection_rate_at_05_exact: f64,
    pub rejection_rate_at_05_wald: f64,
}

/// The `simulate` subcommand's output document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CalibrationDocument {
    pub schema_version: String,
    pub config: SimConfigSection,
    pub calibration: CalibrationSection,
    pub resampled_draws: usize,
    pub warnings: Vec<String>,
}

/// 17 significant digits: enough to reproduce the f64 exactly.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_warnings(warnings: &[String], out: &mut String) {
    if warnings.is_empty() {
        out.push_str("warnings: (none)\n");
    } else {
        out.push_str("warnings:\n");
        for w in warnings {
            out.push_str(&format!("  - {w}\n"));
        }
    }
}

pub fn render_report_human(doc: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!("schema_version: {}\n", doc.schema_version));
    out.push_str("dataset:\n");
    out.push_str(&format!("  name: {}\n", doc.dataset.name));
    out.push_str(&format!("  n: {}\n", doc.dataset.n));
    out.push_str(&format!("  k: {}\n", doc.dataset.k));
    out.push_str("inference:\n");
    out.push_str(&format!("  effect: {}\n", fmt_float(doc.inference.effect)));
    match doc.inference.f_stat {
        Some(f) => out.push_str(&format!("  f_stat: {}\n", fmt_float(f))),
        None => out.push_str("  f_stat: undefined (perfect fit)\n"),
    }
    out.push_str(&format!("  df1: {}\n", doc.inference.df1));
    out.push_str(&format!("  df2: {}\n", doc.inference.df2));
    out.push_str(&format!("  alpha: {}\n", fmt_float(doc.inference.alpha)));
    out.push_str(&format!("  beta: {}\n", fmt_float(doc.inference.beta)));
    out.push_str(&format!("  p_exact: {}\n", fmt_float(doc.inference.p_exact)));
    out.push_str(&format!("  wald_z: {}\n", fmt_float(doc.inference.wald_z)));
    out.push_str(&format!("  p_wald: {}\n", fmt_float(doc.inference.p_wald)));
    out.push_str(&format!("equivalence: {}\n", fmt_float(doc.equivalence)));
    fmt_warnings(&doc.warnings, &mut out);
    out
}

pub fn render_calibration_human(doc: &CalibrationDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!("schema_version: {}\n", doc.schema_version));
    out.push_str("config:\n");
    out.push_str(&format!("  n: {}\n", doc.config.n));
    out.push_str(&format!("  k: {}\n", doc.config.k));
    out.push_str(&format!("  replicates: {}\n", doc.config.replicates));
    out.push_str(&format!("  seed: {}\n", doc.config.seed));
    out.push_str(&format!(
        "  effect_strength: {}\n",
        fmt_float(doc.config.effect_strength)
    ));
    out.push_str("calibration:\n");
    let c = &doc.calibration;
    out.push_str(&format!("  empirical_mean: {}\n", fmt_float(c.empirical_mean)));
    out.push_str(&format!("  empirical_var: {}\n", fmt_float(c.empirical_var)));
    out.push_str(&format!("  ks_distance: {}\n", fmt_float(c.ks_distance)));
    out.push_str(&format!(
        "  p_uniformity_ks: {}\n",
        fmt_float(c.p_uniformity_ks)
    ));
    out.push_str(&format!(
        "  rejection_rate_at_05_exact: {}\n",
        fmt_float(c.rejection_rate_at_05_exact)
    ));
    out.push_str(&format!(
        "  rejection_rate_at_05_wald: {}\n",
        fmt_float(c.rejection_rate_at_05_wald)
    ));
    out.push_str(&format!("resampled_draws: {}\n", doc.resampled_draws));
    fmt_warnings(&doc.warnings, &mut out);
    out
}

pub fn render_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization cannot fail");
    s.push('\n');
    s
}
