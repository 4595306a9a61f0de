//! `rates`: norm/pointwise rate experiments and the power-scale rate suite.

use serde::Serialize;

use summability_core::harness::{corollary_suite, error_decomposition, CorollaryStatus};
use summability_core::{
    run_pointwise_experiment, run_rate_experiment, BoundVariant, Orientation, RateReport,
};

use crate::commands::{build_function, build_matrix, build_omega, build_params, CliError, Outcome};
use crate::config::{parse_f64_list, parse_n_list, RunConfig};
use crate::output::{csv_f64, markdown_table, OutputWriter};
use crate::svg::{log_log_plot, Series};

pub fn run(cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    if cfg.corollary.unwrap_or(false) {
        return run_suite(cfg, writer);
    }
    run_experiment(cfg, writer)
}

fn variant_from(cfg: &RunConfig, params: &summability_core::ExperimentParams) -> Result<BoundVariant, CliError> {
    match cfg.variant.as_deref() {
        None | Some("thm3") => Ok(BoundVariant::thm3(params)),
        Some(other) => Ok(other.parse()?),
    }
}

fn verifies_label(variant: BoundVariant, pointwise: bool) -> &'static str {
    match (variant, pointwise) {
        (BoundVariant::Thm1, _) => "theorem-1 pointwise estimate",
        (BoundVariant::Thm2, _) => "theorem-2 pointwise estimate",
        (BoundVariant::Remark1, _) => "theorem-3 norm estimate with the remark-1 reduction",
        (_, true) => "theorem-1/2 pointwise estimates",
        (_, false) => "theorem-3 norm estimate",
    }
}

#[derive(Serialize)]
struct SplitRow {
    n: usize,
    i1: f64,
    i2: f64,
}

#[derive(Serialize)]
struct RateResults {
    #[serde(flatten)]
    report: RateReport,
    /// Optional diagnostic: the error representation split at t = 2 pi / n.
    error_split: Option<Vec<SplitRow>>,
}

fn run_experiment(cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    let f = build_function(cfg)?;
    let params = build_params(cfg)?;
    let omega = build_omega(cfg, &f, params.beta())?;
    let ns = parse_n_list(cfg.n_list.as_deref().unwrap_or("16..512"))?;
    let max_n = *ns
        .iter()
        .max()
        .ok_or_else(|| CliError::Config("empty degree list".into()))?;
    let matrix = build_matrix(cfg, max_n)?;
    let orientation: Orientation = cfg.orientation.as_deref().unwrap_or("forward").parse()?;
    let variant = variant_from(cfg, &params)?;
    let report: RateReport = match cfg.x {
        Some(x) => run_pointwise_experiment(&f, &matrix, &omega, &params, x, &ns, variant, orientation)?,
        None => run_rate_experiment(&f, &matrix, &omega, &params, &ns, variant, orientation)?,
    };
    let error_split = match (cfg.x, cfg.i_split.unwrap_or(false)) {
        (Some(x), true) => Some(
            ns.iter()
                .filter(|&&n| n >= 2)
                .map(|&n| -> Result<SplitRow, CliError> {
                    let (i1, i2) = error_decomposition(&f, &matrix, n, x, 16 * n)?;
                    Ok(SplitRow { n, i1, i2 })
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
        _ => None,
    };
    let verifies = verifies_label(variant, cfg.x.is_some());
    let results = RateResults {
        report,
        error_split,
    };
    writer.write_json("report.json", "rates", verifies, &results)?;
    let report = results.report;
    let rows: Vec<String> = report
        .rows
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{}",
                r.n,
                csv_f64(r.error),
                csv_f64(r.bound),
                r.ratio.map(csv_f64).unwrap_or_default()
            )
        })
        .collect();
    writer.write_csv("table.csv", verifies, "n,error,bound,ratio", &rows)?;
    let errors: Vec<(f64, f64)> = report
        .rows
        .iter()
        .map(|r| (r.n as f64, r.error))
        .collect();
    let bounds: Vec<(f64, f64)> = report
        .rows
        .iter()
        .map(|r| (r.n as f64, r.bound))
        .collect();
    writer.write_text(
        "plot.svg",
        &log_log_plot(
            &format!(
                "{} on {} ({}, {})",
                matrix.name(),
                f.name(),
                verifies,
                report.orientation
            ),
            "n",
            "error / bound",
            &[
                Series {
                    label: "error",
                    color: "#1f77b4",
                    points: &errors,
                },
                Series {
                    label: "bound",
                    color: "#d62728",
                    points: &bounds,
                },
            ],
        ),
    )?;
    if report.degenerate {
        println!(
            "rates {} on {}: degenerate (all errors at machine floor); nothing to assert",
            matrix.name(),
            f.name()
        );
        return Ok(Outcome::Pass);
    }
    let pass = report.bounded_ok();
    println!(
        "rates {} on {}: slope {}, bounded-ratio proxy {}{}",
        matrix.name(),
        f.name(),
        report
            .slope
            .map(|s| format!("{s:.4}"))
            .unwrap_or_else(|| "n/a".into()),
        if pass { "holds" } else { "VIOLATED" },
        if report.class_ok {
            String::new()
        } else {
            format!(" (warning: rows not verified {})", report.class_label)
        }
    );
    Ok(Outcome::from_bool(pass))
}

fn run_suite(cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    let alphas = parse_f64_list(cfg.alpha.as_deref().unwrap_or("0.3,0.5,0.7"))?;
    let ps = match cfg.p {
        Some(p) => vec![p],
        None => vec![2.0],
    };
    let ns = parse_n_list(cfg.n_list.as_deref().unwrap_or("16..1024"))?;
    let entries = corollary_suite(&alphas, &ps, &ns)?;
    let verifies = "corollary rate -alpha for the uniform mean on exact-order members";
    writer.write_json("report.json", "rates", verifies, &entries)?;
    let mut csv_rows = Vec::new();
    let mut md_rows = Vec::new();
    let mut any_rejected = false;
    let mut all_pass = true;
    for e in &entries {
        match &e.status {
            CorollaryStatus::Ran {
                slope,
                slope_stderr,
                target,
                pass,
            } => {
                all_pass &= *pass;
                csv_rows.push(format!(
                    "{},{},{},{},{},{},{}",
                    e.alpha,
                    e.p,
                    e.beta,
                    csv_f64(*slope),
                    csv_f64(*slope_stderr),
                    csv_f64(*target),
                    pass
                ));
                md_rows.push(vec![
                    e.alpha.to_string(),
                    e.p.to_string(),
                    format!("{slope:.4}"),
                    format!("{target:.1}"),
                    pass.to_string(),
                ]);
                println!(
                    "corollary alpha={} p={}: slope {slope:.4} (target {target:.1}) {}",
                    e.alpha,
                    e.p,
                    if *pass { "ok" } else { "OUT OF BAND" }
                );
            }
            CorollaryStatus::Rejected { reason } => {
                any_rejected = true;
                csv_rows.push(format!("{},{},{},,,,rejected: {}", e.alpha, e.p, e.beta, reason));
                md_rows.push(vec![
                    e.alpha.to_string(),
                    e.p.to_string(),
                    "-".into(),
                    "-".into(),
                    format!("rejected: {reason}"),
                ]);
                println!("corollary alpha={} p={}: rejected ({reason})", e.alpha, e.p);
            }
        }
    }
    writer.write_csv(
        "table.csv",
        verifies,
        "alpha,p,beta,slope,stderr,target,pass",
        &csv_rows,
    )?;
    writer.write_text(
        "summary.md",
        &format!(
            "# Rate suite\n\n{}\n",
            markdown_table(&["alpha", "p", "slope", "target", "pass"], &md_rows)
        ),
    )?;
    if any_rejected {
        return Err(CliError::Config(
            "rate suite rejected one or more parameter combinations".into(),
        ));
    }
    Ok(Outcome::from_bool(all_pass))
}
