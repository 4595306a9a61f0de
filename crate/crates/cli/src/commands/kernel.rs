//! `kernel`: grid verification of the kernel bounds and the weighted
//! kernel-sum estimate.

use serde::Serialize;

use summability_core::kernels::check_lemma1_sweep;
use summability_core::{check_lemma2, KernelBoundReport, SequenceClass};

use crate::commands::{build_matrix, CliError, Outcome};
use crate::config::{parse_n_list, RunConfig};
use crate::output::{csv_f64, OutputWriter};

#[derive(Serialize)]
struct Lemma1Row {
    k: usize,
    t_bound: KernelBoundReport,
    degree_bound: KernelBoundReport,
}

pub fn run(cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    match cfg.lemma.unwrap_or(1) {
        1 => run_lemma1(cfg, writer),
        2 => run_lemma2(cfg, writer),
        other => Err(CliError::Config(format!(
            "unknown kernel check '{other}' (1 | 2)"
        ))),
    }
}

fn run_lemma1(cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    let kmax = cfg.kmax.unwrap_or(512);
    let grid = cfg.grid.unwrap_or(10_000);
    let reports: Vec<Lemma1Row> = check_lemma1_sweep(kmax, grid)
        .into_iter()
        .enumerate()
        .map(|(k, (t_bound, degree_bound))| Lemma1Row {
            k,
            t_bound,
            degree_bound,
        })
        .collect();
    let pass = reports
        .iter()
        .all(|r| r.t_bound.passes() && r.degree_bound.passes());
    let worst = reports
        .iter()
        .map(|r| r.t_bound.max_ratio.max(r.degree_bound.max_ratio))
        .fold(0.0f64, f64::max);
    let verifies = "lemma-1 kernel bounds pi/|t| and k+1";
    writer.write_json("report.json", "kernel", verifies, &reports)?;
    let rows: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{},{}",
                r.k,
                csv_f64(r.t_bound.max_ratio),
                csv_f64(r.t_bound.attained_t),
                csv_f64(r.degree_bound.max_ratio),
                csv_f64(r.degree_bound.attained_t)
            )
        })
        .collect();
    writer.write_csv(
        "table.csv",
        verifies,
        "k,t_bound_ratio,t_bound_attained,degree_bound_ratio,degree_bound_attained",
        &rows,
    )?;
    let t_pts: Vec<(f64, f64)> = reports
        .iter()
        .map(|r| (r.k as f64, r.t_bound.max_ratio))
        .collect();
    let d_pts: Vec<(f64, f64)> = reports
        .iter()
        .map(|r| (r.k as f64, r.degree_bound.max_ratio))
        .collect();
    writer.write_text(
        "plot.svg",
        &crate::svg::log_log_plot(
            "kernel bound ratios by degree",
            "k",
            "max normalized ratio",
            &[
                crate::svg::Series {
                    label: "|D_k| t / pi",
                    color: "#1f77b4",
                    points: &t_pts,
                },
                crate::svg::Series {
                    label: "|D_k| / (k+1)",
                    color: "#d62728",
                    points: &d_pts,
                },
            ],
        ),
    )?;
    println!(
        "kernel bounds: k <= {kmax} on {grid}-point grid: {} (worst normalized ratio {worst:.12})",
        if pass { "all hold" } else { "VIOLATED" }
    );
    Ok(Outcome::from_bool(pass))
}

fn run_lemma2(cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    let ns = parse_n_list(cfg.n_list.as_deref().unwrap_or("16..512"))?;
    let &max_n = ns
        .iter()
        .max()
        .ok_or_else(|| CliError::Config("empty degree list".into()))?;
    if ns.iter().any(|&n| n < 2) {
        return Err(CliError::Config("kernel-sum estimate needs n >= 2".into()));
    }
    let class: SequenceClass = cfg.class.as_deref().unwrap_or("mrbvs").parse()?;
    let matrix = build_matrix(cfg, max_n)?;
    let grid = cfg.grid.unwrap_or(2048);
    let reports: Vec<KernelBoundReport> = ns
        .iter()
        .map(|&n| check_lemma2(&matrix, n, class, grid))
        .collect::<Result<_, _>>()?;
    let ratios: Vec<f64> = reports.iter().map(|r| r.max_ratio).collect();
    let proxy = summability_core::numeric::bounded_ratio_proxy(&ratios, 1.5);
    let pass = proxy.map(|p| p.holds).unwrap_or(true);
    let verifies = "lemma-2 weighted kernel-sum estimate (non-growth proxy, factor 1.5)";
    writer.write_json("report.json", "kernel", verifies, &(&reports, &proxy))?;
    let rows: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{}",
                r.n,
                csv_f64(r.max_ratio),
                csv_f64(r.attained_t),
                r.skipped_points
            )
        })
        .collect();
    writer.write_csv("table.csv", verifies, "n,max_ratio,attained_t,skipped", &rows)?;
    let pts: Vec<(f64, f64)> = reports.iter().map(|r| (r.n as f64, r.max_ratio)).collect();
    writer.write_text(
        "plot.svg",
        &crate::svg::log_log_plot(
            &format!("kernel-sum ratio maxima on {} rows", matrix.name()),
            "n",
            "max ratio",
            &[crate::svg::Series {
                label: "max ratio",
                color: "#1f77b4",
                points: &pts,
            }],
        ),
    )?;
    println!(
        "kernel-sum estimate on {} ({class}): ratios {} -> {}: {}",
        matrix.name(),
        csv_f64(ratios.first().copied().unwrap_or(0.0)),
        csv_f64(ratios.last().copied().unwrap_or(0.0)),
        if pass { "stable" } else { "GROWING" }
    );
    Ok(Outcome::from_bool(pass))
}
