//! `conditions`: the integral growth conditions (2.6)/(2.7)/(2.8)/(Q), the
//! (Q) => (2.6) pairing, and the membership sweep table.

use serde::Serialize;

use summability_core::moduli::{lemma3_implication, membership_table, Lemma3Check, MembershipRow};
use summability_core::{evaluate_condition, ConditionId, ConditionReport};

use crate::commands::{build_function, build_omega, build_params, parse_domain, CliError, Outcome};
use crate::config::{parse_n_list, RunConfig};
use crate::output::{csv_f64, OutputWriter};

#[derive(Serialize)]
struct ConditionResults {
    reports: Vec<ConditionReport>,
    lemma3: Option<Lemma3Check>,
    membership: Option<Vec<MembershipRow>>,
    membership_constant: Option<f64>,
}

pub fn run(cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    let f = build_function(cfg)?;
    let params = build_params(cfg)?;
    let omega = build_omega(cfg, &f, params.beta())?;
    let x = cfg
        .x
        .ok_or_else(|| CliError::Config("conditions are pointwise; pass --x".into()))?;
    let params = params.at(x);
    let domain = parse_domain(cfg)?;
    let ns = parse_n_list(cfg.n_list.as_deref().unwrap_or("8..256"))?;
    let ids: Vec<ConditionId> = cfg
        .conditions
        .as_deref()
        .unwrap_or("2.6,2.7,2.8,Q")
        .split(',')
        .map(|s| s.parse::<ConditionId>().map_err(CliError::from))
        .collect::<Result<_, _>>()?;

    let reports: Vec<ConditionReport> = ids
        .iter()
        .map(|&id| evaluate_condition(&f, &omega, &params, id, cfg.gamma, &ns, domain))
        .collect::<Result<_, _>>()?;
    let lemma3 = if ids.contains(&ConditionId::Q) && ids.contains(&ConditionId::TwoSix) {
        Some(lemma3_implication(&f, &omega, &params, cfg.gamma, &ns, domain)?)
    } else {
        None
    };
    let (membership, membership_constant) = if cfg.membership.unwrap_or(false) {
        let rows = membership_table(
            &f,
            &omega,
            &params,
            cfg.delta_grid.unwrap_or(24),
            cfg.t_grid.unwrap_or(512),
            cfg.x_quad.unwrap_or(256),
            domain,
        )?;
        let constant = rows.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
        (Some(rows), Some(constant))
    } else {
        (None, None)
    };

    let verifies = "growth conditions (2.6)/(2.7)/(2.8)/(Q) and the (Q) => (2.6) implication";
    let results = ConditionResults {
        reports,
        lemma3,
        membership,
        membership_constant,
    };
    writer.write_json("report.json", "conditions", verifies, &results)?;
    let mut rows = Vec::new();
    for report in &results.reports {
        for r in &report.per_n {
            rows.push(format!(
                "{},{},{},{},{}",
                report.condition_id,
                r.n,
                csv_f64(r.lhs),
                csv_f64(r.rhs_scale),
                csv_f64(r.ratio)
            ));
        }
    }
    writer.write_csv("table.csv", verifies, "condition,n,lhs,rhs_scale,ratio", &rows)?;
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let pts: Vec<(String, Vec<(f64, f64)>)> = results
        .reports
        .iter()
        .map(|report| {
            (
                report.condition_id.to_string(),
                report
                    .per_n
                    .iter()
                    .map(|r| (r.n as f64, r.ratio))
                    .collect(),
            )
        })
        .collect();
    let series: Vec<crate::svg::Series<'_>> = pts
        .iter()
        .zip(colors.iter().cycle())
        .map(|((label, points), color)| crate::svg::Series {
            label,
            color,
            points,
        })
        .collect();
    writer.write_text(
        "plot.svg",
        &crate::svg::log_log_plot(
            &format!("condition ratios for {} at x = {x}", f.name()),
            "n",
            "lhs / rhs scale",
            &series,
        ),
    )?;
    if let Some(membership) = &results.membership {
        let rows: Vec<String> = membership
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{}",
                    csv_f64(r.delta),
                    csv_f64(r.omega_beta),
                    csv_f64(r.omega),
                    csv_f64(r.ratio)
                )
            })
            .collect();
        writer.write_csv(
            "membership.csv",
            "membership in the generalized Lipschitz class",
            "delta,omega_beta,omega,ratio",
            &rows,
        )?;
    }
    for report in &results.reports {
        println!(
            "condition {} at x={}: implied constant {}",
            report.condition_id,
            report.x,
            csv_f64(report.implied_constant)
        );
    }
    let pass = match &results.lemma3 {
        Some(check) => {
            println!(
                "(Q) bounded: {}, (2.6) bounded: {}, implication {}",
                check.q_bounded,
                check.c26_bounded,
                if check.implication_holds { "holds" } else { "VIOLATED" }
            );
            check.implication_holds
        }
        None => true,
    };
    Ok(Outcome::from_bool(pass))
}
