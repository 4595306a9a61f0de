//! `classify`: row-class membership sweeps and separating-witness search.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use summability_core::{classify, find_separating_witness, ClassReport, SequenceClass};

use crate::commands::{build_matrix, CliError, Outcome};
use crate::config::RunConfig;
use crate::output::{csv_f64, OutputWriter};

#[derive(Serialize)]
struct RowVerdict {
    n: usize,
    #[serde(flatten)]
    report: ClassReport,
}

#[derive(Serialize)]
struct WitnessResult {
    target_in: SequenceClass,
    target_out: SequenceClass,
    trials: usize,
    row: Option<Vec<f64>>,
    in_constant: Option<f64>,
}

pub fn run(cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    if let Some(witness) = cfg.witness.as_deref() {
        return run_witness(cfg, writer, witness);
    }
    let class: SequenceClass = cfg
        .class
        .as_deref()
        .ok_or_else(|| CliError::Config("classify needs --class or --witness".into()))?
        .parse()?;
    let n_max = cfg.n_max.unwrap_or(64);
    if n_max < 1 {
        return Err(CliError::Config("classification needs rows of length >= 2".into()));
    }
    let matrix = build_matrix(cfg, n_max)?;
    // Row 0 is a single entry and carries no variation; the sweep starts at 1.
    let verdicts: Vec<RowVerdict> = (1..=n_max)
        .map(|n| -> Result<RowVerdict, CliError> {
            Ok(RowVerdict {
                n,
                report: classify(matrix.row(n)?, class)?,
            })
        })
        .collect::<Result<_, _>>()?;
    let all_in = verdicts.iter().all(|v| v.report.in_class);
    let max_constant = verdicts
        .iter()
        .map(|v| v.report.constant)
        .fold(0.0f64, f64::max);
    let verifies = "class conditions (4)/(5) on matrix rows";
    writer.write_json("report.json", "classify", verifies, &verdicts)?;
    let rows: Vec<String> = verdicts
        .iter()
        .map(|v| {
            format!(
                "{},{},{},{},{}",
                v.n,
                v.report.class_label,
                v.report.in_class,
                csv_f64(v.report.constant),
                v.report.witness_m
            )
        })
        .collect();
    writer.write_csv("table.csv", verifies, "n,class,in_class,constant,witness_m", &rows)?;
    writer.write_text("matrix.csv", &matrix.to_csv_string())?;
    let constants: Vec<(f64, f64)> = verdicts
        .iter()
        .filter(|v| v.report.constant.is_finite())
        .map(|v| (v.n as f64, v.report.constant))
        .collect();
    writer.write_text(
        "plot.svg",
        &crate::svg::log_log_plot(
            &format!("{class} constants of {} rows", matrix.name()),
            "n",
            "minimal constant",
            &[crate::svg::Series {
                label: "constant",
                color: "#1f77b4",
                points: &constants,
            }],
        ),
    )?;
    println!(
        "classify {}: {} rows 1..={} against {class}: all_in={all_in}, max constant {}",
        matrix.name(),
        n_max,
        n_max,
        csv_f64(max_constant)
    );
    Ok(Outcome::from_bool(all_in))
}

fn run_witness(cfg: &RunConfig, writer: &OutputWriter, witness: &str) -> Result<Outcome, CliError> {
    let (target_in, target_out) = match witness {
        "mrbvs-not-rbvs" => (SequenceClass::Mrbvs, SequenceClass::Rbvs),
        "mhbvs-not-hbvs" => (SequenceClass::Mhbvs, SequenceClass::Hbvs),
        other => {
            return Err(CliError::Config(format!(
                "unknown witness target '{other}' (mrbvs-not-rbvs | mhbvs-not-hbvs)"
            )))
        }
    };
    let length = cfg.witness_len.unwrap_or(8);
    let trials = cfg.witness_trials.unwrap_or(100_000);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
    let row = find_separating_witness(target_in, target_out, length, trials, &mut rng)?;
    let in_constant = row
        .as_deref()
        .map(|r| classify(r, target_in).map(|c| c.constant))
        .transpose()?;
    let result = WitnessResult {
        target_in,
        target_out,
        trials,
        row: row.clone(),
        in_constant,
    };
    let verifies = "strict class inclusions (RBVS in MRBVS, HBVS in MHBVS)";
    writer.write_json("report.json", "classify", verifies, &result)?;
    match &row {
        Some(r) => {
            let cells: Vec<String> = r.iter().map(|v| csv_f64(*v)).collect();
            writer.write_csv("table.csv", verifies, "k,value", &r
                .iter()
                .enumerate()
                .map(|(k, v)| format!("{k},{}", csv_f64(*v)))
                .collect::<Vec<_>>())?;
            println!(
                "witness {witness} found (length {length}): [{}]",
                cells.join(", ")
            );
            Ok(Outcome::Pass)
        }
        None => {
            println!("witness {witness}: not found within {trials} trials");
            Ok(Outcome::Fail)
        }
    }
}
