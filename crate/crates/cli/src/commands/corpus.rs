//! `corpus`: lists the built-in test functions and their metadata.

use serde::Serialize;

use crate::commands::{CliError, Outcome};
use crate::config::RunConfig;
use crate::output::OutputWriter;

#[derive(Serialize)]
struct CorpusEntry {
    name: String,
    lipschitz_alpha: Option<f64>,
    max_frequency: Option<usize>,
}

pub fn run(_cfg: &RunConfig, writer: &OutputWriter) -> Result<Outcome, CliError> {
    let entries: Vec<CorpusEntry> = summability_core::corpus()
        .iter()
        .map(|f| CorpusEntry {
            name: f.name().to_string(),
            lipschitz_alpha: f.lipschitz_alpha(),
            max_frequency: f.max_frequency(),
        })
        .collect();
    let verifies = "corpus membership metadata (Lip-alpha exemplars)";
    writer.write_json("report.json", "corpus", verifies, &entries)?;
    let rows: Vec<String> = entries
        .iter()
        .map(|e| {
            format!(
                "{},{},{}",
                e.name,
                e.lipschitz_alpha.map(|a| a.to_string()).unwrap_or_default(),
                e.max_frequency.map(|m| m.to_string()).unwrap_or_default()
            )
        })
        .collect();
    writer.write_csv("table.csv", verifies, "name,lipschitz_alpha,max_frequency", &rows)?;
    for e in &entries {
        println!(
            "{:<16} alpha={:<5} band_limit={}",
            e.name,
            e.lipschitz_alpha.map(|a| a.to_string()).unwrap_or_else(|| "-".into()),
            e.max_frequency.map(|m| m.to_string()).unwrap_or_else(|| "-".into())
        );
    }
    Ok(Outcome::Pass)
}
