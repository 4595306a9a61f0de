//! Deterministic file emission: JSON reports with a metadata envelope, CSV
//! tables with a `# verifies:` comment line, and markdown summaries. Floats
//! are written through the shortest round-trip `Display`, so identical
//! computations produce byte-identical files.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::commands::CliError;
use crate::config::RunConfig;

pub struct OutputWriter {
    dir: Option<PathBuf>,
    /// Config echoed into reports, with run-environment fields (output
    /// directory, thread count) cleared so reruns compare byte-identical.
    echo: RunConfig,
    seed: u64,
}

/// Envelope shared by every `report.json`: the subcommand, the statement the
/// run verifies, the seed, and the normalized configuration.
#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    verifies: &'a str,
    seed: u64,
    config: &'a RunConfig,
    results: T,
}

impl OutputWriter {
    pub fn new(cfg: &RunConfig) -> Result<Self, CliError> {
        let dir = match cfg.out.as_deref() {
            Some(d) => {
                let path = PathBuf::from(d);
                std::fs::create_dir_all(&path)
                    .map_err(|e| CliError::Config(format!("cannot create {d}: {e}")))?;
                Some(path)
            }
            None => None,
        };
        let mut echo = cfg.clone();
        echo.out = None;
        echo.threads = None;
        Ok(Self {
            dir,
            echo,
            seed: cfg.seed(),
        })
    }

    fn path(&self, name: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(name))
    }

    pub fn write_json<T: Serialize>(
        &self,
        name: &str,
        command: &str,
        verifies: &str,
        results: &T,
    ) -> Result<(), CliError> {
        let Some(path) = self.path(name) else {
            return Ok(());
        };
        let report = Report {
            command,
            verifies,
            seed: self.seed,
            config: &self.echo,
            results,
        };
        let mut text = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Config(format!("serialization failed: {e}")))?;
        text.push('\n');
        write(&path, &text)
    }

    /// CSV with a leading `# verifies:` comment naming the checked statement.
    pub fn write_csv(
        &self,
        name: &str,
        verifies: &str,
        header: &str,
        rows: &[String],
    ) -> Result<(), CliError> {
        let Some(path) = self.path(name) else {
            return Ok(());
        };
        let mut text = format!("# verifies: {verifies}\n{header}\n");
        for row in rows {
            text.push_str(row);
            text.push('\n');
        }
        write(&path, &text)
    }

    pub fn write_text(&self, name: &str, text: &str) -> Result<(), CliError> {
        let Some(path) = self.path(name) else {
            return Ok(());
        };
        write(&path, text)
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

/// Renders a float for CSV: finite values via shortest round-trip display,
/// infinities as `inf`.
pub fn csv_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// A minimal pipe-delimited markdown table.
pub fn markdown_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", headers.join(" | ")));
    out.push_str(&format!(
        "|{}\n",
        headers.iter().map(|_| " --- |").collect::<String>()
    ));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out
}
