//! Flat JSON run configuration. Every option is also a command-line flag;
//! flags override file values. Unknown keys are rejected so that typos fail
//! loudly at parse time.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::commands::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Matrix family: `fejer`, `lal`, `norlund`, or `csv:PATH`.
    pub matrix: Option<String>,
    /// Weight sequence: `ones`, `harmonic`, `linear`, `geometric:R`, or `csv:PATH`.
    pub p_weights: Option<String>,
    /// Largest row index for generated matrices.
    pub n_max: Option<usize>,
    /// Class to verify: `rbvs`, `hbvs`, `mrbvs`, `mhbvs`.
    pub class: Option<String>,
    /// Witness search: `mrbvs-not-rbvs` or `mhbvs-not-hbvs`.
    pub witness: Option<String>,
    pub witness_len: Option<usize>,
    pub witness_trials: Option<usize>,
    /// Kernel check selector: 1 or 2.
    pub lemma: Option<u8>,
    pub kmax: Option<usize>,
    /// Grid size for kernel scans.
    pub grid: Option<usize>,
    /// Function: a corpus name (`absx:0.5`, `weierstrass:0.5`, `cos`,
    /// `sin3x`, `constant`, `hat`) or `csv:PATH`.
    pub function: Option<String>,
    /// Modulus: `power:A`, `powerlog:A,T`, or `csv:PATH` of `delta,omega` rows.
    pub omega: Option<String>,
    pub p: Option<f64>,
    pub beta: Option<f64>,
    /// Pointwise evaluation location; set it to run pointwise experiments.
    pub x: Option<f64>,
    pub gamma: Option<f64>,
    /// Accept beta >= 1 - 1/p provided t^-beta omega(t) is nondecreasing.
    pub remark5: Option<bool>,
    /// Degree list: `16..1024` (geometric doubling) or `4,8,12` (explicit).
    pub n_list: Option<String>,
    /// Bound variant: `thm1`, `thm2`, `thm3`, `remark1`.
    pub variant: Option<String>,
    /// `forward` (MRBVS pairing) or `reversed` (MHBVS pairing).
    pub orientation: Option<String>,
    pub corollary: Option<bool>,
    /// Comma-separated exponents for the rate suite.
    pub alpha: Option<String>,
    /// Comma-separated condition ids out of `2.6`, `2.7`, `2.8`, `Q`.
    pub conditions: Option<String>,
    /// Emit the membership sweep table alongside condition reports.
    pub membership: Option<bool>,
    pub out: Option<String>,
    /// X-integration range for the generalized modulus: `half` or `full`.
    pub domain: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub t_grid: Option<usize>,
    pub x_quad: Option<usize>,
    pub delta_grid: Option<usize>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }

    /// Overlays `flags` on top of `self`: any flag that was set wins.
    pub fn overlaid_with(mut self, flags: RunConfig) -> RunConfig {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if flags.$field.is_some() { self.$field = flags.$field; })*
            };
        }
        take!(
            matrix, p_weights, n_max, class, witness, witness_len, witness_trials, lemma, kmax,
            grid, function, omega, p, beta, x, gamma, remark5, n_list, variant, orientation,
            corollary, alpha, conditions, membership, out, domain, seed, threads, t_grid, x_quad,
            delta_grid
        );
        self
    }

    /// Canonical form: selector strings trimmed and lowercased (paths keep
    /// their case). Normalizing twice is a no-op, and a normalized config
    /// survives a JSON round trip unchanged.
    pub fn normalized(mut self) -> RunConfig {
        fn canon(s: &mut Option<String>) {
            if let Some(v) = s {
                let t = v.trim();
                *v = if t.starts_with("csv:") {
                    t.to_string()
                } else {
                    t.to_ascii_lowercase()
                };
            }
        }
        canon(&mut self.matrix);
        canon(&mut self.p_weights);
        canon(&mut self.class);
        canon(&mut self.witness);
        canon(&mut self.function);
        canon(&mut self.omega);
        canon(&mut self.n_list);
        canon(&mut self.variant);
        canon(&mut self.orientation);
        canon(&mut self.alpha);
        canon(&mut self.domain);
        if let Some(c) = &mut self.conditions {
            *c = c
                .split(',')
                .map(|s| s.trim().to_ascii_uppercase())
                .map(|s| if s == "Q" { s } else { s.to_ascii_lowercase() })
                .collect::<Vec<_>>()
                .join(",");
        }
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(42)
    }
}

/// Parses a degree specification: `A..B` doubles geometrically from A to B
/// (inclusive when hit exactly, else the last value below B is kept along
/// with B itself); `a,b,c` lists degrees explicitly.
pub fn parse_n_list(spec: &str) -> Result<Vec<usize>, CliError> {
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once("..") {
        let lo: usize = a
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad range start '{a}'")))?;
        let hi: usize = b
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad range end '{b}'")))?;
        if lo == 0 || hi < lo {
            return Err(CliError::Config(format!("empty degree range '{spec}'")));
        }
        let mut out = Vec::new();
        let mut n = lo;
        while n < hi {
            out.push(n);
            n *= 2;
        }
        out.push(hi);
        Ok(out)
    } else {
        spec.split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Config(format!("bad degree '{s}'")))
            })
            .collect()
    }
}

pub fn parse_f64_list(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad number '{s}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_config_round_trips() {
        let cfg = RunConfig {
            matrix: Some(" Fejer ".into()),
            function: Some("ABSX:0.5".into()),
            conditions: Some("2.6, q".into()),
            n_list: Some("16..512".into()),
            seed: Some(7),
            ..RunConfig::default()
        }
        .normalized();
        let json = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(cfg, back.clone().normalized());
        assert_eq!(back, back.clone().normalized());
        assert_eq!(cfg.matrix.as_deref(), Some("fejer"));
        assert_eq!(cfg.conditions.as_deref(), Some("2.6,Q"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = serde_json::from_str::<RunConfig>("{\"matrx\": \"fejer\"}");
        assert!(err.is_err());
    }

    #[test]
    fn degree_ranges_double() {
        assert_eq!(parse_n_list("16..512").unwrap(), vec![16, 32, 64, 128, 256, 512]);
        assert_eq!(parse_n_list("16..48").unwrap(), vec![16, 32, 48]);
        assert_eq!(parse_n_list("3,5,9").unwrap(), vec![3, 5, 9]);
        assert_eq!(parse_n_list("64").unwrap(), vec![64]);
        assert!(parse_n_list("0..8").is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let file = RunConfig {
            matrix: Some("fejer".into()),
            p: Some(2.0),
            ..RunConfig::default()
        };
        let flags = RunConfig {
            p: Some(3.0),
            ..RunConfig::default()
        };
        let merged = file.overlaid_with(flags);
        assert_eq!(merged.matrix.as_deref(), Some("fejer"));
        assert_eq!(merged.p, Some(3.0));
    }
}
