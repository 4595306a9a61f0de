//! Subcommand implementations and shared builders.

pub mod classify;
pub mod conditions;
pub mod corpus;
pub mod kernel;
pub mod rates;

use std::fmt;

use summability_core::matrix::{NorlundWeights, SummabilityMatrix};
use summability_core::moduli::ModulusSpec;
use summability_core::{Error as CoreError, PeriodicFunction};

use crate::config::RunConfig;

/// Exit-code contract: 0 pass, 1 assertion/membership failure, 2 usage or
/// configuration error.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            // A failed class precondition or a numerical breakdown is a
            // verification failure, not a usage error.
            CliError::Core(CoreError::NotInClass { .. })
            | CliError::Core(CoreError::QuadratureFailure(_)) => 1,
            CliError::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

/// Outcome of one subcommand run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {path}: {e}")))
}

pub fn build_weights(spec: &str, len: usize) -> Result<NorlundWeights, CliError> {
    if let Some(path) = spec.strip_prefix("csv:") {
        return Ok(NorlundWeights::from_csv_str(&read_file(path)?)?);
    }
    if let Some(ratio) = spec.strip_prefix("geometric:") {
        let ratio: f64 = ratio
            .parse()
            .map_err(|_| CliError::Config(format!("bad geometric ratio '{ratio}'")))?;
        return Ok(NorlundWeights::geometric(ratio, len)?);
    }
    match spec {
        "ones" => Ok(NorlundWeights::ones(len)),
        "harmonic" => Ok(NorlundWeights::harmonic(len)),
        "linear" => Ok(NorlundWeights::linear(len)),
        other => Err(CliError::Config(format!(
            "unknown weight sequence '{other}' (ones | harmonic | linear | geometric:R | csv:PATH)"
        ))),
    }
}

/// Builds the requested matrix with rows up to `n_max`.
pub fn build_matrix(cfg: &RunConfig, n_max: usize) -> Result<SummabilityMatrix, CliError> {
    let family = cfg.matrix.as_deref().unwrap_or("fejer");
    if let Some(path) = family.strip_prefix("csv:") {
        let m = SummabilityMatrix::from_csv_str(path.to_string(), &read_file(path)?)?;
        if m.n_max() < n_max {
            return Err(CliError::Config(format!(
                "matrix from {path} holds rows up to {}, need {n_max}",
                m.n_max()
            )));
        }
        return Ok(m);
    }
    let weights = || build_weights(cfg.p_weights.as_deref().unwrap_or("ones"), n_max + 1);
    match family {
        "fejer" => Ok(SummabilityMatrix::fejer(n_max)),
        "lal" => Ok(SummabilityMatrix::lal(&weights()?, n_max)?),
        "norlund" => Ok(SummabilityMatrix::norlund(&weights()?, n_max)?),
        other => Err(CliError::Config(format!(
            "unknown matrix family '{other}' (fejer | lal | norlund | csv:PATH)"
        ))),
    }
}

pub fn build_function(cfg: &RunConfig) -> Result<PeriodicFunction, CliError> {
    let spec = cfg
        .function
        .as_deref()
        .ok_or_else(|| CliError::Config("a function is required (--function)".into()))?;
    if let Some(path) = spec.strip_prefix("csv:") {
        return Ok(PeriodicFunction::from_csv_str(
            path.to_string(),
            &read_file(path)?,
        )?);
    }
    Ok(summability_core::corpus_item(spec)?)
}

/// Builds the comparison modulus; without an explicit spec it falls back to
/// `delta^{alpha + beta}` from the function's Lipschitz metadata.
pub fn build_omega(
    cfg: &RunConfig,
    f: &PeriodicFunction,
    beta: f64,
) -> Result<ModulusSpec, CliError> {
    match cfg.omega.as_deref() {
        Some(spec) => {
            if let Some(path) = spec.strip_prefix("csv:") {
                let text = read_file(path)?;
                let mut points = Vec::new();
                for (idx, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') || line.eq_ignore_ascii_case("delta,omega") {
                        continue;
                    }
                    let mut parts = line.split(',');
                    let bad =
                        || CliError::Config(format!("bad modulus table line {}", idx + 1));
                    let d: f64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
                    let w: f64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
                    points.push((d, w));
                }
                return Ok(ModulusSpec::user_table(points)?);
            }
            if let Some(alpha) = spec.strip_prefix("power:") {
                let alpha: f64 = alpha
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad exponent in '{spec}'")))?;
                return Ok(ModulusSpec::power(alpha)?);
            }
            if let Some(rest) = spec.strip_prefix("powerlog:") {
                let (a, t) = rest.split_once(',').ok_or_else(|| {
                    CliError::Config(format!("'{spec}' needs powerlog:ALPHA,THETA"))
                })?;
                let alpha: f64 = a
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad exponent in '{spec}'")))?;
                let theta: f64 = t
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad exponent in '{spec}'")))?;
                return Ok(ModulusSpec::power_log(alpha, theta)?);
            }
            Err(CliError::Config(format!(
                "unknown modulus '{spec}' (power:A | powerlog:A,T | csv:PATH)"
            )))
        }
        None => {
            let alpha = f.lipschitz_alpha().ok_or_else(|| {
                CliError::Config(format!(
                    "function '{}' carries no smoothness metadata; pass --omega",
                    f.name()
                ))
            })?;
            Ok(ModulusSpec::power((alpha + beta).min(1.0))?)
        }
    }
}

/// Shared parameter assembly from a config: `p` defaults to 2, `beta` to
/// half the admissible range capped at 1/4.
pub fn build_params(cfg: &RunConfig) -> Result<summability_core::ExperimentParams, CliError> {
    let p = cfg.p.unwrap_or(2.0);
    let beta = cfg
        .beta
        .unwrap_or_else(|| summability_core::harness::default_corollary_beta(p));
    let params = if cfg.remark5.unwrap_or(false) {
        summability_core::ExperimentParams::with_remark5(p, beta)
    } else {
        summability_core::ExperimentParams::new(p, beta)
    }?;
    Ok(params)
}

pub fn parse_domain(cfg: &RunConfig) -> Result<summability_core::XDomain, CliError> {
    match cfg.domain.as_deref() {
        None => Ok(summability_core::XDomain::Full),
        Some(s) => Ok(s.parse()?),
    }
}
