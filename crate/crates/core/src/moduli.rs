//! The symmetric second difference, the generalized modulus of continuity,
//! modulus-type comparison functions, and the integral growth conditions
//! (2.6), (2.7), (2.8), and (Q) evaluated by numerical quadrature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::fourier::PeriodicFunction;
use crate::numeric::{adaptive_quadrature, periodic_trapezoid, trapezoid, TWO_PI};
use crate::{Error, Result};

/// Default t-grid size for the sup defining the generalized modulus.
pub const DEFAULT_T_GRID: usize = 2048;
/// Default x-quadrature size for the inner integral.
pub const DEFAULT_X_QUAD: usize = 512;
/// Absolute quadrature tolerance per unit cell width inside conditions.
pub const CONDITION_QUAD_TOL: f64 = 1e-10;

/// Range of the inner x-integral. The defining display integrates x over
/// `[0, pi]` while the seminorm integrates over `[-pi, pi]`; both are
/// supported and every report records which was used. The choice affects
/// constants only, not rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum XDomain {
    Half,
    #[default]
    Full,
}

impl std::fmt::Display for XDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            XDomain::Half => "half",
            XDomain::Full => "full",
        })
    }
}

impl std::str::FromStr for XDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "half" => Ok(XDomain::Half),
            "full" => Ok(XDomain::Full),
            other => Err(Error::InvalidParams(format!("unknown domain '{other}'"))),
        }
    }
}

/// A modulus-of-continuity-type comparison function on `[0, 2*pi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ModulusSpec {
    /// `omega(delta) = delta^alpha`, `0 < alpha <= 1`.
    Power { alpha: f64 },
    /// `omega(delta) = delta^alpha * (1 + ln(2 pi / delta))^theta` with
    /// `0 <= theta <= alpha`, which keeps the function nondecreasing and
    /// `delta^{-1} omega(delta)` nonincreasing.
    PowerLog { alpha: f64, theta: f64 },
    /// Piecewise-linear interpolation of user-supplied `(delta, omega)`
    /// pairs; constant beyond the last node.
    UserTable { points: Vec<(f64, f64)> },
}

impl ModulusSpec {
    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "power modulus exponent must lie in (0, 1], got {alpha}"
            )));
        }
        Ok(ModulusSpec::Power { alpha })
    }

    pub fn power_log(alpha: f64, theta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) || !(theta >= 0.0 && theta <= alpha) {
            return Err(Error::InvalidParams(format!(
                "power-log modulus needs 0 < alpha <= 1, 0 <= theta <= alpha, got ({alpha}, {theta})"
            )));
        }
        Ok(ModulusSpec::PowerLog { alpha, theta })
    }

    pub fn user_table(mut points: Vec<(f64, f64)>) -> Result<Self> {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.is_empty() {
            return Err(Error::InvalidParams("empty modulus table".into()));
        }
        if points[0].0 < 0.0 {
            return Err(Error::InvalidParams("negative delta in table".into()));
        }
        if points[0].0 > 0.0 {
            points.insert(0, (0.0, 0.0));
        }
        let spec = ModulusSpec::UserTable { points };
        spec.validate_modulus_type()?;
        Ok(spec)
    }

    pub fn value(&self, delta: f64) -> f64 {
        if delta <= 0.0 {
            return 0.0;
        }
        match self {
            ModulusSpec::Power { alpha } => delta.powf(*alpha),
            ModulusSpec::PowerLog { alpha, theta } => {
                delta.powf(*alpha) * (1.0 + (TWO_PI / delta).ln()).powf(*theta)
            }
            ModulusSpec::UserTable { points } => {
                match points.binary_search_by(|&(d, _)| d.total_cmp(&delta)) {
                    Ok(i) => points[i].1,
                    Err(0) => 0.0,
                    Err(i) if i == points.len() => points[points.len() - 1].1,
                    Err(i) => {
                        let (d0, w0) = points[i - 1];
                        let (d1, w1) = points[i];
                        w0 + (w1 - w0) * (delta - d0) / (d1 - d0)
                    }
                }
            }
        }
    }

    /// Checks the modulus-type properties on a sampled grid: zero at zero,
    /// nondecreasing, and subadditive on a triangle of argument pairs
    /// (slack 1e-10).
    pub fn validate_modulus_type(&self) -> Result<()> {
        if self.value(0.0) != 0.0 {
            return Err(Error::InvalidParams("modulus must vanish at 0".into()));
        }
        let grid: Vec<f64> = (0..=64).map(|j| TWO_PI * j as f64 / 64.0).collect();
        for w in grid.windows(2) {
            if self.value(w[1]) < self.value(w[0]) - 1e-10 {
                return Err(Error::InvalidParams(format!(
                    "modulus decreases between {} and {}",
                    w[0], w[1]
                )));
            }
        }
        for &d1 in &grid {
            for &d2 in &grid {
                let s = d1 + d2;
                if d1 <= d2 && s <= TWO_PI && self.value(s) > self.value(d1) + self.value(d2) + 1e-10 {
                    return Err(Error::InvalidParams(format!(
                        "modulus is not subadditive at ({d1}, {d2})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Grid check that `delta^{-1} omega(delta)` is nonincreasing
    /// (quasi-monotonicity of modulus-type functions).
    pub fn quotient_nonincreasing_on_grid(&self, grid_size: usize) -> bool {
        let mut prev = f64::INFINITY;
        for j in 1..=grid_size {
            let d = TWO_PI * j as f64 / grid_size as f64;
            let q = self.value(d) / d;
            if q > prev + 1e-12 {
                return false;
            }
            prev = q;
        }
        true
    }
}

impl std::fmt::Display for ModulusSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModulusSpec::Power { alpha } => write!(f, "power:{alpha}"),
            ModulusSpec::PowerLog { alpha, theta } => write!(f, "powerlog:{alpha},{theta}"),
            ModulusSpec::UserTable { points } => write!(f, "table[{}]", points.len()),
        }
    }
}

/// Exponents for one experiment: the Lebesgue index `p`, its conjugate `q`,
/// the modulus weight `beta`, and an optional pointwise location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    p: f64,
    q: f64,
    beta: f64,
    pub x: Option<f64>,
    remark5: bool,
}

impl ExperimentParams {
    /// Standard hypothesis set: `1 < p < inf`, `0 <= beta < 1 - 1/p`.
    pub fn new(p: f64, beta: f64) -> Result<Self> {
        Self::build(p, beta, false)
    }

    /// Relaxation trading the `beta < 1 - 1/p` cap for the requirement that
    /// `t^{-beta} omega(t)` is nondecreasing; the property is validated
    /// against the modulus wherever one is supplied.
    pub fn with_remark5(p: f64, beta: f64) -> Result<Self> {
        Self::build(p, beta, true)
    }

    fn build(p: f64, beta: f64, remark5: bool) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "Lebesgue exponent must satisfy 1 < p < inf, got {p}"
            )));
        }
        if !(beta >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "beta must be nonnegative, got {beta}"
            )));
        }
        if !remark5 && beta >= 1.0 - 1.0 / p {
            return Err(Error::InvalidParams(format!(
                "beta = {beta} violates beta < 1 - 1/p = {}",
                1.0 - 1.0 / p
            )));
        }
        Ok(Self {
            p,
            q: p / (p - 1.0),
            beta,
            x: None,
            remark5,
        })
    }

    pub fn at(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn remark5(&self) -> bool {
        self.remark5
    }

    /// When the relaxed hypothesis is in force, verify on a grid that
    /// `t^{-beta} omega(t)` is nondecreasing.
    pub fn validate_against_modulus(&self, omega: &ModulusSpec) -> Result<()> {
        if !self.remark5 || self.beta < 1.0 - 1.0 / self.p {
            return Ok(());
        }
        let mut prev = 0.0f64;
        for j in 1..=256 {
            let t = TWO_PI * j as f64 / 256.0;
            let v = t.powf(-self.beta) * omega.value(t);
            if v < prev - 1e-12 {
                return Err(Error::InvalidParams(format!(
                    "t^-beta * omega(t) decreases near t = {t}; the relaxed beta range needs it nondecreasing"
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

/// The symmetric second difference `f(x + t) + f(x - t) - 2 f(x)`.
pub fn phi(f: &PeriodicFunction, x: f64, t: f64) -> f64 {
    f.eval(x + t) + f.eval(x - t) - 2.0 * f.eval(x)
}

/// Inner integral `int |phi_x(t)|^p dx` over the selected x-range.
fn phi_power_integral(f: &PeriodicFunction, t: f64, p: f64, x_quad: usize, domain: XDomain) -> f64 {
    match domain {
        XDomain::Full => {
            periodic_trapezoid(|x| phi(f, x, t).abs().powf(p), -PI, TWO_PI, x_quad)
        }
        XDomain::Half => trapezoid(|x| phi(f, x, t).abs().powf(p), 0.0, PI, x_quad),
    }
}

fn modulus_kernel_value(f: &PeriodicFunction, t: f64, params: &ExperimentParams, x_quad: usize, domain: XDomain) -> f64 {
    let inner = phi_power_integral(f, t, params.p(), x_quad, domain);
    (0.5 * t).sin().abs().powf(params.beta()) * inner.powf(1.0 / params.p())
}

/// T-grid for modulus sups: uniform points on `[0, hi]` together with the
/// partition points `pi / m`, where the extrema of the underlying kernel
/// estimates cluster.
fn modulus_t_grid(hi: f64, t_grid: usize) -> Vec<f64> {
    let mut ts: Vec<f64> = (0..=t_grid).map(|j| hi * j as f64 / t_grid as f64).collect();
    for m in 1..=t_grid {
        let t = PI / m as f64;
        if t <= hi {
            ts.push(t);
        }
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

/// The generalized modulus `omega_beta f(delta)_{L^p}`: the sup over
/// `0 <= t <= delta` of `|sin(t/2)|^beta * (int |phi_x(t)|^p dx)^{1/p}`,
/// approximated on a grid of `t_grid` uniform points plus the partition
/// points `pi / m`.
pub fn omega_beta(
    f: &PeriodicFunction,
    delta: f64,
    params: &ExperimentParams,
    t_grid: usize,
    x_quad: usize,
    domain: XDomain,
) -> Result<f64> {
    if !(0.0..=TWO_PI).contains(&delta) || !delta.is_finite() {
        return Err(Error::InvalidDelta(delta));
    }
    if t_grid < 2 {
        return Err(Error::InvalidParams("t-grid needs at least 2 points".into()));
    }
    if delta == 0.0 {
        return Ok(0.0);
    }
    let ts = modulus_t_grid(delta, t_grid);
    Ok(ts
        .into_iter()
        .filter(|&t| t > 0.0)
        .map(|t| modulus_kernel_value(f, t, params, x_quad, domain))
        .fold(0.0, f64::max))
}

/// Evaluates `omega_beta` at many deltas against one shared master t-grid
/// (prefix maxima over the increasing grid), so the sweep is exactly
/// nondecreasing in delta. Deltas must be sorted ascending within
/// `[0, 2*pi]`.
pub fn omega_beta_sweep(
    f: &PeriodicFunction,
    deltas: &[f64],
    params: &ExperimentParams,
    t_grid: usize,
    x_quad: usize,
    domain: XDomain,
) -> Result<Vec<f64>> {
    let Some(&hi) = deltas.last() else {
        return Ok(Vec::new());
    };
    for pair in deltas.windows(2) {
        if pair[1] < pair[0] {
            return Err(Error::InvalidParams("deltas must be sorted".into()));
        }
    }
    if !(0.0..=TWO_PI).contains(&hi) || deltas[0] < 0.0 {
        return Err(Error::InvalidDelta(hi));
    }
    let mut ts = modulus_t_grid(hi, t_grid);
    ts.extend(deltas.iter().copied());
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    use rayon::prelude::*;
    let values: Vec<f64> = ts
        .par_iter()
        .map(|&t| {
            if t == 0.0 {
                0.0
            } else {
                modulus_kernel_value(f, t, params, x_quad, domain)
            }
        })
        .collect();
    let mut prefix = values;
    for i in 1..prefix.len() {
        prefix[i] = prefix[i].max(prefix[i - 1]);
    }
    let mut out = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let idx = ts.partition_point(|&t| t <= d);
        out.push(if idx == 0 { 0.0 } else { prefix[idx - 1] });
    }
    Ok(out)
}

/// One row of the membership sweep table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MembershipRow {
    pub delta: f64,
    pub omega_beta: f64,
    pub omega: f64,
    pub ratio: f64,
}

/// Ratio table `omega_beta f(delta) / omega(delta)` over a geometric delta
/// grid spanning `[1e-3, pi]`.
pub fn membership_table(
    f: &PeriodicFunction,
    omega: &ModulusSpec,
    params: &ExperimentParams,
    delta_grid: usize,
    t_grid: usize,
    x_quad: usize,
    domain: XDomain,
) -> Result<Vec<MembershipRow>> {
    if delta_grid < 2 {
        return Err(Error::InvalidParams("delta grid needs >= 2 points".into()));
    }
    params.validate_against_modulus(omega)?;
    let (lo, hi) = (1e-3f64, PI);
    let deltas: Vec<f64> = (0..delta_grid)
        .map(|j| lo * (hi / lo).powf(j as f64 / (delta_grid - 1) as f64))
        .collect();
    let values = omega_beta_sweep(f, &deltas, params, t_grid, x_quad, domain)?;
    deltas
        .into_iter()
        .zip(values)
        .map(|(delta, ob)| {
            let w = omega.value(delta);
            if w <= 0.0 {
                return Err(Error::ZeroModulus(delta));
            }
            Ok(MembershipRow {
                delta,
                omega_beta: ob,
                omega: w,
                ratio: ob / w,
            })
        })
        .collect()
}

/// The empirical membership constant: the largest ratio in the sweep table.
pub fn membership_constant(
    f: &PeriodicFunction,
    omega: &ModulusSpec,
    params: &ExperimentParams,
    delta_grid: usize,
) -> Result<f64> {
    let rows = membership_table(
        f,
        omega,
        params,
        delta_grid,
        DEFAULT_T_GRID,
        DEFAULT_X_QUAD,
        XDomain::Full,
    )?;
    Ok(rows.iter().map(|r| r.ratio).fold(0.0, f64::max))
}

/// Identifier of one of the integral growth conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionId {
    #[serde(rename = "2.6")]
    TwoSix,
    #[serde(rename = "2.7")]
    TwoSeven,
    #[serde(rename = "2.8")]
    TwoEight,
    #[serde(rename = "Q")]
    Q,
}

impl std::fmt::Display for ConditionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConditionId::TwoSix => "2.6",
            ConditionId::TwoSeven => "2.7",
            ConditionId::TwoEight => "2.8",
            ConditionId::Q => "Q",
        })
    }
}

impl std::str::FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "2.6" => Ok(ConditionId::TwoSix),
            "2.7" => Ok(ConditionId::TwoSeven),
            "2.8" => Ok(ConditionId::TwoEight),
            "q" => Ok(ConditionId::Q),
            other => Err(Error::InvalidParams(format!("unknown condition '{other}'"))),
        }
    }
}

/// One scale comparison `LHS(n)` against `rhs_scale(n)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionRow {
    pub n: usize,
    pub lhs: f64,
    pub rhs_scale: f64,
    pub ratio: f64,
}

/// Result of evaluating one condition over a list of degrees at a point.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub condition_id: ConditionId,
    pub x: f64,
    pub gamma: Option<f64>,
    pub domain: XDomain,
    pub per_n: Vec<ConditionRow>,
    pub implied_constant: f64,
}

/// Default exponent for condition (Q): the midpoint of the admissible range
/// `[0, beta + 1/p)`.
pub fn default_gamma(params: &ExperimentParams) -> f64 {
    params.beta() + 0.5 / params.p()
}

fn weighted_phi_integrand<'a>(
    f: &'a PeriodicFunction,
    omega: &'a ModulusSpec,
    params: &ExperimentParams,
    x: f64,
    gamma: f64,
) -> impl Fn(f64) -> f64 + 'a {
    let p = params.p();
    let beta = params.beta();
    move |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let w = omega.value(t) * t.powf(gamma);
        let num = phi(f, x, t).abs();
        let base = if num == 0.0 { 0.0 } else { num / w };
        (0.5 * t).sin().abs().powf(beta * p) * base.powf(p)
    }
}

/// Probe the normalized integrand near zero; the extension by zero at t = 0
/// is only valid when the function's own modulus vanishes at least as fast
/// as omega.
fn probe_near_zero(integrand: &dyn Fn(f64) -> f64) -> Result<()> {
    let mut values = [0.0; 3];
    for (i, &t) in [1e-8f64, 1e-7, 1e-6].iter().enumerate() {
        let v = integrand(t);
        if !v.is_finite() || v > 1e12 {
            return Err(Error::QuadratureFailure(format!(
                "normalized integrand appears divergent near t = 0 (value {v} at t = {t})"
            )));
        }
        values[i] = v;
    }
    Ok(())
}

/// Evaluates one growth condition on a list of degrees.
///
/// - (2.6)/(2.8): `sum_{m=1}^{n} (m+1)^{beta + 1 - 2/q} * I_m^{1/p}` with
///   `I_m` the cell integral over `[pi/(m+1), pi/m]`, scaled by
///   `(n+1)^{beta + 1/p}` and `(n+1)^beta` respectively;
/// - (2.7): the integral over `[0, 2 pi / n]`, scaled by `(n+1)^{-1/p}`;
/// - (Q): the integral over `[pi/(n+1), pi]` with weight `t^gamma omega(t)`,
///   scaled by `(n+1)^gamma`.
pub fn evaluate_condition(
    f: &PeriodicFunction,
    omega: &ModulusSpec,
    params: &ExperimentParams,
    condition_id: ConditionId,
    gamma: Option<f64>,
    n_list: &[usize],
    domain: XDomain,
) -> Result<ConditionReport> {
    let x = params.x.ok_or_else(|| {
        Error::InvalidParams("conditions are pointwise; set an evaluation point x".into())
    })?;
    if n_list.is_empty() {
        return Err(Error::InvalidParams("empty degree list".into()));
    }
    if n_list.iter().any(|&n| n == 0) {
        return Err(Error::InvalidParams("degrees must be positive".into()));
    }
    params.validate_against_modulus(omega)?;
    let p = params.p();
    let beta = params.beta();
    let gamma_used = match condition_id {
        ConditionId::Q => {
            let g = gamma.unwrap_or_else(|| default_gamma(params));
            let limit = beta + 1.0 / p;
            if !(0.0..limit).contains(&g) {
                return Err(Error::InvalidGamma { gamma: g, limit });
            }
            Some(g)
        }
        _ => None,
    };
    let _ = domain; // pointwise conditions carry no x-integral; recorded for report metadata
    let integrand = weighted_phi_integrand(f, omega, params, x, gamma_used.unwrap_or(0.0));
    let mut sorted: Vec<usize> = n_list.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let max_n = *sorted.last().expect("nonempty");

    let mut rows: Vec<ConditionRow> = Vec::with_capacity(sorted.len());
    match condition_id {
        ConditionId::TwoSix | ConditionId::TwoEight => {
            // Cell integrals are shared across degrees; the left side of the
            // condition is a prefix sum of per-cell terms.
            let exponent = beta + 1.0 - 2.0 / params.q();
            let mut prefix = 0.0f64;
            let mut prefix_at: Vec<(usize, f64)> = Vec::with_capacity(max_n);
            for m in 1..=max_n {
                let (a, b) = (PI / (m + 1) as f64, PI / m as f64);
                let cell = adaptive_quadrature(&integrand, a, b, CONDITION_QUAD_TOL * (b - a))?;
                prefix += ((m + 1) as f64).powf(exponent) * cell.max(0.0).powf(1.0 / p);
                prefix_at.push((m, prefix));
            }
            for &n in &sorted {
                let lhs = prefix_at[n - 1].1;
                let rhs_exp = if condition_id == ConditionId::TwoSix {
                    beta + 1.0 / p
                } else {
                    beta
                };
                let rhs_scale = ((n + 1) as f64).powf(rhs_exp);
                rows.push(ConditionRow {
                    n,
                    lhs,
                    rhs_scale,
                    ratio: lhs / rhs_scale,
                });
            }
        }
        ConditionId::TwoSeven => {
            probe_near_zero(&integrand)?;
            for &n in &sorted {
                let b = TWO_PI / n as f64;
                let integral = adaptive_quadrature(&integrand, 0.0, b, CONDITION_QUAD_TOL * b)?;
                let lhs = integral.max(0.0).powf(1.0 / p);
                let rhs_scale = ((n + 1) as f64).powf(-1.0 / p);
                rows.push(ConditionRow {
                    n,
                    lhs,
                    rhs_scale,
                    ratio: lhs / rhs_scale,
                });
            }
        }
        ConditionId::Q => {
            let g = gamma_used.expect("validated above");
            for &n in &sorted {
                let a = PI / (n + 1) as f64;
                let integral = adaptive_quadrature(&integrand, a, PI, CONDITION_QUAD_TOL * (PI - a))?;
                let lhs = integral.max(0.0).powf(1.0 / p);
                let rhs_scale = ((n + 1) as f64).powf(g);
                rows.push(ConditionRow {
                    n,
                    lhs,
                    rhs_scale,
                    ratio: lhs / rhs_scale,
                });
            }
        }
    }
    let implied_constant = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(ConditionReport {
        condition_id,
        x,
        gamma: gamma_used,
        domain,
        per_n: rows,
        implied_constant,
    })
}

/// Paired evaluation of condition (Q) and condition (2.6) on the same
/// inputs, with the half-range boundedness proxy applied to both ratio
/// sequences. The implication under test: a bounded (Q) constant forces a
/// bounded (2.6) constant.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma3Check {
    pub q_report: ConditionReport,
    pub c26_report: ConditionReport,
    pub q_bounded: bool,
    pub c26_bounded: bool,
    pub implication_holds: bool,
}

pub fn lemma3_implication(
    f: &PeriodicFunction,
    omega: &ModulusSpec,
    params: &ExperimentParams,
    gamma: Option<f64>,
    n_list: &[usize],
    domain: XDomain,
) -> Result<Lemma3Check> {
    let q_report = evaluate_condition(f, omega, params, ConditionId::Q, gamma, n_list, domain)?;
    let c26_report =
        evaluate_condition(f, omega, params, ConditionId::TwoSix, None, n_list, domain)?;
    let bounded = |report: &ConditionReport| {
        let ratios: Vec<f64> = report.per_n.iter().map(|r| r.ratio).collect();
        crate::numeric::bounded_ratio_proxy(&ratios, 2.0)
            .map(|p| p.holds)
            .unwrap_or(true)
    };
    let q_bounded = bounded(&q_report);
    let c26_bounded = bounded(&c26_report);
    Ok(Lemma3Check {
        q_bounded,
        c26_bounded,
        implication_holds: !q_bounded || c26_bounded,
        q_report,
        c26_report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{absx, corpus};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn params(p: f64, beta: f64) -> ExperimentParams {
        ExperimentParams::new(p, beta).unwrap()
    }

    #[test]
    fn conjugate_exponent_identity() {
        for &p in &[1.5, 2.0, 3.0, 10.0] {
            let pr = params(p, 0.0);
            assert_abs_diff_eq!(1.0 / pr.p() + 1.0 / pr.q(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn beta_range_is_enforced() {
        assert!(ExperimentParams::new(2.0, 0.5).is_err());
        assert!(ExperimentParams::new(2.0, 0.49).is_ok());
        assert!(ExperimentParams::with_remark5(2.0, 0.75).is_ok());
        assert!(ExperimentParams::new(1.0, 0.0).is_err());
    }

    #[test]
    fn remark5_validation_checks_growth() {
        // omega = delta^0.3 with beta = 0.75 > alpha: t^-beta * omega decreases.
        let pr = ExperimentParams::with_remark5(2.0, 0.75).unwrap();
        let omega = ModulusSpec::power(0.3).unwrap();
        assert!(pr.validate_against_modulus(&omega).is_err());
        // beta below the cap never triggers the check
        let pr = ExperimentParams::new(2.0, 0.25).unwrap();
        assert!(pr.validate_against_modulus(&omega).is_ok());
    }

    #[test]
    fn phi_closed_forms() {
        let c = PeriodicFunction::from_fn("c", None, |_| 4.0);
        assert_eq!(phi(&c, 0.3, 1.0), 0.0);
        let cosf = PeriodicFunction::from_fn("cos", None, f64::cos);
        for &(x, t) in &[(0.2, 0.5), (1.0, 2.0), (-0.7, 0.1)] {
            // cos(x+t) + cos(x-t) - 2 cos x = 2 cos x (cos t - 1)
            assert_abs_diff_eq!(
                phi(&cosf, x, t),
                2.0 * x.cos() * (t.cos() - 1.0),
                epsilon = 1e-12
            );
        }
        assert_eq!(phi(&cosf, 0.4, 0.0), 0.0);
    }

    #[test]
    fn omega_beta_of_constant_vanishes() {
        let c = PeriodicFunction::from_fn("c", None, |_| 2.0);
        let v = omega_beta(&c, PI, &params(2.0, 0.0), 64, 64, XDomain::Half).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn omega_beta_cosine_closed_form() {
        // phi_x(t) = 2 cos x (cos t - 1); the half-range L^2 integral is
        // 4 (1 - cos t)^2 * pi / 2, so the sup at delta = pi is 4 sqrt(pi/2).
        let cosf = PeriodicFunction::from_fn("cos", None, f64::cos);
        let v = omega_beta(&cosf, PI, &params(2.0, 0.0), 512, 2048, XDomain::Half).unwrap();
        assert_relative_eq!(v, 4.0 * (PI / 2.0).sqrt(), max_relative = 1e-6);
    }

    #[test]
    fn omega_beta_rejects_bad_delta() {
        let cosf = PeriodicFunction::from_fn("cos", None, f64::cos);
        assert!(matches!(
            omega_beta(&cosf, 7.0, &params(2.0, 0.0), 64, 64, XDomain::Full),
            Err(Error::InvalidDelta(_))
        ));
    }

    #[test]
    fn omega_beta_monotone_in_beta_and_delta() {
        let pr_a = params(2.0, 0.1);
        let pr_b = params(2.0, 0.4);
        let deltas: Vec<f64> = (1..=16).map(|j| PI * j as f64 / 16.0).collect();
        for f in corpus() {
            let lo = omega_beta_sweep(&f, &deltas, &pr_b, 128, 128, XDomain::Full).unwrap();
            let hi = omega_beta_sweep(&f, &deltas, &pr_a, 128, 128, XDomain::Full).unwrap();
            for (i, (l, h)) in lo.iter().zip(&hi).enumerate() {
                assert!(l <= &(h + 1e-10), "{}: beta-monotonicity at {i}", f.name());
            }
            for w in hi.windows(2) {
                assert!(w[1] >= w[0] - 1e-12, "{}: delta-monotonicity", f.name());
            }
        }
    }

    #[test]
    fn membership_of_kink_against_its_own_power_modulus() {
        let f = absx(0.5).unwrap();
        let omega = ModulusSpec::power(0.5).unwrap();
        let c = membership_constant(&f, &omega, &params(2.0, 0.0), 24).unwrap();
        assert!(c.is_finite() && c > 0.0);
        assert!(c < 10.0, "constant {c}");
    }

    #[test]
    fn membership_of_constant_function_is_zero() {
        let c = PeriodicFunction::from_fn("c", None, |_| 1.0);
        let omega = ModulusSpec::power(0.5).unwrap();
        let v = membership_constant(&c, &omega, &params(2.0, 0.0), 8).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn power_modulus_quotient_is_nonincreasing() {
        for &alpha in &[0.3, 0.5, 1.0] {
            assert!(ModulusSpec::power(alpha)
                .unwrap()
                .quotient_nonincreasing_on_grid(128));
        }
        assert!(ModulusSpec::power_log(0.5, 0.25)
            .unwrap()
            .quotient_nonincreasing_on_grid(128));
    }

    #[test]
    fn modulus_families_validate() {
        assert!(ModulusSpec::power(0.5).unwrap().validate_modulus_type().is_ok());
        assert!(ModulusSpec::power_log(0.7, 0.3)
            .unwrap()
            .validate_modulus_type()
            .is_ok());
        assert!(ModulusSpec::power(1.5).is_err());
        assert!(ModulusSpec::power_log(0.5, 0.7).is_err());
        // A convex table violates subadditivity.
        assert!(ModulusSpec::user_table(vec![(1.0, 0.1), (2.0, 1.0)]).is_err());
        let t = ModulusSpec::user_table(vec![(1.0, 1.0), (2.0, 1.5)]).unwrap();
        assert_relative_eq!(t.value(1.5), 1.25, epsilon = 1e-14);
        assert_eq!(t.value(0.0), 0.0);
        assert_relative_eq!(t.value(3.0), 1.5, epsilon = 1e-14);
    }

    #[test]
    fn conditions_vanish_for_constant_functions() {
        let c = PeriodicFunction::from_fn("c", None, |_| 1.0);
        let omega = ModulusSpec::power(0.5).unwrap();
        let pr = params(2.0, 0.25).at(1.0);
        for id in [
            ConditionId::TwoSix,
            ConditionId::TwoSeven,
            ConditionId::TwoEight,
            ConditionId::Q,
        ] {
            let report =
                evaluate_condition(&c, &omega, &pr, id, None, &[4, 8, 16], XDomain::Full).unwrap();
            assert_abs_diff_eq!(report.implied_constant, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn condition_27_for_kink_is_bounded() {
        let f = absx(0.5).unwrap();
        let omega = ModulusSpec::power(0.5).unwrap();
        let pr = params(2.0, 0.0).at(1.0);
        let ns: Vec<usize> = (3..=9).map(|k| 1usize << k).collect();
        let report =
            evaluate_condition(&f, &omega, &pr, ConditionId::TwoSeven, None, &ns, XDomain::Full)
                .unwrap();
        assert!(report.implied_constant.is_finite());
        let ratios: Vec<f64> = report.per_n.iter().map(|r| r.ratio).collect();
        let proxy = crate::numeric::bounded_ratio_proxy(&ratios, 2.0).unwrap();
        assert!(proxy.holds, "{proxy:?}");
    }

    #[test]
    fn invalid_gamma_is_rejected() {
        let f = absx(0.5).unwrap();
        let omega = ModulusSpec::power(0.5).unwrap();
        let pr = params(2.0, 0.25).at(1.0);
        let err = evaluate_condition(
            &f,
            &omega,
            &pr,
            ConditionId::Q,
            Some(0.9),
            &[8, 16],
            XDomain::Full,
        );
        assert!(matches!(err, Err(Error::InvalidGamma { .. })));
    }

    #[test]
    fn condition_x_must_be_set() {
        let f = absx(0.5).unwrap();
        let omega = ModulusSpec::power(0.5).unwrap();
        let pr = params(2.0, 0.0);
        assert!(evaluate_condition(
            &f,
            &omega,
            &pr,
            ConditionId::TwoSeven,
            None,
            &[8],
            XDomain::Full
        )
        .is_err());
    }

    #[test]
    fn lemma3_pairing_on_kink() {
        let f = absx(0.5).unwrap();
        let omega = ModulusSpec::power(0.5).unwrap();
        let pr = params(2.0, 0.25).at(1.0);
        let ns: Vec<usize> = (3..=8).map(|k| 1usize << k).collect();
        let check = lemma3_implication(&f, &omega, &pr, None, &ns, XDomain::Full).unwrap();
        assert!(check.implication_holds);
    }
}
