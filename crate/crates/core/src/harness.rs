//! Rate-of-approximation experiments: measured transform errors against the
//! theoretical bound expressions, log-log slope fitting, and the power-kink
//! rate suite.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{classify, ClassReport, SequenceClass};
use crate::fourier::{coefficients, weierstrass, PeriodicFunction, TransformRow};
use crate::kernels::kernel_sum;
use crate::matrix::SummabilityMatrix;
use crate::moduli::{evaluate_condition, ConditionId, ConditionReport, ExperimentParams, ModulusSpec, XDomain};
use crate::numeric::{bounded_ratio_proxy, kahan_sum, ols_line, trapezoid, BoundedProxy, TWO_PI};
use crate::{Error, Result};

/// Errors below this are treated as the machine-precision floor and excluded
/// from slope fits.
pub const ERROR_FLOOR: f64 = 1e-13;

/// Which bound expression scales the weighted modulus sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVariant {
    /// Factor `(n+1)^{beta + 1/p}`.
    Thm1,
    /// Factor `(n+1)^beta` (the strengthened pointwise estimate).
    Thm2,
    /// Factor `(n+1)^beta`, norm case with `beta > 0`.
    Thm3PosBeta,
    /// Factor `(n+1)^{1/p}`, norm case with `beta = 0`.
    Thm3ZeroBeta,
    /// Factor `(n+1)^beta` with the weighted sum collapsed to
    /// `omega(pi / (n+1))` under the linear tail-sum growth assumption.
    Remark1,
}

impl BoundVariant {
    /// The norm-case variant appropriate for the sign of `beta`.
    pub fn thm3(params: &ExperimentParams) -> Self {
        if params.beta() > 0.0 {
            BoundVariant::Thm3PosBeta
        } else {
            BoundVariant::Thm3ZeroBeta
        }
    }

    fn factor_exponent(self, params: &ExperimentParams) -> f64 {
        match self {
            BoundVariant::Thm1 => params.beta() + 1.0 / params.p(),
            BoundVariant::Thm2 | BoundVariant::Thm3PosBeta | BoundVariant::Remark1 => params.beta(),
            BoundVariant::Thm3ZeroBeta => 1.0 / params.p(),
        }
    }
}

impl std::str::FromStr for BoundVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "thm1" => Ok(BoundVariant::Thm1),
            "thm2" => Ok(BoundVariant::Thm2),
            "thm3-pos-beta" => Ok(BoundVariant::Thm3PosBeta),
            "thm3-zero-beta" => Ok(BoundVariant::Thm3ZeroBeta),
            "remark1" => Ok(BoundVariant::Remark1),
            other => Err(Error::InvalidParams(format!("unknown variant '{other}'"))),
        }
    }
}

impl std::fmt::Display for BoundVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundVariant::Thm1 => "thm1",
            BoundVariant::Thm2 => "thm2",
            BoundVariant::Thm3PosBeta => "thm3-pos-beta",
            BoundVariant::Thm3ZeroBeta => "thm3-zero-beta",
            BoundVariant::Remark1 => "remark1",
        })
    }
}

/// Which end of the row the modulus weights pair with: `Forward` matches
/// MRBVS rows (`a[n][k]` against `omega(pi/(k+1))`), `Reversed` matches
/// MHBVS rows (`a[n][n-k]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Reversed,
}

impl Orientation {
    pub fn class(self) -> SequenceClass {
        match self {
            Orientation::Forward => SequenceClass::Mrbvs,
            Orientation::Reversed => SequenceClass::Mhbvs,
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "forward" | "fwd" => Ok(Orientation::Forward),
            "reversed" | "rev" => Ok(Orientation::Reversed),
            other => Err(Error::InvalidParams(format!(
                "unknown orientation '{other}'"
            ))),
        }
    }
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Orientation::Forward => "forward",
            Orientation::Reversed => "reversed",
        })
    }
}

/// The theoretical bound expression: the variant's power of `(n+1)` times
/// the row-weighted modulus sum `sum_k a[n][k] omega(pi/(k+1))` (or its
/// reversed pairing), with the sum replaced by `omega(pi/(n+1))` for the
/// collapsed variant.
pub fn bound_value(
    matrix: &SummabilityMatrix,
    n: usize,
    omega: &ModulusSpec,
    params: &ExperimentParams,
    variant: BoundVariant,
    orientation: Orientation,
) -> Result<f64> {
    let row = matrix.row(n)?;
    let factor = ((n + 1) as f64).powf(variant.factor_exponent(params));
    let sum = if variant == BoundVariant::Remark1 {
        omega.value(PI / (n + 1) as f64)
    } else {
        kahan_sum((0..=n).map(|k| {
            let weight = match orientation {
                Orientation::Forward => row[k],
                Orientation::Reversed => row[n - k],
            };
            weight * omega.value(PI / (k + 1) as f64)
        }))
    };
    Ok(factor * sum)
}

/// One degree of a rate sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RateRow {
    pub n: usize,
    pub error: f64,
    pub bound: f64,
    /// `error / bound` where the bound is positive.
    pub ratio: Option<f64>,
}

/// Norm or pointwise error measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Norm,
    Pointwise,
}

/// Full record of one rate experiment.
#[derive(Debug, Clone, Serialize)]
pub struct RateReport {
    pub matrix_name: String,
    pub function_name: String,
    pub kind: ExperimentKind,
    pub p: f64,
    pub beta: f64,
    pub x: Option<f64>,
    pub variant: BoundVariant,
    pub orientation: Orientation,
    pub quad_points: usize,
    pub rows: Vec<RateRow>,
    /// Log-log slope of error against degree, fitted over rows whose error
    /// exceeds the machine floor; absent when fewer than two rows qualify.
    pub slope: Option<f64>,
    pub slope_stderr: Option<f64>,
    /// Set when every error sits at the machine floor.
    pub degenerate: bool,
    /// Class paired with the orientation, checked on every swept row.
    pub class_label: SequenceClass,
    pub class_ok: bool,
    pub max_class_constant: f64,
    /// Half-range comparison of the error/bound ratios.
    pub bounded_proxy: Option<BoundedProxy>,
    /// Pointwise runs attach the growth-condition reports evaluated at `x`.
    pub conditions: Vec<ConditionReport>,
}

impl RateReport {
    /// Whether the boundedness proxy holds (vacuously true for degenerate
    /// sweeps, which have no ratios above the floor to compare).
    pub fn bounded_ok(&self) -> bool {
        self.degenerate || self.bounded_proxy.map(|p| p.holds).unwrap_or(true)
    }
}

/// Quadrature size for a sweep: 16 points per largest degree, enlarged to
/// keep any known band limit of the function alias-free.
fn sweep_quad_points(f: &PeriodicFunction, max_n: usize) -> usize {
    let base = 16 * max_n.max(4);
    let band = f.max_frequency().map(|nu| 4 * nu).unwrap_or(0);
    base.max(band).max(64)
}

fn fit_rows(rows: &[RateRow]) -> (Option<f64>, Option<f64>, bool) {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.error > ERROR_FLOOR)
        .map(|r| ((r.n as f64).ln(), r.error.ln()))
        .collect();
    if pts.len() < 2 {
        return (None, None, pts.is_empty());
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    match ols_line(&xs, &ys) {
        Some(fit) => (Some(fit.slope), Some(fit.slope_stderr), false),
        None => (None, None, false),
    }
}

fn class_summary(
    matrix: &SummabilityMatrix,
    n_list: &[usize],
    class: SequenceClass,
) -> Result<(bool, f64)> {
    let mut ok = true;
    let mut max_constant = 0.0f64;
    for &n in n_list {
        if n == 0 {
            continue;
        }
        let report: ClassReport = classify(matrix.row(n)?, class)?;
        ok &= report.in_class;
        if report.constant.is_finite() {
            max_constant = max_constant.max(report.constant);
        } else {
            max_constant = f64::INFINITY;
        }
    }
    Ok((ok, max_constant))
}

fn validate_n_list(matrix: &SummabilityMatrix, n_list: &[usize]) -> Result<usize> {
    let &max_n = n_list
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidParams("empty degree list".into()))?;
    if max_n > matrix.n_max() {
        return Err(Error::RowOutOfRange {
            n: max_n,
            n_max: matrix.n_max(),
        });
    }
    Ok(max_n)
}

/// Runs a norm-error sweep: for every degree in `n_list`, the `L^p` distance
/// between the transformed partial sums and `f` (periodic trapezoid rule on
/// a shared grid), the bound expression, and their ratio; fits the log-log
/// slope. A failed class check downgrades to a flag and the sweep proceeds.
pub fn run_rate_experiment(
    f: &PeriodicFunction,
    matrix: &SummabilityMatrix,
    omega: &ModulusSpec,
    params: &ExperimentParams,
    n_list: &[usize],
    variant: BoundVariant,
    orientation: Orientation,
) -> Result<RateReport> {
    let max_n = validate_n_list(matrix, n_list)?;
    params.validate_against_modulus(omega)?;
    let quad = sweep_quad_points(f, max_n);
    let coeffs = coefficients(f, max_n, quad)?;
    let h = TWO_PI / quad as f64;
    let fx: Vec<f64> = (0..quad).map(|j| f.eval(-PI + h * j as f64)).collect();
    let p = params.p();
    let rows: Vec<RateRow> = n_list
        .par_iter()
        .map(|&n| -> Result<RateRow> {
            let transform = TransformRow::new(&coeffs, matrix, n)?;
            let integral = h * kahan_sum((0..quad).map(|j| {
                let x = -PI + h * j as f64;
                (transform.eval(x) - fx[j]).abs().powf(p)
            }));
            let error = integral.powf(1.0 / p);
            let bound = bound_value(matrix, n, omega, params, variant, orientation)?;
            Ok(RateRow {
                n,
                error,
                bound,
                ratio: (bound > 0.0).then(|| error / bound),
            })
        })
        .collect::<Result<_>>()?;
    finish_report(
        f, matrix, params, n_list, variant, orientation, quad, rows,
        ExperimentKind::Norm, None, Vec::new(),
    )
}

/// Pointwise variant: the error is `|T_n f(x) - f(x)|` at a single location,
/// and the growth-condition reports for the matching hypothesis pair are
/// attached ((2.6)/(2.7) for the baseline factor, (2.8)/(2.7) for the
/// strengthened one).
pub fn run_pointwise_experiment(
    f: &PeriodicFunction,
    matrix: &SummabilityMatrix,
    omega: &ModulusSpec,
    params: &ExperimentParams,
    x: f64,
    n_list: &[usize],
    variant: BoundVariant,
    orientation: Orientation,
) -> Result<RateReport> {
    let max_n = validate_n_list(matrix, n_list)?;
    let params_at = params.at(x);
    params_at.validate_against_modulus(omega)?;
    let quad = sweep_quad_points(f, max_n);
    let coeffs = coefficients(f, max_n, quad)?;
    let fx = f.eval(x);
    let rows: Vec<RateRow> = n_list
        .par_iter()
        .map(|&n| -> Result<RateRow> {
            let transform = TransformRow::new(&coeffs, matrix, n)?;
            let error = (transform.eval(x) - fx).abs();
            let bound = bound_value(matrix, n, omega, params, variant, orientation)?;
            Ok(RateRow {
                n,
                error,
                bound,
                ratio: (bound > 0.0).then(|| error / bound),
            })
        })
        .collect::<Result<_>>()?;
    let condition_ids = match variant {
        BoundVariant::Thm1 | BoundVariant::Thm3ZeroBeta => {
            [ConditionId::TwoSix, ConditionId::TwoSeven]
        }
        _ => [ConditionId::TwoEight, ConditionId::TwoSeven],
    };
    let positive: Vec<usize> = n_list.iter().copied().filter(|&n| n > 0).collect();
    let mut conditions = Vec::new();
    if !positive.is_empty() {
        for id in condition_ids {
            conditions.push(evaluate_condition(
                f,
                omega,
                &params_at,
                id,
                None,
                &positive,
                XDomain::Full,
            )?);
        }
    }
    finish_report(
        f, matrix, params, n_list, variant, orientation, quad, rows,
        ExperimentKind::Pointwise, Some(x), conditions,
    )
}

#[allow(clippy::too_many_arguments)]
fn finish_report(
    f: &PeriodicFunction,
    matrix: &SummabilityMatrix,
    params: &ExperimentParams,
    n_list: &[usize],
    variant: BoundVariant,
    orientation: Orientation,
    quad: usize,
    rows: Vec<RateRow>,
    kind: ExperimentKind,
    x: Option<f64>,
    conditions: Vec<ConditionReport>,
) -> Result<RateReport> {
    let class = orientation.class();
    let (class_ok, max_class_constant) = class_summary(matrix, n_list, class)?;
    let (slope, slope_stderr, degenerate) = fit_rows(&rows);
    let ratios: Vec<f64> = rows
        .iter()
        .filter(|r| r.error > ERROR_FLOOR)
        .filter_map(|r| r.ratio)
        .collect();
    let bounded_proxy = bounded_ratio_proxy(&ratios, 2.0);
    Ok(RateReport {
        matrix_name: matrix.name().to_string(),
        function_name: f.name().to_string(),
        kind,
        p: params.p(),
        beta: params.beta(),
        x,
        variant,
        orientation,
        quad_points: quad,
        rows,
        slope,
        slope_stderr,
        degenerate,
        class_label: class,
        class_ok,
        max_class_constant,
        bounded_proxy,
        conditions,
    })
}

/// The two pieces of the error representation
/// `T_n f(x) - f(x) = (1/pi) int_0^pi phi_x(t) sum_k a[n][k] D_k(t) dt`,
/// split at `t = 2 pi / n`. Diagnostic only; the production error path never
/// goes through this integral.
pub fn error_decomposition(
    f: &PeriodicFunction,
    matrix: &SummabilityMatrix,
    n: usize,
    x: f64,
    points_per_segment: usize,
) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidParams(
            "the split point 2*pi/n needs n >= 2".into(),
        ));
    }
    let split = TWO_PI / n as f64;
    let m = points_per_segment.max(16 * n);
    let integrand = |t: f64| -> f64 {
        crate::moduli::phi(f, x, t) * kernel_sum(matrix, n, t).expect("row checked")
    };
    matrix.row(n)?;
    let i1 = trapezoid(&integrand, 0.0, split, m) / PI;
    let i2 = trapezoid(&integrand, split, PI, m) / PI;
    Ok((i1, i2))
}

/// Outcome of one cell of the power-kink rate suite.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CorollaryStatus {
    /// Parameters outside the admissible region; nothing was run.
    Rejected { reason: String },
    /// Sweep completed; `pass` records whether the fitted slope lies within
    /// 0.1 of the predicted order `-alpha`.
    Ran {
        slope: f64,
        slope_stderr: f64,
        target: f64,
        pass: bool,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct CorollaryEntry {
    pub alpha: f64,
    pub p: f64,
    pub beta: f64,
    pub function_name: String,
    pub status: CorollaryStatus,
}

/// Default modulus weight for the rate suite: positive, comfortably inside
/// `(0, 1 - 1/p)`.
pub fn default_corollary_beta(p: f64) -> f64 {
    (0.25f64).min(0.5 * (1.0 - 1.0 / p))
}

/// Runs the uniform-mean rate suite over a grid of exponents: for each
/// `(alpha, p)` the Lipschitz-`alpha` corpus member of exact order (the
/// lacunar cosine series) is approximated by the uniform means with
/// `omega(delta) = delta^{alpha + beta}`, and the fitted slope is compared
/// against `-alpha`. Inadmissible combinations (including
/// `alpha + beta > 1`) are recorded as rejected instead of running.
pub fn corollary_suite(
    alpha_list: &[f64],
    p_list: &[f64],
    n_list: &[usize],
) -> Result<Vec<CorollaryEntry>> {
    if alpha_list.is_empty() || p_list.is_empty() || n_list.is_empty() {
        return Err(Error::InvalidParams("empty suite axis".into()));
    }
    let max_n = *n_list.iter().max().expect("nonempty");
    let matrix = SummabilityMatrix::fejer(max_n);
    let mut entries = Vec::new();
    for &p in p_list {
        for &alpha in alpha_list {
            let beta = default_corollary_beta(p);
            let reject = |reason: String| CorollaryEntry {
                alpha,
                p,
                beta,
                function_name: String::new(),
                status: CorollaryStatus::Rejected { reason },
            };
            if !(alpha > 0.0 && alpha < 1.0) {
                entries.push(reject(format!("alpha = {alpha} outside (0, 1)")));
                continue;
            }
            if !(p > 1.0 && p.is_finite()) {
                entries.push(reject(format!("p = {p} outside (1, inf)")));
                continue;
            }
            if alpha + beta > 1.0 {
                entries.push(reject(format!(
                    "alpha + beta = {} exceeds 1",
                    alpha + beta
                )));
                continue;
            }
            let f = weierstrass(alpha)?;
            let params = ExperimentParams::new(p, beta)?;
            let omega = ModulusSpec::power(alpha + beta)?;
            let report = run_rate_experiment(
                &f,
                &matrix,
                &omega,
                &params,
                n_list,
                BoundVariant::Remark1,
                Orientation::Forward,
            )?;
            let status = match report.slope {
                Some(slope) => CorollaryStatus::Ran {
                    slope,
                    slope_stderr: report.slope_stderr.unwrap_or(0.0),
                    target: -alpha,
                    pass: (slope + alpha).abs() <= 0.1,
                },
                None => CorollaryStatus::Rejected {
                    reason: "degenerate sweep (errors at machine floor)".into(),
                },
            };
            entries.push(CorollaryEntry {
                alpha,
                p,
                beta,
                function_name: f.name().to_string(),
                status,
            });
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::absx;
    use crate::matrix::NorlundWeights;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn geometric_degrees(lo: u32, hi: u32) -> Vec<usize> {
        (lo..=hi).map(|k| 1usize << k).collect()
    }

    #[test]
    fn bound_value_single_row() {
        // n = 0: the only weight is 1, so every unit-factor variant gives omega(pi).
        let m = SummabilityMatrix::fejer(4);
        let omega = ModulusSpec::power(0.5).unwrap();
        let params = ExperimentParams::new(2.0, 0.0).unwrap();
        let b = bound_value(&m, 0, &omega, &params, BoundVariant::Thm2, Orientation::Forward)
            .unwrap();
        assert_relative_eq!(b, PI.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn bound_value_uniform_row_hand_sum() {
        // (1/4) * sum_k sqrt(pi/(k+1)) for k = 0..3.
        let m = SummabilityMatrix::fejer(4);
        let omega = ModulusSpec::power(0.5).unwrap();
        let params = ExperimentParams::new(2.0, 0.0).unwrap();
        let b = bound_value(&m, 3, &omega, &params, BoundVariant::Thm2, Orientation::Forward)
            .unwrap();
        let expected = 0.25
            * PI.sqrt()
            * (1.0 + 0.5f64.sqrt() + (1.0f64 / 3.0).sqrt() + 0.25f64.sqrt());
        assert_relative_eq!(b, expected, epsilon = 1e-13);
        assert!((b - 1.2339).abs() < 5e-4);
    }

    #[test]
    fn uniform_rows_make_orientation_irrelevant() {
        let m = SummabilityMatrix::fejer(32);
        let omega = ModulusSpec::power(0.5).unwrap();
        let params = ExperimentParams::new(2.0, 0.2).unwrap();
        for n in [0usize, 7, 32] {
            for variant in [BoundVariant::Thm1, BoundVariant::Thm3PosBeta, BoundVariant::Remark1] {
                let fwd = bound_value(&m, n, &omega, &params, variant, Orientation::Forward)
                    .unwrap();
                let rev = bound_value(&m, n, &omega, &params, variant, Orientation::Reversed)
                    .unwrap();
                assert_eq!(fwd, rev);
            }
        }
    }

    #[test]
    fn bound_is_monotone_in_omega() {
        // The log-corrected modulus dominates the bare power pointwise on
        // (0, 2*pi], so every bound built from it is at least as large.
        let w = NorlundWeights::ones(65);
        let m = SummabilityMatrix::lal(&w, 64).unwrap();
        let small = ModulusSpec::power(0.5).unwrap();
        let large = ModulusSpec::power_log(0.5, 0.25).unwrap();
        let params = ExperimentParams::new(2.0, 0.1).unwrap();
        for n in [1usize, 8, 64] {
            let lo = bound_value(&m, n, &small, &params, BoundVariant::Thm1, Orientation::Forward)
                .unwrap();
            let hi = bound_value(&m, n, &large, &params, BoundVariant::Thm1, Orientation::Forward)
                .unwrap();
            assert!(lo <= hi, "n = {n}: {lo} > {hi}");
        }
    }

    #[test]
    fn slope_fit_recovers_synthetic_power_law() {
        let rows: Vec<RateRow> = geometric_degrees(3, 10)
            .into_iter()
            .map(|n| RateRow {
                n,
                error: 3.7 * (n as f64).powf(-1.25),
                bound: 1.0,
                ratio: None,
            })
            .collect();
        let (slope, stderr, degenerate) = fit_rows(&rows);
        assert!(!degenerate);
        assert_abs_diff_eq!(slope.unwrap(), -1.25, epsilon = 1e-6);
        assert!(stderr.unwrap() < 1e-6);
    }

    #[test]
    fn uniform_mean_on_cosine_matches_analytic_error() {
        // T_n cos - cos = -(1/(n+1)) cos, so the L2 error is sqrt(pi)/(n+1).
        // The fit regresses on ln n while the error decays in ln(n+1); the
        // +1 offset only fades at larger degrees, so the slope assertion
        // uses the upper decades.
        let f = PeriodicFunction::from_fn("cos", Some(1.0), f64::cos).with_max_frequency(1);
        let m = SummabilityMatrix::fejer(1024);
        let omega = ModulusSpec::power(1.0).unwrap();
        let params = ExperimentParams::new(2.0, 0.25).unwrap();
        let report = run_rate_experiment(
            &f,
            &m,
            &omega,
            &params,
            &geometric_degrees(2, 8),
            BoundVariant::Thm3PosBeta,
            Orientation::Forward,
        )
        .unwrap();
        for row in &report.rows {
            let exact = PI.sqrt() / (row.n + 1) as f64;
            assert_relative_eq!(row.error, exact, max_relative = 1e-9);
        }
        assert!(report.class_ok);
        let report = run_rate_experiment(
            &f,
            &m,
            &omega,
            &params,
            &geometric_degrees(6, 10),
            BoundVariant::Thm3PosBeta,
            Orientation::Forward,
        )
        .unwrap();
        let slope = report.slope.unwrap();
        assert!((slope + 1.0).abs() < 0.01, "slope {slope}");
    }

    #[test]
    fn pointwise_cosine_error_at_origin() {
        let f = PeriodicFunction::from_fn("cos", Some(1.0), f64::cos).with_max_frequency(1);
        let m = SummabilityMatrix::fejer(128);
        let omega = ModulusSpec::power(1.0).unwrap();
        let params = ExperimentParams::new(2.0, 0.25).unwrap();
        let ns = geometric_degrees(2, 7);
        let report = run_pointwise_experiment(
            &f,
            &m,
            &omega,
            &params,
            0.0,
            &ns,
            BoundVariant::Thm2,
            Orientation::Forward,
        )
        .unwrap();
        for row in &report.rows {
            assert_relative_eq!(row.error, 1.0 / (row.n + 1) as f64, max_relative = 1e-9);
        }
        assert_eq!(report.conditions.len(), 2);
        assert!(report.bounded_ok(), "{:?}", report.bounded_proxy);
    }

    #[test]
    fn constant_function_degenerates() {
        let f = PeriodicFunction::from_fn("constant", Some(1.0), |_| 1.0).with_max_frequency(0);
        let m = SummabilityMatrix::fejer(64);
        let omega = ModulusSpec::power(0.5).unwrap();
        let params = ExperimentParams::new(2.0, 0.0).unwrap();
        let report = run_rate_experiment(
            &f,
            &m,
            &omega,
            &params,
            &geometric_degrees(2, 6),
            BoundVariant::Thm3ZeroBeta,
            Orientation::Forward,
        )
        .unwrap();
        assert!(report.degenerate);
        assert!(report.slope.is_none());
        for row in &report.rows {
            assert!(row.error <= 1e-12);
        }
    }

    #[test]
    fn class_flag_set_for_rows_outside_class() {
        let rows = vec![
            vec![1.0],
            vec![0.5, 0.5],
            vec![0.5, 0.0, 0.5],
        ];
        let m = SummabilityMatrix::from_rows("gap", rows).unwrap();
        let f = PeriodicFunction::from_fn("cos", Some(1.0), f64::cos).with_max_frequency(1);
        let omega = ModulusSpec::power(0.5).unwrap();
        let params = ExperimentParams::new(2.0, 0.0).unwrap();
        let report = run_rate_experiment(
            &f,
            &m,
            &omega,
            &params,
            &[2],
            BoundVariant::Thm1,
            Orientation::Forward,
        )
        .unwrap();
        assert!(!report.class_ok);
        assert!(report.max_class_constant.is_infinite());
    }

    #[test]
    fn error_decomposition_matches_transform_error() {
        let f = PeriodicFunction::from_fn("cos", Some(1.0), f64::cos).with_max_frequency(1);
        let m = SummabilityMatrix::fejer(16);
        let c = coefficients(&f, 16, 256).unwrap();
        for n in [4usize, 9, 16] {
            for &x in &[0.0, 0.9] {
                let t = crate::fourier::a_transform(&c, &m, n, x).unwrap();
                let (i1, i2) = error_decomposition(&f, &m, n, x, 2048).unwrap();
                assert_abs_diff_eq!(i1 + i2, t - f.eval(x), epsilon = 1e-5);
            }
        }
    }

    #[test]
    fn corollary_suite_rejects_out_of_range_sums() {
        let entries = corollary_suite(&[0.9], &[2.0], &geometric_degrees(4, 6)).unwrap();
        assert_eq!(entries.len(), 1);
        assert!(matches!(
            entries[0].status,
            CorollaryStatus::Rejected { .. }
        ));
    }

    #[test]
    fn corollary_suite_recovers_half_order() {
        let entries = corollary_suite(&[0.5], &[2.0], &geometric_degrees(4, 10)).unwrap();
        match &entries[0].status {
            CorollaryStatus::Ran { slope, pass, .. } => {
                assert!(*pass, "slope {slope}");
                assert!((slope + 0.5).abs() <= 0.1);
            }
            other => panic!("expected a completed run, got {other:?}"),
        }
    }
}
