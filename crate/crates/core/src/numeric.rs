//! Shared numerical primitives: compensated summation, periodic and adaptive
//! trapezoid quadrature, stable angle recurrences, and least-squares fitting.

use crate::{Error, Result};

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Kahan-compensated summation. The rounding error of the result is O(eps)
/// independent of the number of terms.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Running compensated accumulator for loops that cannot use an iterator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanAccumulator {
    sum: f64,
    comp: f64,
}

impl KahanAccumulator {
    pub fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum
    }
}

/// Trapezoid rule over one full period `[a, a + len)` with `m` uniform nodes.
/// For periodic integrands the wrap-around endpoint duplicates node 0, so the
/// rule reduces to the rectangle sum, which is spectrally accurate.
pub fn periodic_trapezoid(f: impl Fn(f64) -> f64, a: f64, len: f64, m: usize) -> f64 {
    let h = len / m as f64;
    h * kahan_sum((0..m).map(|j| f(a + h * j as f64)))
}

/// Composite trapezoid rule on `[a, b]` (endpoints weighted 1/2).
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut acc = KahanAccumulator::default();
    acc.add(0.5 * f(a));
    for j in 1..m {
        acc.add(f(a + h * j as f64));
    }
    acc.add(0.5 * f(b));
    h * acc.total()
}

const ADAPTIVE_MAX_DEPTH: u32 = 40;

/// Adaptive interval-halving quadrature on `[a, b]` with an absolute
/// tolerance. Panels refine with Simpson estimates (fourth order), so
/// near-machine tolerances resolve in tens of levels rather than the
/// millions a second-order refinement would need.
pub fn adaptive_quadrature(f: &dyn Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if !(b >= a) {
        return Err(Error::InvalidParams(format!(
            "adaptive quadrature needs an ordered interval, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = eval_finite(f, a)?;
    let fb = eval_finite(f, b)?;
    let mid = 0.5 * (a + b);
    let fm = eval_finite(f, mid)?;
    let whole = simpson(a, b, fa, fm, fb);
    adapt(f, a, b, fa, fm, fb, whole, abs_tol, ADAPTIVE_MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn eval_finite(f: &dyn Fn(f64) -> f64, t: f64) -> Result<f64> {
    let v = f(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::QuadratureFailure(format!(
            "non-finite integrand value at t = {t}"
        )))
    }
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let lm = 0.5 * (a + mid);
    let rm = 0.5 * (mid + b);
    let flm = eval_finite(f, lm)?;
    let frm = eval_finite(f, rm)?;
    let left = simpson(a, mid, fa, flm, fm);
    let right = simpson(mid, b, fm, frm, fb);
    let refined = left + right;
    if depth == 0 || (refined - whole).abs() <= 15.0 * tol || lm <= a || rm >= b {
        // Richardson correction for Simpson's rule (order 4).
        return Ok(refined + (refined - whole) / 15.0);
    }
    let l = adapt(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = adapt(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// Incremental rotation through a fixed angle step, in the numerically stable
/// two-term form: the update uses `2 sin^2(step/2)` rather than `cos(step) - 1`,
/// so accumulated error grows like sqrt(steps) instead of linearly.
#[derive(Debug, Clone, Copy)]
pub struct AngleStepper {
    cos: f64,
    sin: f64,
    alpha: f64,
    beta: f64,
}

impl AngleStepper {
    /// Starts at angle `theta0` and advances by `step` per call to `advance`.
    pub fn new(theta0: f64, step: f64) -> Self {
        let (sin, cos) = theta0.sin_cos();
        let alpha = 2.0 * (0.5 * step).sin().powi(2);
        let beta = step.sin();
        Self {
            cos,
            sin,
            alpha,
            beta,
        }
    }

    pub fn cos(&self) -> f64 {
        self.cos
    }

    pub fn sin(&self) -> f64 {
        self.sin
    }

    pub fn advance(&mut self) {
        let (c, s) = (self.cos, self.sin);
        self.cos = c - (self.alpha * c + self.beta * s);
        self.sin = s - (self.alpha * s - self.beta * c);
    }
}

/// Ordinary least-squares line fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope estimate (0 when the fit is exact or has
    /// no residual degrees of freedom).
    pub slope_stderr: f64,
}

/// Fits `y = intercept + slope * x` by least squares. Returns `None` when
/// fewer than two points are supplied or the abscissae are degenerate.
pub fn ols_line(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let nf = n as f64;
    let mean_x = kahan_sum(xs.iter().copied()) / nf;
    let mean_y = kahan_sum(ys.iter().copied()) / nf;
    let sxx = kahan_sum(xs.iter().map(|&x| (x - mean_x) * (x - mean_x)));
    if sxx == 0.0 {
        return None;
    }
    let sxy = kahan_sum(
        xs.iter()
            .zip(ys)
            .map(|(&x, &y)| (x - mean_x) * (y - mean_y)),
    );
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ssr = kahan_sum(xs.iter().zip(ys).map(|(&x, &y)| {
        let r = y - intercept - slope * x;
        r * r
    }));
    let slope_stderr = if n > 2 {
        (ssr / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Some(LineFit {
        slope,
        intercept,
        slope_stderr,
    })
}

/// Wraps `x` into the fundamental period `[-pi, pi)`.
pub fn wrap_to_period(x: f64) -> f64 {
    let y = x - TWO_PI * ((x + std::f64::consts::PI) / TWO_PI).floor();
    // Guard against the boundary rounding up to exactly pi.
    if y >= std::f64::consts::PI {
        y - TWO_PI
    } else {
        y
    }
}

/// Outcome of the half-range ratio comparison used to operationalize
/// boundedness claims at desk scale: the max over the later half of a sweep
/// must not exceed `factor` times the max over the earlier half.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BoundedProxy {
    pub low_max: f64,
    pub high_max: f64,
    pub factor: f64,
    pub holds: bool,
}

/// Splits `values` at the midpoint (earlier half gets the extra element) and
/// compares the maxima of the two halves.
pub fn bounded_ratio_proxy(values: &[f64], factor: f64) -> Option<BoundedProxy> {
    if values.len() < 2 {
        return None;
    }
    let split = values.len().div_ceil(2);
    let low_max = values[..split].iter().cloned().fold(0.0f64, f64::max);
    let high_max = values[split..].iter().cloned().fold(0.0f64, f64::max);
    Some(BoundedProxy {
        low_max,
        high_max,
        factor,
        holds: high_max <= factor * low_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kahan_handles_many_small_terms() {
        let n = 10_000_000;
        let s = kahan_sum((0..n).map(|_| 0.1));
        assert_relative_eq!(s, 0.1 * n as f64, max_relative = 1e-14);
    }

    #[test]
    fn periodic_trapezoid_is_spectrally_accurate() {
        // integral of cos^2 over a period is pi
        let v = periodic_trapezoid(|x| x.cos().powi(2), -std::f64::consts::PI, TWO_PI, 16);
        assert_relative_eq!(v, std::f64::consts::PI, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_quadrature_meets_tolerance() {
        let f = |t: f64| t.sqrt();
        let v = adaptive_quadrature(&f, 0.0, 1.0, 1e-10).unwrap();
        assert_relative_eq!(v, 2.0 / 3.0, epsilon = 1e-8);
    }

    #[test]
    fn adaptive_quadrature_rejects_non_finite() {
        let f = |t: f64| 1.0 / t;
        assert!(matches!(
            adaptive_quadrature(&f, 0.0, 1.0, 1e-8),
            Err(Error::QuadratureFailure(_))
        ));
    }

    #[test]
    fn angle_stepper_tracks_sin_cos() {
        let step = 0.37;
        let mut st = AngleStepper::new(1.2, step);
        for j in 0..10_000 {
            let theta = 1.2 + step * j as f64;
            assert_relative_eq!(st.cos(), theta.cos(), epsilon = 1e-11);
            assert_relative_eq!(st.sin(), theta.sin(), epsilon = 1e-11);
            st.advance();
        }
    }

    #[test]
    fn ols_recovers_exact_line() {
        let xs: Vec<f64> = (1..=8).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.5 - 2.0 * x).collect();
        let fit = ols_line(&xs, &ys).unwrap();
        assert_relative_eq!(fit.slope, -2.0, epsilon = 1e-12);
        assert_relative_eq!(fit.intercept, 3.5, epsilon = 1e-12);
        assert!(fit.slope_stderr < 1e-12);
    }

    #[test]
    fn wrap_lands_in_fundamental_interval() {
        for &x in &[0.0, 3.0, -3.0, 10.0, -10.0, 100.5, std::f64::consts::PI] {
            let w = wrap_to_period(x);
            assert!((-std::f64::consts::PI..std::f64::consts::PI).contains(&w), "{x} -> {w}");
            assert_relative_eq!(w.sin(), x.sin(), epsilon = 1e-12);
        }
    }

    #[test]
    fn bounded_proxy_splits_at_midpoint() {
        let p = bounded_ratio_proxy(&[1.0, 2.0, 3.0, 1.0, 1.5], 2.0).unwrap();
        assert_eq!(p.low_max, 3.0);
        assert_eq!(p.high_max, 1.5);
        assert!(p.holds);
    }
}
