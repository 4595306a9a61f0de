//! Periodic test functions, Fourier coefficients, partial sums, the matrix
//! transform of partial sums in multiplier and direct form, and `L^p` norms
//! over `[-pi, pi]`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::matrix::SummabilityMatrix;
use crate::numeric::{kahan_sum, periodic_trapezoid, wrap_to_period, AngleStepper, KahanAccumulator, TWO_PI};
use crate::{Error, Result};

/// Number of dyadic frequencies kept in the lacunar cosine series member.
pub const WEIERSTRASS_TERMS: usize = 12;

#[derive(Clone)]
enum Evaluator {
    Closure(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// Values on a uniform grid covering one period, linearly interpolated.
    Samples { x0: f64, step: f64, values: Vec<f64> },
}

/// An evaluable 2*pi-periodic real function with optional smoothness metadata.
#[derive(Clone)]
pub struct PeriodicFunction {
    name: String,
    evaluator: Evaluator,
    /// Known Hölder/Lipschitz exponent of the classical modulus, if any.
    lipschitz_alpha: Option<f64>,
    /// Largest harmonic present, when the function is a trigonometric
    /// polynomial or a truncated series; used to size anti-aliasing grids.
    max_frequency: Option<usize>,
}

impl std::fmt::Debug for PeriodicFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PeriodicFunction")
            .field("name", &self.name)
            .field("lipschitz_alpha", &self.lipschitz_alpha)
            .field("max_frequency", &self.max_frequency)
            .finish()
    }
}

impl PeriodicFunction {
    pub fn from_fn(
        name: impl Into<String>,
        lipschitz_alpha: Option<f64>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            evaluator: Evaluator::Closure(Arc::new(f)),
            lipschitz_alpha,
            max_frequency: None,
        }
    }

    pub fn with_max_frequency(mut self, nu: usize) -> Self {
        self.max_frequency = Some(nu);
        self
    }

    /// Builds a sampled function from values on a uniform grid starting at
    /// `x0` with the given step; the grid must cover one full period.
    pub fn from_samples(
        name: impl Into<String>,
        x0: f64,
        step: f64,
        values: Vec<f64>,
    ) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParams(
                "sampled functions need at least 2 nodes".into(),
            ));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidParams("sample step must be positive".into()));
        }
        let span = step * values.len() as f64;
        if (span - TWO_PI).abs() > 1e-6 {
            return Err(Error::InvalidParams(format!(
                "samples must cover one period: {} nodes at step {step} span {span}, expected {TWO_PI}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("sample values must be finite".into()));
        }
        Ok(Self {
            name: name.into(),
            evaluator: Evaluator::Samples { x0, step, values },
            lipschitz_alpha: None,
            max_frequency: None,
        })
    }

    /// Parses an `x,f` CSV with uniformly spaced abscissae (radians).
    /// Non-uniform grids are rejected with tolerance 1e-9 on the spacing.
    pub fn from_csv_str(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut xs: Vec<f64> = Vec::new();
        let mut vs: Vec<f64> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if idx == 0 && line.eq_ignore_ascii_case("x,f") {
                continue;
            }
            let bad = |msg: &str| Error::CsvFormat {
                line: idx + 1,
                msg: msg.into(),
            };
            let mut parts = line.split(',');
            let x: f64 = parts
                .next()
                .ok_or_else(|| bad("missing x"))?
                .trim()
                .parse()
                .map_err(|_| bad("bad x"))?;
            let v: f64 = parts
                .next()
                .ok_or_else(|| bad("missing f"))?
                .trim()
                .parse()
                .map_err(|_| bad("bad f"))?;
            xs.push(x);
            vs.push(v);
        }
        if xs.len() < 2 {
            return Err(Error::CsvFormat {
                line: 0,
                msg: "need at least two samples".into(),
            });
        }
        let step = xs[1] - xs[0];
        for (j, pair) in xs.windows(2).enumerate() {
            if ((pair[1] - pair[0]) - step).abs() > 1e-9 {
                return Err(Error::CsvFormat {
                    line: j + 2,
                    msg: format!(
                        "non-uniform grid: spacing {} differs from {step}",
                        pair[1] - pair[0]
                    ),
                });
            }
        }
        Self::from_samples(name, xs[0], step, vs)
    }

    /// Emits an `x,f` CSV of `m` uniform samples over `[-pi, pi)`.
    pub fn sample_csv(&self, m: usize) -> String {
        let h = TWO_PI / m as f64;
        let mut out = String::from("x,f\n");
        for j in 0..m {
            let x = -PI + h * j as f64;
            out.push_str(&format!("{x},{}\n", self.eval(x)));
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lipschitz_alpha(&self) -> Option<f64> {
        self.lipschitz_alpha
    }

    pub fn max_frequency(&self) -> Option<usize> {
        self.max_frequency
    }

    /// Evaluates the function; the argument is wrapped into the fundamental
    /// period first.
    pub fn eval(&self, x: f64) -> f64 {
        match &self.evaluator {
            Evaluator::Closure(f) => f(wrap_to_period(x)),
            Evaluator::Samples { x0, step, values } => {
                let m = values.len();
                let u = (x - x0).rem_euclid(TWO_PI);
                let pos = u / step;
                let j = (pos.floor() as usize).min(m - 1);
                let frac = pos - j as f64;
                let next = values[(j + 1) % m];
                values[j] + frac * (next - values[j])
            }
        }
    }
}

/// Cosine/sine coefficient table `a_0; a_nu, b_nu (nu = 1..=N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    pub a0: f64,
    pub cosine: Vec<f64>,
    pub sine: Vec<f64>,
}

impl FourierCoefficients {
    pub fn degree(&self) -> usize {
        self.cosine.len()
    }
}

/// Computes coefficients up to degree `n_degree` by the periodic trapezoid
/// rule. Requires `quad_points >= 4 * n_degree` (4x oversampling controls
/// aliasing); sampled functions use their native grid, whose length must
/// satisfy the same bound.
pub fn coefficients(
    f: &PeriodicFunction,
    n_degree: usize,
    quad_points: usize,
) -> Result<FourierCoefficients> {
    let needed = (4 * n_degree).max(1);
    let (x0, step, values): (f64, f64, Vec<f64>) = match &f.evaluator {
        Evaluator::Samples { x0, step, values } => {
            if values.len() < needed {
                return Err(Error::InsufficientResolution {
                    degree: n_degree,
                    needed,
                    got: values.len(),
                });
            }
            (*x0, *step, values.clone())
        }
        Evaluator::Closure(_) => {
            if quad_points < needed {
                return Err(Error::InsufficientResolution {
                    degree: n_degree,
                    needed,
                    got: quad_points,
                });
            }
            let h = TWO_PI / quad_points as f64;
            let values = (0..quad_points)
                .map(|j| f.eval(-PI + h * j as f64))
                .collect();
            (-PI, h, values)
        }
    };
    let scale = step / PI;
    let a0 = scale * kahan_sum(values.iter().copied());
    let mut cosine = Vec::with_capacity(n_degree);
    let mut sine = Vec::with_capacity(n_degree);
    for nu in 1..=n_degree {
        let mut stepper = AngleStepper::new(nu as f64 * x0, nu as f64 * step);
        let mut ac = KahanAccumulator::default();
        let mut bs = KahanAccumulator::default();
        for &v in &values {
            ac.add(v * stepper.cos());
            bs.add(v * stepper.sin());
            stepper.advance();
        }
        cosine.push(scale * ac.total());
        sine.push(scale * bs.total());
    }
    Ok(FourierCoefficients { a0, cosine, sine })
}

/// Evaluates `a0/2 + sum_{nu=1}^{len} (ac[nu-1] cos(nu x) + bs[nu-1] sin(nu x))`.
fn trig_sum(a0: f64, ac: &[f64], bs: &[f64], x: f64) -> f64 {
    let mut stepper = AngleStepper::new(x, x);
    let mut acc = KahanAccumulator::default();
    acc.add(0.5 * a0);
    for (a, b) in ac.iter().zip(bs) {
        acc.add(a * stepper.cos() + b * stepper.sin());
        stepper.advance();
    }
    acc.total()
}

/// The partial sum `S_k f(x)` from a coefficient table.
pub fn partial_sum(c: &FourierCoefficients, k: usize, x: f64) -> Result<f64> {
    if k > c.degree() {
        return Err(Error::DegreeExceeded {
            requested: k,
            available: c.degree(),
        });
    }
    Ok(trig_sum(c.a0, &c.cosine[..k], &c.sine[..k], x))
}

/// One matrix row applied to the partial sums of `f`, in multiplier form:
/// exchanging the summation order turns `sum_k a[n][k] S_k f(x)` into
/// `a0/2 + sum_nu Abar_{n,nu} (a_nu cos + b_nu sin)`, which is O(n) per point
/// after the tail sums are precomputed.
#[derive(Debug, Clone)]
pub struct TransformRow {
    weighted_cos: Vec<f64>,
    weighted_sin: Vec<f64>,
    a0: f64,
}

impl TransformRow {
    pub fn new(c: &FourierCoefficients, matrix: &SummabilityMatrix, n: usize) -> Result<Self> {
        if n > c.degree() {
            return Err(Error::DegreeExceeded {
                requested: n,
                available: c.degree(),
            });
        }
        let tails = matrix.tail_sums(n)?;
        let weighted_cos = (1..=n).map(|nu| tails.backward[nu] * c.cosine[nu - 1]).collect();
        let weighted_sin = (1..=n).map(|nu| tails.backward[nu] * c.sine[nu - 1]).collect();
        Ok(Self {
            weighted_cos,
            weighted_sin,
            a0: c.a0,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        trig_sum(self.a0, &self.weighted_cos, &self.weighted_sin, x)
    }
}

/// Multiplier-form transform value at one point.
pub fn a_transform(
    c: &FourierCoefficients,
    matrix: &SummabilityMatrix,
    n: usize,
    x: f64,
) -> Result<f64> {
    Ok(TransformRow::new(c, matrix, n)?.eval(x))
}

/// Direct-form transform: the explicit weighted sum of partial sums. O(n^2)
/// per point; retained as the independent oracle for the multiplier form.
pub fn a_transform_direct(
    c: &FourierCoefficients,
    matrix: &SummabilityMatrix,
    n: usize,
    x: f64,
) -> Result<f64> {
    if n > c.degree() {
        return Err(Error::DegreeExceeded {
            requested: n,
            available: c.degree(),
        });
    }
    let row = matrix.row(n)?;
    let mut acc = KahanAccumulator::default();
    for (k, &a) in row.iter().enumerate() {
        acc.add(a * partial_sum(c, k, x)?);
    }
    Ok(acc.total())
}

/// `L^p` norm of a periodic function over `[-pi, pi)` by the periodic
/// trapezoid rule.
pub fn lp_norm(g: &PeriodicFunction, p: f64, quad_points: usize) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let integral = periodic_trapezoid(|x| g.eval(x).abs().powf(p), -PI, TWO_PI, quad_points);
    Ok(integral.powf(1.0 / p))
}

/// `L^p` norm of values sampled uniformly over one period.
pub fn lp_norm_samples(values: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if values.is_empty() {
        return Err(Error::InvalidParams("no samples".into()));
    }
    let h = TWO_PI / values.len() as f64;
    let integral = h * kahan_sum(values.iter().map(|v| v.abs().powf(p)));
    Ok(integral.powf(1.0 / p))
}

/// The periodized power kink `|x|^alpha` on `[-pi, pi)`.
pub fn absx(alpha: f64) -> Result<PeriodicFunction> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "kink exponent must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(PeriodicFunction::from_fn(
        format!("absx:{alpha}"),
        Some(alpha),
        move |x| x.abs().powf(alpha),
    ))
}

/// The lacunar cosine series `sum_{j=0}^{J} 2^{-j alpha} cos(2^j x)`, whose
/// classical modulus is of exact order `delta^alpha`.
pub fn weierstrass(alpha: f64) -> Result<PeriodicFunction> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "lacunar exponent must lie in (0, 1], got {alpha}"
        )));
    }
    let amps: Vec<f64> = (0..=WEIERSTRASS_TERMS)
        .map(|j| 2f64.powf(-(j as f64) * alpha))
        .collect();
    let f = PeriodicFunction::from_fn(format!("weierstrass:{alpha}"), Some(alpha), move |x| {
        kahan_sum(
            amps.iter()
                .enumerate()
                .map(|(j, &a)| a * ((1u64 << j) as f64 * x).cos()),
        )
    });
    Ok(f.with_max_frequency(1usize << WEIERSTRASS_TERMS))
}

/// The named test functions: power kinks for several exponents, the lacunar
/// series, two trigonometric monomials, a constant, and a piecewise-linear
/// hat. Lipschitz metadata is set where known.
pub fn corpus() -> Vec<PeriodicFunction> {
    vec![
        absx(0.3).unwrap(),
        absx(0.5).unwrap(),
        absx(0.7).unwrap(),
        absx(1.0).unwrap(),
        weierstrass(0.5).unwrap(),
        PeriodicFunction::from_fn("cos", Some(1.0), f64::cos).with_max_frequency(1),
        PeriodicFunction::from_fn("sin3x", Some(1.0), |x| (3.0 * x).sin()).with_max_frequency(3),
        PeriodicFunction::from_fn("constant", Some(1.0), |_| 1.0).with_max_frequency(0),
        PeriodicFunction::from_fn("hat", Some(1.0), |x| (1.0 - 2.0 * x.abs() / PI).max(0.0)),
    ]
}

/// Resolves a corpus-style name, accepting parameterized forms such as
/// `absx:0.42` and `weierstrass:0.6`.
pub fn corpus_item(name: &str) -> Result<PeriodicFunction> {
    if let Some(alpha) = name.strip_prefix("absx:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad exponent in '{name}'")))?;
        return absx(alpha);
    }
    if let Some(alpha) = name.strip_prefix("weierstrass:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad exponent in '{name}'")))?;
        return weierstrass(alpha);
    }
    corpus()
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::InvalidParams(format!("unknown function '{name}'")))
}

/// Largest increment `|f(x + delta) - f(x)|` over a uniform x-grid; a cheap
/// stand-in for the sup-norm classical modulus in metadata checks.
pub fn sup_modulus(f: &PeriodicFunction, delta: f64, grid: usize) -> f64 {
    (0..grid)
        .map(|j| {
            let x = -PI + TWO_PI * j as f64 / grid as f64;
            (f.eval(x + delta) - f.eval(x)).abs()
        })
        .fold(0.0, f64::max)
}
