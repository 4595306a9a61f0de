//! Dirichlet kernel evaluation and grid checks of the kernel bounds.

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{classify, SequenceClass};
use crate::matrix::SummabilityMatrix;
use crate::numeric::KahanAccumulator;
use crate::{Error, Result};

use std::f64::consts::PI;

/// Below this value of `|sin(t/2)|` the closed form is abandoned for the
/// cosine sum; catastrophic cancellation near `t = 2 l pi` is avoided while
/// the O(k) fallback stays rare.
pub const SIN_HALF_EPS: f64 = 1e-8;

/// Slack allowed on the unit-normalized kernel bound ratios.
pub const LEMMA1_SLACK: f64 = 1e-12;

/// The Dirichlet kernel `D_k(t)`.
///
/// Uses the closed form `sin((2k+1)t/2) / (2 sin(t/2))` away from the zeros
/// of `sin(t/2)` and the cosine sum `1/2 + sum_{nu=1}^{k} cos(nu t)` near
/// them; at `t = 2 l pi` the value is exactly `k + 1/2`.
pub fn dirichlet(k: usize, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    if s.abs() >= SIN_HALF_EPS {
        ((k as f64 + 0.5) * t).sin() / (2.0 * s)
    } else {
        let mut acc = KahanAccumulator::default();
        acc.add(0.5);
        for nu in 1..=k {
            acc.add((nu as f64 * t).cos());
        }
        acc.total()
    }
}

/// The weighted kernel sum `sum_{k=0}^{n} a[n][k] D_k(t)` for row `n`,
/// accumulated with compensated summation.
pub fn kernel_sum(matrix: &SummabilityMatrix, n: usize, t: f64) -> Result<f64> {
    let row = matrix.row(n)?;
    let s = (0.5 * t).sin();
    let mut acc = KahanAccumulator::default();
    if s.abs() >= SIN_HALF_EPS {
        let scale = 1.0 / (2.0 * s);
        for (k, &a) in row.iter().enumerate() {
            acc.add(a * ((k as f64 + 0.5) * t).sin() * scale);
        }
    } else {
        // Incremental cosine sums keep the fallback at O(n).
        let mut dk = 0.5;
        for (k, &a) in row.iter().enumerate() {
            if k > 0 {
                dk += (k as f64 * t).cos();
            }
            acc.add(a * dk);
        }
    }
    Ok(acc.total())
}

/// Closed form of the Fejér kernel `(1/(n+1)) sum_k D_k(t)`; used as an
/// independent oracle for [`kernel_sum`] on uniform rows.
pub fn fejer_kernel_closed(n: usize, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    if s.abs() < SIN_HALF_EPS {
        return 0.5 * (n + 1) as f64;
    }
    let r = ((n + 1) as f64 * 0.5 * t).sin() / s;
    r * r / (2.0 * (n + 1) as f64)
}

/// Result of a grid maximization of a normalized kernel ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelBoundReport {
    /// Kernel degree `k` or matrix row `n`, depending on the check.
    pub n: usize,
    pub grid_size: usize,
    pub max_ratio: f64,
    pub attained_t: f64,
    /// Grid points skipped because the scaling denominator vanished.
    pub skipped_points: usize,
}

impl KernelBoundReport {
    /// Whether the normalized ratio stays within the unit bound.
    pub fn passes(&self) -> bool {
        self.max_ratio <= 1.0 + LEMMA1_SLACK
    }
}

/// Scans `|D_k(t)| * |t| / pi` and `|D_k(t)| / (k + 1)` over a uniform grid
/// of `(0, pi]`. Both bounds hold with ratio at most 1; the reports carry the
/// observed maxima.
pub fn check_lemma1(k: usize, grid_size: usize) -> (KernelBoundReport, KernelBoundReport) {
    assert!(grid_size >= 2, "grid needs at least two points");
    let mut t_bound = (0.0f64, 0.0f64);
    let mut degree_bound = (0.0f64, 0.0f64);
    for j in 1..=grid_size {
        let t = PI * j as f64 / grid_size as f64;
        let d = dirichlet(k, t).abs();
        let rt = d * t / PI;
        if rt > t_bound.0 {
            t_bound = (rt, t);
        }
        let rk = d / (k + 1) as f64;
        if rk > degree_bound.0 {
            degree_bound = (rk, t);
        }
    }
    let mk = |max: (f64, f64)| KernelBoundReport {
        n: k,
        grid_size,
        max_ratio: max.0,
        attained_t: max.1,
        skipped_points: 0,
    };
    (mk(t_bound), mk(degree_bound))
}

/// Runs [`check_lemma1`] for every `k <= k_max` in parallel and returns the
/// per-degree report pairs in order.
pub fn check_lemma1_sweep(
    k_max: usize,
    grid_size: usize,
) -> Vec<(KernelBoundReport, KernelBoundReport)> {
    (0..=k_max)
        .into_par_iter()
        .map(|k| check_lemma1(k, grid_size))
        .collect()
}

/// Scans the weighted kernel-sum ratio over `t in [2 pi / n, pi]`:
/// `|kernel_sum| * t / A_{n,tau}` for MRBVS rows or
/// `|kernel_sum| * t / Abar_{n,n-2tau}` for MHBVS rows, with
/// `tau = floor(pi / t)`. The grid is the union of `grid_size` uniform points
/// and the partition points `pi / m` inside the range; points where the
/// scaling sum vanishes are skipped and counted.
pub fn check_lemma2(
    matrix: &SummabilityMatrix,
    n: usize,
    class: SequenceClass,
    grid_size: usize,
) -> Result<KernelBoundReport> {
    if !matches!(class, SequenceClass::Mrbvs | SequenceClass::Mhbvs) {
        return Err(Error::InvalidParams(
            "kernel-sum estimate applies to MRBVS or MHBVS rows".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidParams(
            "kernel-sum estimate needs n >= 2".into(),
        ));
    }
    let row = matrix.row(n)?;
    let verdict = classify(row, class)?;
    if !verdict.in_class {
        return Err(Error::NotInClass {
            n,
            class: class.to_string(),
        });
    }
    let sums = matrix.tail_sums(n)?;
    let lo = 2.0 * PI / n as f64;
    let mut grid: Vec<f64> = (0..grid_size)
        .map(|j| lo + (PI - lo) * j as f64 / (grid_size - 1) as f64)
        .collect();
    for m in 1..=n {
        let t = PI / m as f64;
        if t >= lo && t <= PI {
            grid.push(t);
        }
    }
    let mut max_ratio = 0.0f64;
    let mut attained_t = lo;
    let mut skipped = 0usize;
    for &t in &grid {
        let tau = (PI / t).floor() as usize;
        let denom = match class {
            SequenceClass::Mrbvs => sums.forward[tau.min(n)],
            SequenceClass::Mhbvs => sums.backward[n.saturating_sub(2 * tau)],
            _ => unreachable!(),
        };
        if denom <= 0.0 {
            skipped += 1;
            continue;
        }
        let ratio = kernel_sum(matrix, n, t)?.abs() * t / denom;
        if ratio > max_ratio {
            max_ratio = ratio;
            attained_t = t;
        }
    }
    Ok(KernelBoundReport {
        n,
        grid_size,
        max_ratio,
        attained_t,
        skipped_points: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::NorlundWeights;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn dirichlet_at_zero_is_k_plus_half() {
        assert_eq!(dirichlet(3, 0.0), 3.5);
        assert_eq!(dirichlet(0, 1.3), 0.5);
        assert_eq!(dirichlet(0, 0.0), 0.5);
    }

    #[test]
    fn dirichlet_at_pi_matches_cosine_sum() {
        assert_relative_eq!(dirichlet(1, PI), -0.5, epsilon = 1e-14);
    }

    #[test]
    fn dirichlet_branches_agree_on_overlap_band() {
        // Scan t slightly above 2 l pi where |sin(t/2)| is in [eps, 10 eps].
        // At l = 0 the half-angle is exactly representable and the branches
        // agree to 1e-9; at l >= 1 the argument itself carries ~l*pi*ulp of
        // rounding, which caps the achievable agreement near 1e-7.
        for l in 0..3 {
            let base = 2.0 * PI * l as f64;
            let tol = if l == 0 { 1e-9 } else { 1e-6 };
            for j in 1..=10 {
                let t = base + 2.0 * SIN_HALF_EPS * j as f64;
                let s = (0.5 * t).sin();
                assert!(s.abs() <= 10.0 * SIN_HALF_EPS * 1.5);
                for k in [1usize, 8, 50] {
                    let closed = ((k as f64 + 0.5) * t).sin() / (2.0 * s);
                    let summed: f64 =
                        0.5 + (1..=k).map(|nu| (nu as f64 * t).cos()).sum::<f64>();
                    assert_abs_diff_eq!(closed, summed, epsilon = tol);
                }
            }
        }
    }

    #[test]
    fn kernel_sum_two_term_cancellation() {
        let m = SummabilityMatrix::fejer(1);
        assert_abs_diff_eq!(kernel_sum(&m, 1, PI).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn kernel_sum_at_zero_is_mean_of_degrees() {
        let m = SummabilityMatrix::fejer(3);
        assert_relative_eq!(kernel_sum(&m, 3, 0.0).unwrap(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn fejer_kernel_sum_matches_closed_form() {
        let m = SummabilityMatrix::fejer(33);
        for j in 1..400 {
            let t = PI * j as f64 / 400.0;
            assert_abs_diff_eq!(
                kernel_sum(&m, 33, t).unwrap(),
                fejer_kernel_closed(33, t),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn fejer_kernel_sum_is_nonnegative() {
        let m = SummabilityMatrix::fejer(64);
        for j in 0..2000 {
            let t = PI * j as f64 / 1999.0;
            assert!(kernel_sum(&m, 64, t).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn kernel_sum_is_linear_in_the_row() {
        let w = NorlundWeights::harmonic(17);
        let a = SummabilityMatrix::lal(&w, 16).unwrap();
        let b = SummabilityMatrix::fejer(16);
        let lambda = 0.3;
        let mixed_rows: Vec<Vec<f64>> = (0..=16)
            .map(|n| {
                a.row(n)
                    .unwrap()
                    .iter()
                    .zip(b.row(n).unwrap())
                    .map(|(x, y)| lambda * x + (1.0 - lambda) * y)
                    .collect()
            })
            .collect();
        let mixed = SummabilityMatrix::from_rows("mixed", mixed_rows).unwrap();
        for j in 1..50 {
            let t = PI * j as f64 / 50.0;
            let lhs = kernel_sum(&mixed, 16, t).unwrap();
            let rhs = lambda * kernel_sum(&a, 16, t).unwrap()
                + (1.0 - lambda) * kernel_sum(&b, 16, t).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn lemma1_holds_for_degree_zero() {
        let (t_bound, degree_bound) = check_lemma1(0, 1000);
        assert!(t_bound.passes() && degree_bound.passes());
        assert_relative_eq!(degree_bound.max_ratio, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn lemma1_holds_on_fine_grid_for_large_degree() {
        let (t_bound, degree_bound) = check_lemma1(128, 10_000);
        assert!(t_bound.passes(), "t-bound ratio {}", t_bound.max_ratio);
        assert!(
            degree_bound.passes(),
            "degree-bound ratio {}",
            degree_bound.max_ratio
        );
    }

    #[test]
    fn lemma2_rejects_rows_outside_the_class() {
        // A row with an interior zero and variation after it is not MRBVS.
        let rows = vec![
            vec![1.0],
            vec![0.5, 0.5],
            vec![0.5, 0.0, 0.5],
        ];
        let m = SummabilityMatrix::from_rows("gap", rows).unwrap();
        assert!(matches!(
            check_lemma2(&m, 2, SequenceClass::Mrbvs, 64),
            Err(Error::NotInClass { n: 2, .. })
        ));
    }

    #[test]
    fn lemma2_fejer_ratio_is_finite_and_stable() {
        let m = SummabilityMatrix::fejer(64);
        let r = check_lemma2(&m, 64, SequenceClass::Mrbvs, 512).unwrap();
        assert!(r.max_ratio.is_finite());
        assert!(r.max_ratio > 0.0);
        assert!(r.attained_t >= 2.0 * PI / 64.0 && r.attained_t <= PI);
    }

    #[test]
    fn lemma2_degenerate_interval_at_n_two() {
        let m = SummabilityMatrix::fejer(2);
        let r = check_lemma2(&m, 2, SequenceClass::Mrbvs, 8).unwrap();
        assert!(r.max_ratio.is_finite());
    }
}
