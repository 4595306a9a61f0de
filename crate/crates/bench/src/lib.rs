//! Shared fixtures for the benchmark targets.

use summability_core::matrix::{NorlundWeights, SummabilityMatrix};
use summability_core::{coefficients, FourierCoefficients, PeriodicFunction};

/// The double-sum mean with unit weights, the workhorse non-uniform matrix.
pub fn lal_ones(n_max: usize) -> SummabilityMatrix {
    SummabilityMatrix::lal(&NorlundWeights::ones(n_max + 1), n_max).expect("unit weights are valid")
}

/// A power-kink test function with its coefficient table to degree `n`.
pub fn kink_with_coefficients(n: usize) -> (PeriodicFunction, FourierCoefficients) {
    let f = summability_core::fourier::absx(0.5).expect("valid exponent");
    let c = coefficients(&f, n, 4 * n).expect("resolution suffices");
    (f, c)
}
