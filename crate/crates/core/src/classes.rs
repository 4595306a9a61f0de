//! Bounded-variation sequence classes for finite matrix rows.
//!
//! A row `c = (c_0, ..., c_n)` is tested against four conditions, each of the
//! form `LHS(m) <= K * RHS(m)` for `0 <= m < n`:
//!
//! - RBVS:  `sum_{k=m}^{n-1} |c_k - c_{k+1}| <= K * c_m`
//! - MRBVS: the same left side with the averaged right side
//!   `(1/(m+1)) * sum_{k=ceil(m/2)}^{m} c_k`
//! - HBVS:  `sum_{k=0}^{n-m-1} |c_k - c_{k+1}| <= K * c_{n-m}`
//! - MHBVS: the same left side with `(1/(m+1)) * sum_{k=n-m}^{n} c_k`
//!
//! The reported constant is the max of `LHS(m) / RHS(m)` with the conventions
//! `0/0 = 0` and `x/0 = +inf` for `x > 0`. All four classes share the same
//! `m`-range, which makes the inclusions RBVS => MRBVS and HBVS => MHBVS hold
//! ratio-by-ratio: the averaged right side contains the single-term right
//! side with weight `1/(m+1)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The four row classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceClass {
    #[serde(rename = "RBVS")]
    Rbvs,
    #[serde(rename = "HBVS")]
    Hbvs,
    #[serde(rename = "MRBVS")]
    Mrbvs,
    #[serde(rename = "MHBVS")]
    Mhbvs,
}

impl SequenceClass {
    pub const ALL: [SequenceClass; 4] = [
        SequenceClass::Rbvs,
        SequenceClass::Hbvs,
        SequenceClass::Mrbvs,
        SequenceClass::Mhbvs,
    ];
}

impl std::fmt::Display for SequenceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SequenceClass::Rbvs => "RBVS",
            SequenceClass::Hbvs => "HBVS",
            SequenceClass::Mrbvs => "MRBVS",
            SequenceClass::Mhbvs => "MHBVS",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for SequenceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rbvs" => Ok(SequenceClass::Rbvs),
            "hbvs" => Ok(SequenceClass::Hbvs),
            "mrbvs" => Ok(SequenceClass::Mrbvs),
            "mhbvs" => Ok(SequenceClass::Mhbvs),
            other => Err(Error::InvalidParams(format!("unknown class '{other}'"))),
        }
    }
}

/// Verdict of a class check: the minimal admissible constant and the index
/// attaining it. `constant` is `+inf` exactly when the row is not in the
/// class; serialization maps that to JSON `null`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassReport {
    pub class_label: SequenceClass,
    pub in_class: bool,
    pub constant: f64,
    pub witness_m: usize,
}

/// Left/right-hand sides of the class inequality at a single offset `m`.
fn class_sides(c: &[f64], diffs_suffix: &[f64], prefix: &[f64], class: SequenceClass, m: usize) -> (f64, f64) {
    let n = c.len() - 1;
    match class {
        SequenceClass::Rbvs => (diffs_suffix[m], c[m]),
        SequenceClass::Mrbvs => {
            let lo = m.div_ceil(2);
            let window = prefix[m + 1] - prefix[lo];
            (diffs_suffix[m], window / (m + 1) as f64)
        }
        // Head variation up to index n - m expressed via the suffix table:
        // sum_{k=0}^{n-m-1} |d_k| = total - sum_{k=n-m}^{n-1} |d_k|
        SequenceClass::Hbvs => (diffs_suffix[0] - diffs_suffix[n - m], c[n - m]),
        SequenceClass::Mhbvs => {
            let window = prefix[n + 1] - prefix[n - m];
            (
                diffs_suffix[0] - diffs_suffix[n - m],
                window / (m + 1) as f64,
            )
        }
    }
}

/// Classifies a finite row of nonnegative reals.
pub fn classify(row: &[f64], class: SequenceClass) -> Result<ClassReport> {
    if row.len() < 2 {
        return Err(Error::EmptyRow);
    }
    if row.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::InvalidParams(
            "row entries must be nonnegative and finite".into(),
        ));
    }
    let n = row.len() - 1;
    // diffs_suffix[m] = sum_{k=m}^{n-1} |c_k - c_{k+1}|, diffs_suffix[n] = 0
    let mut diffs_suffix = vec![0.0; n + 1];
    for m in (0..n).rev() {
        diffs_suffix[m] = diffs_suffix[m + 1] + (row[m] - row[m + 1]).abs();
    }
    let mut prefix = vec![0.0; n + 2];
    for (k, &v) in row.iter().enumerate() {
        prefix[k + 1] = prefix[k] + v;
    }
    let mut constant = 0.0f64;
    let mut witness_m = 0usize;
    for m in 0..n {
        let (lhs, rhs) = class_sides(row, &diffs_suffix, &prefix, class, m);
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if ratio > constant {
            constant = ratio;
            witness_m = m;
        }
    }
    Ok(ClassReport {
        class_label: class,
        in_class: constant.is_finite(),
        constant,
        witness_m,
    })
}

/// Exact membership predicate on integer numerators. Over a finite row every
/// ratio with a positive denominator is finite, so membership reduces to the
/// zero pattern: the row is in the class iff no offset has `LHS > 0` with
/// `RHS = 0`. Integer arithmetic makes this decision exact.
fn in_class_exact(numer: &[u64], class: SequenceClass) -> bool {
    let n = numer.len() - 1;
    let mut diffs_suffix = vec![0u64; n + 1];
    for m in (0..n).rev() {
        diffs_suffix[m] = diffs_suffix[m + 1] + numer[m].abs_diff(numer[m + 1]);
    }
    let mut prefix = vec![0u64; n + 2];
    for (k, &v) in numer.iter().enumerate() {
        prefix[k + 1] = prefix[k] + v;
    }
    (0..n).all(|m| {
        let (lhs, rhs) = match class {
            SequenceClass::Rbvs => (diffs_suffix[m], numer[m]),
            SequenceClass::Mrbvs => (diffs_suffix[m], prefix[m + 1] - prefix[m.div_ceil(2)]),
            SequenceClass::Hbvs => (diffs_suffix[0] - diffs_suffix[n - m], numer[n - m]),
            SequenceClass::Mhbvs => (
                diffs_suffix[0] - diffs_suffix[n - m],
                prefix[n + 1] - prefix[n - m],
            ),
        };
        rhs > 0 || lhs == 0
    })
}

/// Searches for a normalized nonnegative row separating the mean-averaged
/// class from its un-averaged counterpart. Candidates are drawn as small
/// integer numerators, the verdict is decided exactly in integer arithmetic,
/// and only then is the row normalized to floats (zero entries stay exact
/// zeros under scaling, so the float classify verdict matches).
/// Returns `None` when `trials` randomized attempts all fail.
pub fn find_separating_witness(
    target_in: SequenceClass,
    target_out: SequenceClass,
    length: usize,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<Option<Vec<f64>>> {
    match (target_in, target_out) {
        (SequenceClass::Mrbvs, SequenceClass::Rbvs) | (SequenceClass::Mhbvs, SequenceClass::Hbvs) => {}
        _ => return Err(Error::InvalidClassPair),
    }
    if length < 3 {
        return Err(Error::InvalidParams(
            "witness rows need at least 3 entries".into(),
        ));
    }
    for _ in 0..trials {
        let mut numer: Vec<u64> = (0..length).map(|_| rng.random_range(0..=16u64)).collect();
        // Plant an interior zero half the time; an un-averaged condition can
        // only fail through a zero entry with variation beyond it.
        if rng.random_bool(0.5) {
            let idx = rng.random_range(1..length - 1);
            numer[idx] = 0;
        }
        let total: u64 = numer.iter().sum();
        if total == 0 {
            continue;
        }
        if !(in_class_exact(&numer, target_in) && !in_class_exact(&numer, target_out)) {
            continue;
        }
        let row: Vec<f64> = numer
            .iter()
            .map(|&v| v as f64 / total as f64)
            .collect();
        debug_assert!({
            let rin = classify(&row, target_in).unwrap();
            let rout = classify(&row, target_out).unwrap();
            rin.in_class && !rout.in_class
        });
        return Ok(Some(row));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_row_has_zero_variation() {
        let r = classify(&[0.25; 4], SequenceClass::Mrbvs).unwrap();
        assert!(r.in_class);
        assert_eq!(r.constant, 0.0);
        for class in SequenceClass::ALL {
            assert!(classify(&[0.25; 4], class).unwrap().in_class);
        }
    }

    #[test]
    fn decreasing_row_mrbvs_constant_attained_at_one() {
        // Exhaustive evaluation gives LHS(1) = 0.2 against RHS(1) = 0.15.
        let r = classify(&[0.4, 0.3, 0.2, 0.1], SequenceClass::Mrbvs).unwrap();
        assert!(r.in_class);
        assert_relative_eq!(r.constant, 4.0 / 3.0, epsilon = 1e-14);
        assert_eq!(r.witness_m, 1);
    }

    #[test]
    fn interior_zero_splits_rbvs_from_mrbvs() {
        // Zero at index 2 with variation after it: RBVS sees 0.2 / 0 at m = 2,
        // MRBVS averages in c_1 > 0 over the window [1, 2]. Exhaustive ratios:
        // m = 0: 0.5/0.3, m = 1: 0.5/0.15, m = 2: 0.2/0.1, m = 3: 0.
        let row = [0.3, 0.3, 0.0, 0.2, 0.2];
        let rb = classify(&row, SequenceClass::Rbvs).unwrap();
        assert!(!rb.in_class);
        assert!(rb.constant.is_infinite());
        assert_eq!(rb.witness_m, 2);
        let mr = classify(&row, SequenceClass::Mrbvs).unwrap();
        assert!(mr.in_class);
        assert_relative_eq!(mr.constant, 10.0 / 3.0, epsilon = 1e-14);
        assert_eq!(mr.witness_m, 1);
    }

    #[test]
    fn short_rows_are_rejected() {
        assert!(matches!(
            classify(&[1.0], SequenceClass::Rbvs),
            Err(Error::EmptyRow)
        ));
    }

    #[test]
    fn monotone_rows_are_in_rbvs() {
        // Telescoping: LHS(m) = c_m - c_n <= c_m.
        let row = [0.5, 0.25, 0.15, 0.1];
        let r = classify(&row, SequenceClass::Rbvs).unwrap();
        assert!(r.in_class);
        assert!(r.constant <= 1.0 + 1e-15);
    }

    #[test]
    fn witness_search_finds_both_separations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w = find_separating_witness(SequenceClass::Mrbvs, SequenceClass::Rbvs, 8, 100_000, &mut rng)
            .unwrap()
            .expect("witness should exist at length 8");
        assert!(classify(&w, SequenceClass::Mrbvs).unwrap().in_class);
        assert!(!classify(&w, SequenceClass::Rbvs).unwrap().in_class);
        assert_relative_eq!(w.iter().sum::<f64>(), 1.0, epsilon = 1e-12);

        let w = find_separating_witness(SequenceClass::Mhbvs, SequenceClass::Hbvs, 8, 100_000, &mut rng)
            .unwrap()
            .expect("witness should exist at length 8");
        assert!(classify(&w, SequenceClass::Mhbvs).unwrap().in_class);
        assert!(!classify(&w, SequenceClass::Hbvs).unwrap().in_class);
    }

    #[test]
    fn inclusion_direction_is_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            find_separating_witness(SequenceClass::Rbvs, SequenceClass::Mrbvs, 8, 10, &mut rng),
            Err(Error::InvalidClassPair)
        ));
    }

    #[test]
    fn exact_and_float_verdicts_agree_on_random_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..2000 {
            let len = rng.random_range(3..10usize);
            let numer: Vec<u64> = (0..len).map(|_| rng.random_range(0..=8u64)).collect();
            let total: u64 = numer.iter().sum();
            if total == 0 {
                continue;
            }
            let row: Vec<f64> = numer.iter().map(|&v| v as f64 / total as f64).collect();
            for class in SequenceClass::ALL {
                let float_verdict = classify(&row, class).unwrap().in_class;
                assert_eq!(float_verdict, in_class_exact(&numer, class));
            }
        }
    }
}
