//! Lower-triangular row-stochastic summability matrices and the weight
//! sequences generating the Nörlund-type families.

use crate::numeric::{kahan_sum, KahanAccumulator};
use crate::{Error, Result};

/// Tolerance on the row-stochastic invariant `sum_k a[n][k] = 1`.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// A lower-triangular matrix of nonnegative weights whose rows sum to one.
/// Row `n` holds the `n + 1` entries `a[n][0..=n]`; entries above the
/// diagonal are structurally absent.
#[derive(Debug, Clone, PartialEq)]
pub struct SummabilityMatrix {
    name: String,
    rows: Vec<Vec<f64>>,
}

/// Forward and backward partial sums of one matrix row:
/// `forward[m] = sum_{k=0}^{m} a[n][k]` and `backward[m] = sum_{k=m}^{n} a[n][k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailSums {
    pub forward: Vec<f64>,
    pub backward: Vec<f64>,
}

/// Which tail-sum family the growth check inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthMode {
    /// `A_{n,k} <= C * k / (n + 1)` using forward sums.
    Forward,
    /// The mirrored check on backward sums, `Abar_{n,n-k} <= C * k / (n + 1)`.
    Backward,
}

/// Result of the linear-growth check on tail sums.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GrowthReport {
    pub holds: bool,
    pub constant: f64,
}

impl SummabilityMatrix {
    /// Builds a matrix from explicit rows, validating shape, nonnegativity,
    /// and the row-stochastic invariant.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParams("matrix needs at least row 0".into()));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidParams(format!(
                    "row {n} must hold {} entries, got {}",
                    n + 1,
                    row.len()
                )));
            }
            if row.iter().any(|&a| !a.is_finite() || a < 0.0) {
                return Err(Error::InvalidParams(format!(
                    "row {n} contains a negative or non-finite entry"
                )));
            }
            let sum = kahan_sum(row.iter().copied());
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidParams(format!(
                    "row {n} sums to {sum}, violating row-stochasticity"
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            rows,
        })
    }

    /// The Fejér (C, 1) matrix: `a[n][k] = 1 / (n + 1)`.
    pub fn fejer(n_max: usize) -> Self {
        let rows = (0..=n_max)
            .map(|n| vec![1.0 / (n + 1) as f64; n + 1])
            .collect();
        Self {
            name: "fejer".into(),
            rows,
        }
    }

    /// The Nörlund-type double-sum mean
    /// `a[n][k] = (1 / (n + 1)) * sum_{nu=k}^{n} p_{nu-k} / P_nu`.
    ///
    /// Rows are built incrementally: the unnormalized row `n` extends row
    /// `n - 1` by adding `p_{n-k} / P_n` to every entry, so the full table
    /// costs O(n_max^2).
    pub fn lal(weights: &NorlundWeights, n_max: usize) -> Result<Self> {
        let cumulative = weights.cumulative_checked(n_max)?;
        let p = weights.p();
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);
        // unnorm[k] = sum_{nu=k}^{n} p_{nu-k} / P_nu for the current n
        let mut unnorm: Vec<f64> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let inv_pn = 1.0 / cumulative[n];
            for (k, u) in unnorm.iter_mut().enumerate() {
                *u += p[n - k] * inv_pn;
            }
            unnorm.push(p[0] * inv_pn);
            let scale = 1.0 / (n + 1) as f64;
            rows.push(unnorm.iter().map(|&u| u * scale).collect());
        }
        Ok(Self {
            name: "lal".into(),
            rows,
        })
    }

    /// The classical Nörlund mean `a[n][k] = p_{n-k} / P_n`.
    pub fn norlund(weights: &NorlundWeights, n_max: usize) -> Result<Self> {
        let cumulative = weights.cumulative_checked(n_max)?;
        let p = weights.p();
        let rows = (0..=n_max)
            .map(|n| {
                let inv_pn = 1.0 / cumulative[n];
                (0..=n).map(|k| p[n - k] * inv_pn).collect()
            })
            .collect();
        Ok(Self {
            name: "norlund".into(),
            rows,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Largest row index stored.
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Result<&[f64]> {
        self.rows.get(n).map(Vec::as_slice).ok_or(Error::RowOutOfRange {
            n,
            n_max: self.n_max(),
        })
    }

    /// Forward sums `A_{n,m}` and backward sums `Abar_{n,m}` of row `n`.
    pub fn tail_sums(&self, n: usize) -> Result<TailSums> {
        let row = self.row(n)?;
        let mut forward = Vec::with_capacity(row.len());
        let mut acc = KahanAccumulator::default();
        for &a in row {
            acc.add(a);
            forward.push(acc.total());
        }
        let mut backward = vec![0.0; row.len()];
        let mut acc = KahanAccumulator::default();
        for (m, &a) in row.iter().enumerate().rev() {
            acc.add(a);
            backward[m] = acc.total();
        }
        Ok(TailSums { forward, backward })
    }

    /// Checks the linear tail-sum growth `A_{n,k} = O(k / (n + 1))`
    /// (or its backward mirror), reporting the smallest admissible constant
    /// over all rows. Row 0 has an empty `k`-range and contributes nothing.
    pub fn remark1_growth(&self, mode: GrowthMode) -> GrowthReport {
        let mut constant: f64 = 0.0;
        for n in 0..=self.n_max() {
            let sums = self.tail_sums(n).expect("row index in range");
            for k in 1..=n {
                let value = match mode {
                    GrowthMode::Forward => sums.forward[k],
                    GrowthMode::Backward => sums.backward[n - k],
                };
                constant = constant.max(value * (n + 1) as f64 / k as f64);
            }
        }
        GrowthReport {
            holds: constant.is_finite(),
            constant,
        }
    }

    /// Serializes as `n,k,a` triples with a header line.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("n,k,a\n");
        for (n, row) in self.rows.iter().enumerate() {
            for (k, &a) in row.iter().enumerate() {
                out.push_str(&format!("{n},{k},{a}\n"));
            }
        }
        out
    }

    /// Parses the `n,k,a` CSV format produced by [`Self::to_csv_string`].
    /// Entries must cover every `(n, k)` with `k <= n` up to the largest row.
    pub fn from_csv_str(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut triples: Vec<(usize, usize, f64)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if idx == 0 && line.eq_ignore_ascii_case("n,k,a") {
                continue;
            }
            let mut parts = line.split(',');
            let bad = |msg: &str| Error::CsvFormat {
                line: idx + 1,
                msg: msg.into(),
            };
            let n: usize = parts
                .next()
                .ok_or_else(|| bad("missing n"))?
                .trim()
                .parse()
                .map_err(|_| bad("bad n"))?;
            let k: usize = parts
                .next()
                .ok_or_else(|| bad("missing k"))?
                .trim()
                .parse()
                .map_err(|_| bad("bad k"))?;
            let a: f64 = parts
                .next()
                .ok_or_else(|| bad("missing value"))?
                .trim()
                .parse()
                .map_err(|_| bad("bad value"))?;
            if k > n {
                return Err(bad("entry above the diagonal (k > n)"));
            }
            triples.push((n, k, a));
        }
        let n_max = triples
            .iter()
            .map(|&(n, _, _)| n)
            .max()
            .ok_or_else(|| Error::CsvFormat {
                line: 0,
                msg: "no matrix entries".into(),
            })?;
        let mut rows: Vec<Vec<Option<f64>>> = (0..=n_max).map(|n| vec![None; n + 1]).collect();
        for (n, k, a) in triples {
            if rows[n][k].replace(a).is_some() {
                return Err(Error::CsvFormat {
                    line: 0,
                    msg: format!("duplicate entry ({n}, {k})"),
                });
            }
        }
        let rows: Vec<Vec<f64>> = rows
            .into_iter()
            .enumerate()
            .map(|(n, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v.ok_or_else(|| Error::CsvFormat {
                            line: 0,
                            msg: format!("missing entry ({n}, {k})"),
                        })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(name, rows)
    }
}

/// A nonnegative weight sequence `p` with its cumulative sums
/// `P_nu = sum_{i=0}^{nu} p_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct NorlundWeights {
    p: Vec<f64>,
    cumulative: Vec<f64>,
}

impl NorlundWeights {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidParams("weight sequence is empty".into()));
        }
        if p.iter().any(|&v| !v.is_finite() || v < 0.0) {
            return Err(Error::InvalidParams(
                "weights must be nonnegative and finite".into(),
            ));
        }
        let mut cumulative = Vec::with_capacity(p.len());
        let mut acc = KahanAccumulator::default();
        for &v in &p {
            acc.add(v);
            cumulative.push(acc.total());
        }
        Ok(Self { p, cumulative })
    }

    /// `p_nu = 1`.
    pub fn ones(len: usize) -> Self {
        Self::new(vec![1.0; len]).expect("constant ones are valid")
    }

    /// `p_nu = 1 / (nu + 1)`.
    pub fn harmonic(len: usize) -> Self {
        Self::new((0..len).map(|nu| 1.0 / (nu + 1) as f64).collect())
            .expect("harmonic weights are valid")
    }

    /// `p_nu = ratio^nu` for `0 < ratio <= 1`.
    pub fn geometric(ratio: f64, len: usize) -> Result<Self> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "geometric ratio must lie in (0, 1], got {ratio}"
            )));
        }
        Self::new((0..len).map(|nu| ratio.powi(nu as i32)).collect())
    }

    /// `p_nu = nu + 1`.
    pub fn linear(len: usize) -> Self {
        Self::new((0..len).map(|nu| (nu + 1) as f64).collect()).expect("linear weights are valid")
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    /// Cumulative sums up to index `n`, failing if the sequence is too short
    /// or some `P_nu` vanishes.
    fn cumulative_checked(&self, n: usize) -> Result<&[f64]> {
        if self.p.len() <= n {
            return Err(Error::InvalidParams(format!(
                "weight sequence of length {} too short for n = {n}",
                self.p.len()
            )));
        }
        for (nu, &pv) in self.cumulative[..=n].iter().enumerate() {
            if pv <= 0.0 {
                return Err(Error::ZeroCumulativeWeight(nu));
            }
        }
        Ok(&self.cumulative[..=n])
    }

    /// The largest value of `P_tau * sum_{nu=tau}^{n} 1/P_nu / tau` over
    /// `1 <= tau <= n`.
    pub fn remark2_constant(&self, n: usize) -> Result<f64> {
        let cumulative = self.cumulative_checked(n)?;
        // suffix[tau] = sum_{nu=tau}^{n} 1 / P_nu
        let mut suffix = vec![0.0; n + 2];
        for tau in (0..=n).rev() {
            suffix[tau] = suffix[tau + 1] + 1.0 / cumulative[tau];
        }
        let mut constant: f64 = 0.0;
        for tau in 1..=n {
            constant = constant.max(cumulative[tau] * suffix[tau] / tau as f64);
        }
        Ok(constant)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("nu,p\n");
        for (nu, &p) in self.p.iter().enumerate() {
            out.push_str(&format!("{nu},{p}\n"));
        }
        out
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if idx == 0 && line.eq_ignore_ascii_case("nu,p") {
                continue;
            }
            let bad = |msg: &str| Error::CsvFormat {
                line: idx + 1,
                msg: msg.into(),
            };
            let mut parts = line.split(',');
            let nu: usize = parts
                .next()
                .ok_or_else(|| bad("missing nu"))?
                .trim()
                .parse()
                .map_err(|_| bad("bad nu"))?;
            if nu != values.len() {
                return Err(bad("indices must be consecutive from 0"));
            }
            let p: f64 = parts
                .next()
                .ok_or_else(|| bad("missing p"))?
                .trim()
                .parse()
                .map_err(|_| bad("bad p"))?;
            values.push(p);
        }
        Self::new(values)
    }
}
