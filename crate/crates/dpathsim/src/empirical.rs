//! Empirical cumulative distribution functions over packet delay samples.
//!
//! Delay traces are ingested as raw microsecond values, rounded to
//! nanosecond (three-decimal) resolution so distinct-value binning is
//! deterministic across platforms, and reduced to a step ECDF: for each
//! distinct value the cumulative probability is the exact count of samples
//! at or below it divided by the total sample count. No interpolation is
//! performed anywhere; quantiles and samples only ever return observed
//! values.

use rand::Rng;

use crate::error::{Error, Result};

/// Multiplier implementing the nanosecond-resolution ingestion rounding.
const NS_PER_US: f64 = 1000.0;

fn round_to_ns(value_us: f64) -> f64 {
    (value_us * NS_PER_US).round() / NS_PER_US
}

/// One per-packet delay observation in microseconds.
///
/// Construction validates the value (finite, non-negative) and rounds it
/// to three decimal places, the resolution at which all delay values are
/// compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaySample(f64);

impl DelaySample {
    /// Returns `None` for NaN, infinities, and negative values.
    pub fn new(value_us: f64) -> Option<Self> {
        if !value_us.is_finite() || value_us < 0.0 {
            return None;
        }
        let rounded = round_to_ns(value_us);
        if !rounded.is_finite() {
            return None;
        }
        Some(DelaySample(rounded))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Validates and canonicalizes a raw trace, naming the offending index on
/// failure.
fn ingest(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::EmptyTrace);
    }
    samples
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            DelaySample::new(value)
                .map(DelaySample::value)
                .ok_or(Error::InvalidSample { index, value })
        })
        .collect()
}

/// Sorted distinct values with occurrence counts.
fn distinct_counts(samples: &[f64]) -> Result<Vec<(f64, u64)>> {
    let mut values = ingest(samples)?;
    values.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, u64)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    Ok(out)
}

/// Relative frequency of each distinct delay value: occurrence count over
/// total sample count. Returned sorted by value; the frequencies sum to 1
/// up to floating-point rounding.
pub fn relative_frequencies(samples: &[f64]) -> Result<Vec<(f64, f64)>> {
    let n = samples.len() as f64;
    Ok(distinct_counts(samples)?
        .into_iter()
        .map(|(value, count)| (value, count as f64 / n))
        .collect())
}

/// A step ECDF over observed delay values.
///
/// `support` holds the distinct values in strictly increasing order and
/// `cum_prob[i]` is exactly `(samples <= support[i]) / n_samples`, so the
/// final entry is exactly 1. The distribution is immutable after
/// construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    support: Vec<f64>,
    cum_prob: Vec<f64>,
    n_samples: u64,
}

impl EmpiricalDistribution {
    /// Builds the ECDF of a raw delay trace. Insensitive to input order.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let counts = distinct_counts(samples)?;
        let n = samples.len() as u64;
        let mut support = Vec::with_capacity(counts.len());
        let mut cum_prob = Vec::with_capacity(counts.len());
        let mut cumulative = 0u64;
        for (value, count) in counts {
            cumulative += count;
            support.push(value);
            // Exact count ratio; the last entry is n/n = 1 exactly.
            cum_prob.push(cumulative as f64 / n as f64);
        }
        Ok(EmpiricalDistribution {
            support,
            cum_prob,
            n_samples: n,
        })
    }

    /// Reassembles a distribution from stored parts, revalidating every
    /// invariant. Used when loading persisted models.
    pub fn from_parts(support: Vec<f64>, cum_prob: Vec<f64>, n_samples: u64) -> Result<Self> {
        let fail = |message: &str| Error::InvalidDistribution {
            message: message.to_string(),
        };
        if support.is_empty() || support.len() != cum_prob.len() {
            return Err(fail(
                "support and cum_prob must be non-empty and equal length",
            ));
        }
        if n_samples == 0 {
            return Err(fail("n_samples must be at least 1"));
        }
        for &v in &support {
            if !v.is_finite() || v < 0.0 {
                return Err(fail("support values must be finite and non-negative"));
            }
        }
        if !support.windows(2).all(|w| w[0] < w[1]) {
            return Err(fail("support must be strictly increasing"));
        }
        if !cum_prob.windows(2).all(|w| w[0] < w[1]) {
            return Err(fail("cum_prob must be strictly increasing"));
        }
        if cum_prob[0] <= 0.0 || *cum_prob.last().unwrap() != 1.0 {
            return Err(fail("cum_prob must lie in (0, 1] and end exactly at 1"));
        }
        Ok(EmpiricalDistribution {
            support,
            cum_prob,
            n_samples,
        })
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn cum_prob(&self) -> &[f64] {
        &self.cum_prob
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn min(&self) -> f64 {
        self.support[0]
    }

    pub fn max(&self) -> f64 {
        *self.support.last().unwrap()
    }

    /// F(x): the fraction of underlying samples at or below `x`.
    /// Right-continuous; 0 below the support, 1 at and above its maximum.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::InvalidQuery);
        }
        let idx = self.support.partition_point(|&v| v <= x);
        Ok(if idx == 0 {
            0.0
        } else {
            self.cum_prob[idx - 1]
        })
    }

    /// Generalized inverse of the step CDF: the smallest support value `v`
    /// with `F(v) >= p`. Ties resolve toward the smaller value.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidProbability { p });
        }
        let idx = self.cum_prob.partition_point(|&c| c < p);
        // idx < len because the final cum_prob is exactly 1 >= p.
        Ok(self.support[idx])
    }

    /// Inverse-transform sampling: draws u uniform in (0, 1] and returns
    /// `quantile(u)`. The result is always a member of the support.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u = 1.0 - rng.gen::<f64>();
        let idx = self.cum_prob.partition_point(|&c| c < u);
        self.support[idx]
    }

    /// Probability mass at each support point.
    fn masses(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.support
            .iter()
            .zip(self.cum_prob.iter())
            .scan(0.0, |prev, (&value, &cum)| {
                let mass = cum - *prev;
                *prev = cum;
                Some((value, mass))
            })
    }

    /// Mass-weighted mean of the distribution.
    pub fn mean(&self) -> f64 {
        self.masses().map(|(v, m)| v * m).sum()
    }

    /// Mass-weighted population variance.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.masses()
            .map(|(v, m)| m * (v - mean) * (v - mean))
            .sum()
    }

    pub fn summarize(&self) -> DistributionSummary {
        DistributionSummary {
            min: self.min(),
            max: self.max(),
            mean: self.mean(),
            median: self.quantile(0.5).expect("0.5 is a valid probability"),
            p95: self.quantile(0.95).expect("0.95 is a valid probability"),
            p99: self.quantile(0.99).expect("0.99 is a valid probability"),
            n: self.n_samples,
        }
    }
}

/// Scalar digest of a distribution, in microseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
    pub p95: f64,
    pub p99: f64,
    pub n: u64,
}

/// Kolmogorov-Smirnov distance: the supremum over the union of both
/// supports of |F_a(x) - F_b(x)|. Symmetric, in [0, 1], and 0 exactly when
/// the two step functions are identical.
pub fn ks_distance(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    let (sa, sb) = (a.support(), b.support());
    let (ca, cb) = (a.cum_prob(), b.cum_prob());
    let (mut i, mut j) = (0usize, 0usize);
    let (mut fa, mut fb) = (0.0f64, 0.0f64);
    let mut sup = 0.0f64;
    while i < sa.len() || j < sb.len() {
        let next_a = sa.get(i).copied().unwrap_or(f64::INFINITY);
        let next_b = sb.get(j).copied().unwrap_or(f64::INFINITY);
        if next_a <= next_b {
            fa = ca[i];
            i += 1;
        }
        if next_b <= next_a {
            fb = cb[j];
            j += 1;
        }
        sup = sup.max((fa - fb).abs());
    }
    sup
}
