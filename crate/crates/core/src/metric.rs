//! Seeded Monte Carlo statistics of continued-fraction digits of uniformly
//! random α.
//!
//! Each sample is a dyadic rational `m / 2^bits` with `m` uniform. Only the
//! digits whose convergent denominators stay below `2^{bits/2}` are kept;
//! those agree with the digits of the underlying uniform real. A sample
//! whose guarded prefix is shorter than `max_index` is redrawn. Sample `i`
//! draws from its own ChaCha stream, so results do not depend on how the
//! work is scheduled.

use std::f64::consts::{LN_2, PI};
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cf::{cf_from_rational, CfError, CfExpansion};
use crate::predictor::two_gap_set;
use crate::quadratic::digit_sum_over_q;

/// `π² / (12 ln 2)`, the almost-everywhere limit of `ln(q_n)/n`.
pub const LEVY_CONSTANT: f64 = PI * PI / (12.0 * LN_2);

const MAX_REDRAWS_PER_SAMPLE: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("insufficient precision: {bits} bits cannot certify {max_index} digits")]
    InsufficientPrecision { bits: u32, max_index: usize },
    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleSpec {
    pub seed: u64,
    pub count: usize,
    /// Random bits per sample.
    pub precision_bits: u32,
    /// Number of certified digits every retained sample must carry.
    pub max_index: usize,
}

/// Retained samples plus the number of rejected draws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    pub samples: Vec<CfExpansion>,
    pub redraws: usize,
}

pub fn sample_alpha(spec: &SampleSpec) -> Result<SampleSet, SampleError> {
    if spec.count == 0 || spec.precision_bits < 2 {
        return Err(SampleError::InvalidSpec(format!("{spec:?}")));
    }
    let guard = BigInt::one() << (spec.precision_bits / 2);
    // the smallest possible q_n is the Fibonacci number F_{n+1}
    let (mut fa, mut fb) = (BigInt::one(), BigInt::one());
    for _ in 1..spec.max_index {
        let next = &fa + &fb;
        fa = std::mem::replace(&mut fb, next);
    }
    if fb >= guard {
        return Err(SampleError::InsufficientPrecision {
            bits: spec.precision_bits,
            max_index: spec.max_index,
        });
    }
    let drawn: Vec<_> = (0..spec.count)
        .into_par_iter()
        .map(|i| draw_sample(spec, i as u64, &guard))
        .collect::<Result<_, _>>()?;
    let redraws = drawn.iter().map(|(_, r)| r).sum();
    Ok(SampleSet {
        samples: drawn.into_iter().map(|(cf, _)| cf).collect(),
        redraws,
    })
}

fn draw_sample(spec: &SampleSpec, stream: u64, guard: &BigInt) -> Result<(CfExpansion, usize), SampleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(stream);
    let bits = spec.precision_bits;
    let denominator = BigInt::one() << bits;
    let words = bits.div_ceil(32) as usize;
    for redraw in 0..MAX_REDRAWS_PER_SAMPLE {
        let raw: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
        let numerator = BigInt::from(BigUint::from_slice(&raw) & ((BigUint::one() << bits) - 1u32));
        if numerator.is_zero() {
            continue;
        }
        let full = cf_from_rational(&numerator, &denominator).expect("0 < m < 2^bits");
        // never keep the final digit: it belongs to the dyadic, not the real
        let certified = full
            .convergents_iter()
            .skip(1)
            .take(full.head().len().saturating_sub(1))
            .take_while(|c| c.q < *guard)
            .count();
        if certified >= spec.max_index {
            let digits = full.head()[..certified].to_vec();
            let cf = CfExpansion::prefix(digits).expect("digits are positive");
            return Ok((cf, redraw));
        }
    }
    Err(SampleError::InsufficientPrecision {
        bits,
        max_index: spec.max_index,
    })
}

/// Per-sample values of one statistic with their summary.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub statistic: String,
    pub values: Vec<f64>,
    /// `None` when no sample contributed.
    pub mean: Option<f64>,
    pub std_dev: Option<f64>,
    pub reference: Option<f64>,
    pub tolerance: Option<f64>,
    /// Samples without enough digits for this statistic.
    pub skipped: usize,
}

impl MetricReport {
    fn from_values(statistic: impl Into<String>, values: Vec<f64>, skipped: usize) -> Self {
        let (mean, std_dev) = summarize(&values);
        MetricReport {
            statistic: statistic.into(),
            values,
            mean,
            std_dev,
            reference: None,
            tolerance: None,
            skipped,
        }
    }

    /// `|mean − reference| ≤ tolerance`, when both are set.
    pub fn within_tolerance(&self) -> Option<bool> {
        Some((self.mean? - self.reference?).abs() <= self.tolerance?)
    }
}

fn summarize(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (Some(mean), Some(var.sqrt()))
}

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    let shift = x.bits().saturating_sub(64);
    let top = (x >> shift).to_f64().expect("fits in f64");
    top.ln() + shift as f64 * LN_2
}

/// `ln(q_n) / n` with `q_n` exact.
pub fn levy_statistic(cf: &CfExpansion, n: usize) -> Result<f64, CfError> {
    if n == 0 {
        return Err(CfError::IndexTooSmall { index: 0, min: 1 });
    }
    cf.try_digit(n)?;
    let q = cf.convergents_iter().nth(n).expect("digit n exists").q;
    Ok(ln_big(&q) / n as f64)
}

/// `ln(q_n)/n` over all samples, compared with the Lévy constant at a
/// relative tolerance of 10%.
pub fn levy_report(samples: &[CfExpansion], n: usize) -> MetricReport {
    let results: Vec<_> = samples.par_iter().map(|cf| levy_statistic(cf, n).ok()).collect();
    let skipped = results.iter().filter(|r| r.is_none()).count();
    let mut report = MetricReport::from_values(format!("ln_qn_over_n@{n}"), results.into_iter().flatten().collect(), skipped);
    report.reference = Some(LEVY_CONSTANT);
    report.tolerance = Some(0.1 * LEVY_CONSTANT);
    report
}

/// Fraction of samples with some `a_n ≥ n²` for `n` in `range`.
pub fn bb_census(samples: &[CfExpansion], range: RangeInclusive<usize>) -> MetricReport {
    let hits: Vec<Option<bool>> = samples
        .par_iter()
        .map(|cf| {
            let mut hit = false;
            for n in range.clone() {
                let digit = cf.digit(n)?;
                hit |= *digit >= BigInt::from(n * n);
            }
            Some(hit)
        })
        .collect();
    let skipped = hits.iter().filter(|h| h.is_none()).count();
    let values = hits.into_iter().flatten().map(|h| if h { 1.0 } else { 0.0 }).collect();
    MetricReport::from_values(format!("digit_ge_n_squared@{}..={}", range.start(), range.end()), values, skipped)
}

/// Empirical `P(a_1 = k)` against `1/(k(k+1))`, with a 3σ binomial band.
pub fn first_digit_census(samples: &[CfExpansion], k: u64) -> MetricReport {
    let target = BigInt::from(k);
    let (values, skipped) = samples.iter().fold((Vec::new(), 0), |(mut v, s), cf| match cf.digit(1) {
        Some(a) => {
            v.push(if *a == target { 1.0 } else { 0.0 });
            (v, s)
        }
        None => (v, s + 1),
    });
    let p = 1.0 / (k * (k + 1)) as f64;
    let sigma = (p * (1.0 - p) / values.len().max(1) as f64).sqrt();
    let mut report = MetricReport::from_values(format!("first_digit_eq_{k}"), values, skipped);
    report.reference = Some(p);
    report.tolerance = Some(3.0 * sigma);
    report
}

/// `(a_1 + … + a_n)/q_{n−1}` per sample; the mean is summed exactly.
pub fn digit_sum_report(samples: &[CfExpansion], n: usize) -> MetricReport {
    let ratios: Vec<Option<BigRational>> = samples.par_iter().map(|cf| digit_sum_over_q(cf, n).ok()).collect();
    let kept: Vec<BigRational> = ratios.into_iter().flatten().collect();
    let skipped = samples.len() - kept.len();
    let values: Vec<f64> = kept.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
    let mut report = MetricReport::from_values(format!("digit_sum_over_q@{n}"), values, skipped);
    if !kept.is_empty() {
        let total: BigRational = kept.iter().sum();
        let exact_mean = total / BigRational::from_integer(kept.len().into());
        report.mean = exact_mean.to_f64();
    }
    report
}

/// Two-gap frequency `count/N` per sample at a fixed N.
pub fn two_gap_frequency_report(samples: &[CfExpansion], n_points: u64) -> MetricReport {
    let counts: Vec<Option<usize>> = samples
        .par_iter()
        .map(|cf| two_gap_set(cf, n_points).ok().map(|s| s.len()))
        .collect();
    let skipped = counts.iter().filter(|c| c.is_none()).count();
    let values = counts.into_iter().flatten().map(|c| c as f64 / n_points as f64).collect();
    MetricReport::from_values(format!("two_gap_ratio@{n_points}"), values, skipped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::AlphaSource;

    fn spec(seed: u64, count: usize) -> SampleSpec {
        SampleSpec {
            seed,
            count,
            precision_bits: 256,
            max_index: 25,
        }
    }

    #[test]
    fn reference_constant() {
        assert!((LEVY_CONSTANT - 1.18657).abs() < 1e-5);
    }

    #[test]
    fn deterministic_sampling() {
        let a = sample_alpha(&spec(7, 50)).unwrap();
        let b = sample_alpha(&spec(7, 50)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_alpha(&spec(8, 50)).unwrap());
        assert!(a.samples.iter().all(|cf| cf.available().unwrap() >= 25));
    }

    #[test]
    fn guard_holds_on_every_sample() {
        let set = sample_alpha(&spec(3, 40)).unwrap();
        let guard = BigInt::one() << 128;
        for cf in &set.samples {
            let last = cf.convergents_iter().last().unwrap();
            assert!(last.q < guard);
        }
    }

    #[test]
    fn unreachable_guard() {
        let bad = SampleSpec {
            seed: 1,
            count: 1,
            precision_bits: 16,
            max_index: 25,
        };
        assert!(matches!(sample_alpha(&bad), Err(SampleError::InsufficientPrecision { .. })));
    }

    #[test]
    fn levy_examples() {
        let golden = AlphaSource::golden().expansion().unwrap();
        let v = levy_statistic(&golden, 25).unwrap();
        assert!((v - (121393f64).ln() / 25.0).abs() < 1e-12);
        assert!((v - 0.4682).abs() < 1e-4);
        let cf = CfExpansion::finite(vec![7.into(), 3.into()]).unwrap();
        assert!((levy_statistic(&cf, 1).unwrap() - 7f64.ln()).abs() < 1e-12);
        assert!(levy_statistic(&cf, 3).is_err());
    }

    #[test]
    fn ln_big_matches_f64_for_small() {
        for x in [1u64, 2, 12345, u64::MAX] {
            assert!((ln_big(&BigInt::from(x)) - (x as f64).ln()).abs() < 1e-9);
        }
        let huge = BigInt::one() << 4000;
        assert!((ln_big(&huge) - 4000.0 * LN_2).abs() < 1e-6);
    }

    #[test]
    fn census_examples() {
        let golden = AlphaSource::golden().expansion().unwrap();
        let r = bb_census(&[golden.clone(), golden], 2..=20);
        assert_eq!(r.mean, Some(0.0));
        let empty = bb_census(&[], 2..=2);
        assert_eq!((empty.mean, empty.values.len()), (None, 0));
        let short = CfExpansion::prefix(vec![1.into()]).unwrap();
        assert_eq!(bb_census(&[short], 2..=3).skipped, 1);
    }

    #[test]
    fn digit_sum_examples() {
        let golden = AlphaSource::golden().expansion().unwrap();
        let r = digit_sum_report(&[golden], 10);
        assert!((r.mean.unwrap() - 10.0 / 55.0).abs() < 1e-15);
        let cf = CfExpansion::prefix(vec![5.into(), 1.into()]).unwrap();
        assert_eq!(digit_sum_report(&[cf], 1).mean, Some(5.0));
    }

    #[test]
    fn two_gap_frequency_on_golden() {
        let golden = AlphaSource::golden().expansion().unwrap();
        let r = two_gap_frequency_report(&[golden], 100);
        assert_eq!(r.mean, Some(0.09));
    }
}
