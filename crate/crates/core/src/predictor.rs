//! Two-gap prediction from the continued-fraction expansion alone.
//!
//! With `q_{n,i} = i·q_{n−1} + q_{n−2}` (so `q_{n,0} = q_{n−2}` and
//! `q_{n,a_n} = q_n`), every `N ≥ 1` falls in exactly one interval:
//!
//! | interval                         | `(u_2, u_N)`, n odd        | n even                     |
//! |----------------------------------|----------------------------|----------------------------|
//! | `N ≤ q_1`                        | `(1, N − 1)`               | same                       |
//! | `q_{n−1} < N ≤ q_{n,1}`, n ≥ 2    | `(q_{n−1}, q_{n−2})`       | `(q_{n−2}, q_{n−1})`       |
//! | `q_{n,i−1} < N ≤ q_{n,i}`, i ≥ 2  | `(q_{n−1}, q_{n,i−1})`     | `(q_{n,i−1}, q_{n−1})`     |
//!
//! N has two distinct gaps exactly when `N ≥ 2` and `N = u_2 + u_N`, which
//! picks out `2..=q_1` and every semiconvergent denominator `q_{n,i}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cf::{CfError, CfExpansion};

/// Which interval of the partition of `N` values an `N` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// `q_{n,i−1} < N ≤ q_{n,i}` with `2 ≤ i ≤ a_n`.
    SemiconvergentInterval,
    /// `q_{n−1} < N ≤ q_{n,1}`.
    FirstInterval,
    /// `N ≤ q_1`: the points are still in increasing order.
    FirstLap,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::SemiconvergentInterval => "semiconvergent_interval",
            Scenario::FirstInterval => "first_interval",
            Scenario::FirstLap => "first_lap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoGapPrediction {
    pub n_points: u64,
    pub scenario: Scenario,
    /// The CF index `n` of the interval (1 for the first lap).
    pub index: usize,
    /// `i` for the two interval scenarios.
    pub sub_index: Option<u64>,
    /// `None` only for `N = 1`.
    pub u2: Option<u64>,
    pub u_last: u64,
    pub is_two_gap: bool,
}

struct Location {
    scenario: Scenario,
    index: usize,
    sub_index: Option<u64>,
    q_prev: u64,
    q_prev2: u64,
    q_left: u64,
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("value bounded by N")
}

/// Finds the interval containing `N`, reading digits until `q_n ≥ N`.
fn locate(cf: &CfExpansion, n_points: u64) -> Result<Location, CfError> {
    let target = BigInt::from(n_points);
    let q1 = cf.try_digit(1)?;
    if target <= *q1 {
        return Ok(Location {
            scenario: Scenario::FirstLap,
            index: 1,
            sub_index: None,
            q_prev: 1,
            q_prev2: 0,
            q_left: 0,
        });
    }
    let (mut q_prev2, mut q_prev) = (BigInt::one(), q1.clone());
    for n in 2.. {
        let digit = cf.try_digit(n)?;
        let q_n = digit * &q_prev + &q_prev2;
        if target <= q_n {
            // i = ⌈(N − q_{n−2}) / q_{n−1}⌉ ≥ 1 because N > q_{n−1} ≥ q_{n−2}
            let i = (&target - &q_prev2).div_ceil(&q_prev);
            let q_left = (&i - 1u32) * &q_prev + &q_prev2;
            let scenario = if i.is_one() {
                Scenario::FirstInterval
            } else {
                Scenario::SemiconvergentInterval
            };
            return Ok(Location {
                scenario,
                index: n,
                sub_index: Some(to_u64(&i)),
                q_prev: to_u64(&q_prev),
                q_prev2: to_u64(&q_prev2),
                q_left: to_u64(&q_left),
            });
        }
        q_prev2 = std::mem::replace(&mut q_prev, q_n);
    }
    unreachable!()
}

/// Predicted `u_2`, `u_N`, and two-gap status for N points.
pub fn predict(cf: &CfExpansion, n_points: u64) -> Result<TwoGapPrediction, CfError> {
    if n_points == 0 {
        return Err(CfError::InvalidInput("N must be positive".into()));
    }
    let loc = locate(cf, n_points)?;
    let odd = loc.index % 2 == 1;
    let (u2, u_last) = match loc.scenario {
        Scenario::FirstLap => ((n_points >= 2).then_some(1), n_points - 1),
        Scenario::FirstInterval if odd => (Some(loc.q_prev), loc.q_prev2),
        Scenario::FirstInterval => (Some(loc.q_prev2), loc.q_prev),
        Scenario::SemiconvergentInterval if odd => (Some(loc.q_prev), loc.q_left),
        Scenario::SemiconvergentInterval => (Some(loc.q_left), loc.q_prev),
    };
    let is_two_gap = u2.is_some_and(|u2| u2 + u_last == n_points);
    Ok(TwoGapPrediction {
        n_points,
        scenario: loc.scenario,
        index: loc.index,
        sub_index: loc.sub_index,
        u2,
        u_last,
        is_two_gap,
    })
}

/// All `2 ≤ N ≤ nmax` with exactly two distinct gaps:
/// `{2, …, q_1} ∪ {q_{n,i} : n ≥ 2, 1 ≤ i ≤ a_n}`.
pub fn two_gap_set(cf: &CfExpansion, nmax: u64) -> Result<Vec<u64>, CfError> {
    if nmax < 2 {
        return Ok(Vec::new());
    }
    let limit = BigInt::from(nmax);
    let q1 = cf.try_digit(1)?.clone();
    let first_block_end = if q1 < limit { to_u64(&q1) } else { nmax };
    let mut out: Vec<u64> = (2..=first_block_end).collect();
    let (mut q_prev2, mut q_prev) = (BigInt::one(), q1);
    for n in 2.. {
        if q_prev >= limit {
            break;
        }
        let digit = cf.try_digit(n)?;
        let mut i = BigInt::one();
        while i <= *digit {
            let q = &i * &q_prev + &q_prev2;
            if q > limit {
                return Ok(out);
            }
            out.push(to_u64(&q));
            i += 1u32;
        }
        let q_n = digit * &q_prev + &q_prev2;
        q_prev2 = std::mem::replace(&mut q_prev, q_n);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyRow {
    pub n_points: u64,
    /// `#{1 ≤ n ≤ N : n points give two distinct gaps}`.
    pub count: u64,
    pub ratio: BigRational,
    pub upper_bound: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTrace {
    pub rows: Vec<FrequencyRow>,
}

/// Two-gap counts at ascending checkpoints, counted by enumerating
/// [`two_gap_set`].
pub fn frequency_trace(cf: &CfExpansion, checkpoints: &[u64]) -> Result<FrequencyTrace, CfError> {
    if checkpoints.contains(&0) {
        return Err(CfError::InvalidInput("checkpoints must be positive".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(CfError::InvalidInput("checkpoints must be ascending".into()));
    }
    let Some(&top) = checkpoints.last() else {
        return Ok(FrequencyTrace { rows: Vec::new() });
    };
    let set = two_gap_set(cf, top)?;
    let rows = checkpoints
        .iter()
        .map(|&n| {
            let count = set.partition_point(|&v| v <= n) as u64;
            Ok(FrequencyRow {
                n_points: n,
                count,
                ratio: BigRational::new(count.into(), n.into()),
                upper_bound: frequency_upper_bound(cf, n)?,
            })
        })
        .collect::<Result<_, CfError>>()?;
    Ok(FrequencyTrace { rows })
}

/// Interval-wise counting bound on the two-gap frequency at N:
/// `(N − 1)/N` on the first lap, `(a_1 + … + a_{n−1})/N` on a first
/// interval, `(a_1 + … + a_n − 1)/N` on a semiconvergent interval.
pub fn frequency_upper_bound(cf: &CfExpansion, n_points: u64) -> Result<BigRational, CfError> {
    if n_points == 0 {
        return Err(CfError::InvalidInput("N must be positive".into()));
    }
    let loc = locate(cf, n_points)?;
    let numerator = match loc.scenario {
        Scenario::FirstLap => BigInt::from(n_points - 1),
        Scenario::FirstInterval => cf.digit_sum(loc.index - 1)?,
        Scenario::SemiconvergentInterval => cf.digit_sum(loc.index)? - 1,
    };
    debug_assert!(numerator >= BigInt::zero());
    Ok(BigRational::new(numerator, n_points.into()))
}
