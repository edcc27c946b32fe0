//! Brute-force gap structure of `{⟨kα⟩ : 0 ≤ k < N} ∪ {1}`.
//!
//! α is replaced by its first convergent `p_m/q_m` with `q_m > 4N`. For
//! `0 < |c| ≤ 2N` every nonzero `|cᾱ − t|` is at least `1/q_m`, while
//! `|α − ᾱ| < 1/(q_m q_{m+1})` moves it by less than `1/(2 q_m)`, so the
//! ordering of the points and the equality pattern of the gaps are the same
//! for α and ᾱ. All comparisons happen on integer residues `k·p_m mod q_m`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};
use thiserror::Error;

use crate::cf::{CfError, CfExpansion, Convergent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("at least one point is required")]
    NoPoints,
    #[error("degenerate rational: N = {n_points} points with denominator {denominator} collide")]
    DegenerateRational { n_points: u64, denominator: BigInt },
    #[error(transparent)]
    Cf(#[from] CfError),
}

/// The rational stand-in used for α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surrogate {
    pub convergent: Convergent,
    /// The expansion ran out, so this is α itself.
    pub exact: bool,
}

/// Minimal-index convergent with `q_m > 4N`, or the exact value of a finite
/// expansion that never gets there.
pub fn surrogate_convergent(cf: &CfExpansion, n_points: u64) -> Result<Surrogate, OracleError> {
    surrogate_with_offset(cf, n_points, 0)
}

/// Like [`surrogate_convergent`] but `offset` indices further along,
/// clamped to the last convergent of a finite expansion.
pub fn surrogate_with_offset(cf: &CfExpansion, n_points: u64, offset: usize) -> Result<Surrogate, OracleError> {
    if n_points == 0 {
        return Err(OracleError::NoPoints);
    }
    let bound = BigInt::from(n_points) * 4;
    let full_len = cf.available().filter(|_| cf.is_finite());
    let mut first_fit = None;
    let mut last = None;
    for c in cf.convergents_iter() {
        let idx = c.index as usize;
        if first_fit.is_none() && c.q > bound {
            first_fit = Some(idx);
        }
        if first_fit.is_some_and(|f| idx == f + offset) {
            return Ok(Surrogate {
                convergent: c,
                exact: full_len == Some(idx),
            });
        }
        last = Some(c);
    }
    if !cf.is_finite() {
        return Err(CfError::Exhausted {
            requested: cf.head().len() + 1,
            available: cf.head().len(),
        }
        .into());
    }
    let convergent = last.expect("index 0 always exists");
    if BigInt::from(n_points) >= convergent.q {
        return Err(OracleError::DegenerateRational {
            n_points,
            denominator: convergent.q,
        });
    }
    Ok(Surrogate {
        convergent,
        exact: true,
    })
}

/// One distinct gap length and how often it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapClass {
    pub length: BigRational,
    pub multiplicity: u64,
}

/// Distinct gaps of the partition of `[0, 1]`, sorted by length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub n_points: u64,
    pub surrogate: Surrogate,
    pub gaps: Vec<GapClass>,
}

impl GapReport {
    pub fn distinct_count(&self) -> usize {
        self.gaps.len()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.gaps.iter().map(|g| g.multiplicity).collect()
    }

    /// `Σ length × multiplicity`; exactly 1.
    pub fn total_length(&self) -> BigRational {
        self.gaps
            .iter()
            .map(|g| &g.length * BigRational::from_integer(g.multiplicity.into()))
            .sum()
    }

    /// `Σ multiplicity`; exactly N.
    pub fn total_multiplicity(&self) -> u64 {
        self.gaps.iter().map(|g| g.multiplicity).sum()
    }

    pub fn is_two_gap(&self) -> bool {
        self.distinct_count() == 2
    }
}

/// Indices `u_1, …, u_N` in increasing order of `⟨u_j α⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPermutation {
    pub u: Vec<u64>,
}

impl UPermutation {
    pub fn n_points(&self) -> u64 {
        self.u.len() as u64
    }

    /// Index of the first point to the right of 0; absent when N = 1.
    pub fn u2(&self) -> Option<u64> {
        self.u.get(1).copied()
    }

    /// Index of the point closest to 1.
    pub fn u_last(&self) -> u64 {
        *self.u.last().expect("N ≥ 1")
    }

    /// When `N = u_2 + u_N`, checks `u_j = (j − 1)·u_2 mod N` for every j.
    /// Returns `None` if the premise does not hold.
    pub fn rotation_rule(&self) -> Option<bool> {
        let n = self.n_points();
        let u2 = self.u2()?;
        if u2 + self.u_last() != n {
            return None;
        }
        Some(
            self.u
                .iter()
                .enumerate()
                .all(|(j, &u)| u == (j as u64 * u2) % n),
        )
    }
}

/// Gap report and ordering from a single sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapAnalysis {
    pub report: GapReport,
    pub permutation: UPermutation,
}

pub fn gap_report(cf: &CfExpansion, n_points: u64) -> Result<GapReport, OracleError> {
    Ok(analyze(cf, n_points)?.report)
}

pub fn u_permutation(cf: &CfExpansion, n_points: u64) -> Result<UPermutation, OracleError> {
    Ok(analyze(cf, n_points)?.permutation)
}

pub fn analyze(cf: &CfExpansion, n_points: u64) -> Result<GapAnalysis, OracleError> {
    let surrogate = surrogate_convergent(cf, n_points)?;
    Ok(analyze_with(surrogate, n_points))
}

/// Evaluates the partition on an explicitly chosen surrogate.
pub fn analyze_with(surrogate: Surrogate, n_points: u64) -> GapAnalysis {
    let (p, q) = (&surrogate.convergent.p, &surrogate.convergent.q);
    let (gaps, u) = match (p.to_u64(), q.to_u64()) {
        (Some(p), Some(q)) => {
            let (gaps, u) = sweep(u128::from(p), u128::from(q), n_points);
            let lift = gaps.into_iter().map(|(g, m)| (BigInt::from(g), m)).collect();
            (lift, u)
        }
        _ => sweep(p.clone(), q.clone(), n_points),
    };
    let gaps = gaps
        .into_iter()
        .map(|(g, multiplicity)| GapClass {
            length: BigRational::new(g, q.clone()),
            multiplicity,
        })
        .collect();
    GapAnalysis {
        report: GapReport {
            n_points,
            surrogate,
            gaps,
        },
        permutation: UPermutation { u },
    }
}

/// Sorted residues `k·p mod q`, their successive differences aggregated by
/// value, and the sorting permutation.
fn sweep<T>(p: T, q: T, n_points: u64) -> (Vec<(T, u64)>, Vec<u64>)
where
    T: Num + Ord + Clone,
{
    let mut points = Vec::with_capacity(n_points as usize);
    let mut r = T::zero();
    for k in 0..n_points {
        points.push((r.clone(), k));
        r = r + p.clone();
        if r >= q {
            r = r - q.clone();
        }
    }
    points.sort_unstable();
    let mut gaps: BTreeMap<T, u64> = BTreeMap::new();
    for w in points.windows(2) {
        *gaps.entry(w[1].0.clone() - w[0].0.clone()).or_default() += 1;
    }
    let top = q - points.last().expect("N ≥ 1").0.clone();
    *gaps.entry(top).or_default() += 1;
    debug_assert!(!gaps.contains_key(&T::zero()));
    (gaps.into_iter().collect(), points.into_iter().map(|(_, k)| k).collect())
}
