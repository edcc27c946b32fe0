//! Simple continued fractions `[0; a_1, a_2, …]` of numbers in `[0, 1)`.
//!
//! Convergents follow the seeds `p_{-2} = 0, q_{-2} = 1, p_{-1} = 1,
//! q_{-1} = 0` and the recurrence `p_n = a_n p_{n-1} + p_{n-2}` (same for
//! `q`). Since `a_0 = 0`, `p_0/q_0 = 0/1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::{digit_matrix, digit_product, ConvergentMatrix, Mat2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("value {0} is outside [0, 1)")]
    OutOfRange(String),
    #[error("exhausted expansion: digit a_{requested} requested but only {available} digits exist")]
    Exhausted { requested: usize, available: usize },
    #[error("sub-index i = {i} outside [1, a_{n}] with a_{n} = {digit}")]
    SubIndexOutOfRange { n: usize, i: BigInt, digit: BigInt },
    #[error("index {index} below the minimum {min}")]
    IndexTooSmall { index: isize, min: isize },
}

/// How the digit list continues past the stored head.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    /// The head is the complete expansion of a rational number.
    Finite,
    /// After the head (the preperiod) the given block repeats forever.
    Periodic(Vec<BigInt>),
    /// The head is a verified prefix of an unknown irrational; later digits
    /// are not available.
    Prefix,
}

/// Partial quotients of a number in `[0, 1)`; `a_0` is always 0.
///
/// Finite expansions are canonical (last digit ≥ 2 unless the expansion is
/// empty). Periodic expansions have the shortest period and the shortest
/// preperiod.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    head: Vec<BigInt>,
    tail: Tail,
}

fn check_digits(digits: &[BigInt]) -> Result<(), CfError> {
    match digits.iter().position(|a| !a.is_positive()) {
        Some(pos) => Err(CfError::InvalidInput(format!(
            "digit a_{} = {} is not positive",
            pos + 1,
            digits[pos]
        ))),
        None => Ok(()),
    }
}

impl CfExpansion {
    /// Finite expansion from raw digits, canonicalizing a trailing 1.
    pub fn finite(mut digits: Vec<BigInt>) -> Result<Self, CfError> {
        check_digits(&digits)?;
        if digits.len() == 1 && digits[0].is_one() {
            return Err(CfError::OutOfRange("[0; 1] = 1".into()));
        }
        if digits.len() >= 2 && digits.last().is_some_and(One::is_one) {
            digits.pop();
            *digits.last_mut().unwrap() += 1;
        }
        Ok(CfExpansion {
            head: digits,
            tail: Tail::Finite,
        })
    }

    /// Eventually periodic expansion `[0; pre…, period, period, …]`.
    pub fn periodic(mut preperiod: Vec<BigInt>, mut period: Vec<BigInt>) -> Result<Self, CfError> {
        check_digits(&preperiod)?;
        check_digits(&period)?;
        if period.is_empty() {
            return Err(CfError::InvalidInput("empty period".into()));
        }
        let k = period.len();
        if let Some(d) = (1..k).find(|&d| k.is_multiple_of(d) && (d..k).all(|i| period[i] == period[i - d])) {
            period.truncate(d);
        }
        while preperiod.last().is_some() && preperiod.last() == period.last() {
            preperiod.pop();
            period.rotate_right(1);
        }
        Ok(CfExpansion {
            head: preperiod,
            tail: Tail::Periodic(period),
        })
    }

    /// Known leading digits of an irrational whose remaining digits are unknown.
    pub fn prefix(digits: Vec<BigInt>) -> Result<Self, CfError> {
        check_digits(&digits)?;
        Ok(CfExpansion {
            head: digits,
            tail: Tail::Prefix,
        })
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.tail, Tail::Periodic(_))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.tail, Tail::Finite)
    }

    /// Stored digits: all of them for finite/prefix, the preperiod otherwise.
    pub fn head(&self) -> &[BigInt] {
        &self.head
    }

    /// `r`, the number of digits before the period (0 for non-periodic).
    pub fn preperiod_len(&self) -> usize {
        match self.tail {
            Tail::Periodic(_) => self.head.len(),
            _ => 0,
        }
    }

    pub fn period(&self) -> Option<&[BigInt]> {
        match &self.tail {
            Tail::Periodic(p) => Some(p),
            _ => None,
        }
    }

    /// Number of available digits, `None` when unbounded.
    pub fn available(&self) -> Option<usize> {
        match self.tail {
            Tail::Periodic(_) => None,
            _ => Some(self.head.len()),
        }
    }

    /// Digit `a_m` for `m ≥ 1`; `a_0 = 0` is implicit.
    pub fn digit(&self, m: usize) -> Option<&BigInt> {
        if m == 0 {
            return None;
        }
        if m <= self.head.len() {
            return Some(&self.head[m - 1]);
        }
        match &self.tail {
            Tail::Periodic(p) => Some(&p[(m - self.head.len() - 1) % p.len()]),
            _ => None,
        }
    }

    pub fn try_digit(&self, m: usize) -> Result<&BigInt, CfError> {
        self.digit(m).ok_or(CfError::Exhausted {
            requested: m,
            available: self.head.len(),
        })
    }

    /// `a_{from}, …, a_{to}` inclusive.
    pub fn digits(&self, from: usize, to: usize) -> Result<Vec<BigInt>, CfError> {
        (from..=to).map(|m| self.try_digit(m).cloned()).collect()
    }

    /// `a_1 + … + a_n`.
    pub fn digit_sum(&self, n: usize) -> Result<BigInt, CfError> {
        (1..=n).try_fold(BigInt::zero(), |acc, m| Ok(acc + self.try_digit(m)?))
    }

    /// Exact value of a finite expansion.
    pub fn value(&self) -> Option<BigRational> {
        if !self.is_finite() {
            return None;
        }
        let last = self.convergents_iter().last()?;
        Some(BigRational::new(last.p, last.q))
    }

    /// Lazily generated convergents `p_0/q_0, p_1/q_1, …`.
    pub fn convergents_iter(&self) -> ConvergentIter<'_> {
        ConvergentIter {
            cf: self,
            next_index: 0,
            prev: (BigInt::one(), BigInt::zero()),
            prev2: (BigInt::zero(), BigInt::one()),
        }
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[BigInt]| ds.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[0")?;
        let mut sep = ";";
        if !self.head.is_empty() {
            write!(f, ";{}", join(&self.head))?;
            sep = ",";
        }
        match &self.tail {
            Tail::Finite => {}
            Tail::Periodic(p) => write!(f, "{sep}period({})", join(p))?,
            Tail::Prefix => write!(f, "{sep}...")?,
        }
        write!(f, "]")
    }
}

/// A convergent `p_n/q_n`, or a semiconvergent `p_{n,i}/q_{n,i}` when
/// `sub_index` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Convergent {
    pub index: isize,
    pub p: BigInt,
    pub q: BigInt,
    pub sub_index: Option<BigInt>,
}

impl Convergent {
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

pub struct ConvergentIter<'a> {
    cf: &'a CfExpansion,
    next_index: usize,
    prev: (BigInt, BigInt),
    prev2: (BigInt, BigInt),
}

impl Iterator for ConvergentIter<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let n = self.next_index;
        let a = if n == 0 {
            BigInt::zero()
        } else {
            self.cf.digit(n)?.clone()
        };
        let p = &a * &self.prev.0 + &self.prev2.0;
        let q = &a * &self.prev.1 + &self.prev2.1;
        self.prev2 = std::mem::replace(&mut self.prev, (p.clone(), q.clone()));
        self.next_index += 1;
        Some(Convergent {
            index: n as isize,
            p,
            q,
            sub_index: None,
        })
    }
}

/// Euclidean-algorithm expansion of `numerator/denominator ∈ [0, 1)`.
pub fn cf_from_rational(numerator: &BigInt, denominator: &BigInt) -> Result<CfExpansion, CfError> {
    if denominator.is_zero() {
        return Err(CfError::InvalidInput("zero denominator".into()));
    }
    if denominator.is_negative() || numerator.is_negative() || numerator >= denominator {
        return Err(CfError::OutOfRange(format!("{numerator}/{denominator}")));
    }
    let mut digits = Vec::new();
    let (mut num, mut den) = (denominator.clone(), numerator.clone());
    while !den.is_zero() {
        let (a, rem) = num.div_rem(&den);
        digits.push(a);
        num = std::mem::replace(&mut den, rem);
    }
    CfExpansion::finite(digits)
}

/// Convergents `p_j/q_j` for `j = 0..=up_to`.
pub fn convergents(cf: &CfExpansion, up_to: usize) -> Result<Vec<Convergent>, CfError> {
    let out: Vec<_> = cf.convergents_iter().take(up_to + 1).collect();
    if out.len() <= up_to {
        return Err(CfError::Exhausted {
            requested: up_to,
            available: out.len() - 1,
        });
    }
    Ok(out)
}

/// The seeded pair `(p_n, q_n)` for `n ≥ -2`.
pub fn convergent_at(cf: &CfExpansion, n: isize) -> Result<Convergent, CfError> {
    let seed = |p: i32, q: i32| Convergent {
        index: n,
        p: p.into(),
        q: q.into(),
        sub_index: None,
    };
    match n {
        ..=-3 => Err(CfError::IndexTooSmall { index: n, min: -2 }),
        -2 => Ok(seed(0, 1)),
        -1 => Ok(seed(1, 0)),
        _ => Ok(convergents(cf, n as usize)?.pop().unwrap()),
    }
}

/// `p_{n,i}/q_{n,i} = (i p_{n-1} + p_{n-2}) / (i q_{n-1} + q_{n-2})` for
/// `n ≥ 2`, `1 ≤ i ≤ a_n`.
pub fn semiconvergent(cf: &CfExpansion, n: usize, i: &BigInt) -> Result<Convergent, CfError> {
    if n < 2 {
        return Err(CfError::IndexTooSmall {
            index: n as isize,
            min: 2,
        });
    }
    let digit = cf.try_digit(n)?;
    if !i.is_positive() || i > digit {
        return Err(CfError::SubIndexOutOfRange {
            n,
            i: i.clone(),
            digit: digit.clone(),
        });
    }
    let cs = convergents(cf, n - 1)?;
    let (c1, c2) = (&cs[n - 1], &cs[n - 2]);
    Ok(Convergent {
        index: n as isize,
        p: i * &c1.p + &c2.p,
        q: i * &c1.q + &c2.q,
        sub_index: Some(i.clone()),
    })
}

/// Product `[[a_0,1],[1,0]] ⋯ [[a_{n+1},1],[1,0]] = [[p_{n+1}, p_n], [q_{n+1}, q_n]]`
/// for `n ≥ -2`; `n = -2` is the empty product.
pub fn matrix_form(cf: &CfExpansion, n: isize) -> Result<ConvergentMatrix, CfError> {
    if n < -2 {
        return Err(CfError::IndexTooSmall { index: n, min: -2 });
    }
    if n == -2 {
        return Ok(Mat2::identity());
    }
    let last = (n + 1) as usize;
    let digits = cf.digits(1, last)?;
    Ok(&digit_matrix(&BigInt::zero()) * &digit_product(&digits))
}
