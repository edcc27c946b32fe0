//! Quadratic irrationals `(P + √D)/Q`, their periodic expansions, and the
//! eigenvalue closed form for convergent denominators of periodic
//! continued fractions.
//!
//! For `α = [0; b_1, …, b_r, period(a_1, …, a_k)]` and `n − r = jk + l`,
//!
//! ```text
//! [[p_n, p_{n-1}], [q_n, q_{n-1}]] = [[0,1],[1,0]] · [[A,B],[K,F]] · T^j · [[e,f],[g,h]]
//! ```
//!
//! where the three factors are the digit-matrix products of the preperiod,
//! the full period and the first `l` period digits. With `T = [[a,b],[c,d]]`,
//! `Δ = (d−a)² + 4bc` and eigenvalues `λ₁,₂ = ((a+d) ± √Δ)/2`,
//!
//! ```text
//! q_{n-1} = (G(λ₁^{j−1} − λ₂^{j−1}) + M(λ₁^j − λ₂^j)) / √Δ
//! G = (fA + hB)(bc − ad),   M = fAa + hBd + cfB + hAb.
//! ```
//!
//! Everything here is evaluated exactly in `ℚ(√Δ)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cf::{CfError, CfExpansion};
use crate::field::QuadElem;
use crate::matrix::{digit_matrix, digit_product, ConvergentMatrix, Mat2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurdError {
    #[error("not irrational: D = {0} is a perfect square")]
    NotIrrational(BigInt),
    #[error("radicand D = {0} must be positive")]
    NonPositiveRadicand(BigInt),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("value {0} is outside (0, 1)")]
    OutOfRange(String),
    #[error("requires a periodic expansion")]
    RequiresPeriodic,
    #[error("residual index: n = {n} is below the preperiod length r = {r}")]
    IndexBelowPreperiod { n: usize, r: usize },
    #[error("malformed period matrix {0}")]
    MalformedPeriodMatrix(String),
    #[error("closed form did not reduce to an integer: {0}")]
    NonIntegral(String),
    #[error(transparent)]
    Cf(#[from] CfError),
}

/// `(P + √D) / Q`, canonical in the sense that `Q | D − P²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    d: BigInt,
    q: BigInt,
}

fn is_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

impl QuadraticSurd {
    /// Builds the canonical form, rescaling by `|Q|` when `Q ∤ D − P²`.
    pub fn new(p: BigInt, d: BigInt, q: BigInt) -> Result<Self, SurdError> {
        if q.is_zero() {
            return Err(SurdError::ZeroDenominator);
        }
        if !d.is_positive() {
            return Err(SurdError::NonPositiveRadicand(d));
        }
        if is_square(&d) {
            return Err(SurdError::NotIrrational(d));
        }
        if (&d - &p * &p).is_multiple_of(&q) {
            return Ok(QuadraticSurd { p, d, q });
        }
        let s = q.abs();
        Ok(QuadraticSurd {
            p: &p * &s,
            d: &d * &s * &s,
            q: &q * &s,
        })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Re-applies the canonical rescaling; a no-op on canonical input.
    pub fn canonicalize(&self) -> Self {
        Self::new(self.p.clone(), self.d.clone(), self.q.clone()).expect("already validated")
    }

    /// `⌊(P + √D)/Q⌋`, exact.
    pub fn floor(&self) -> BigInt {
        floor_state(&self.p, &self.q, &self.d.sqrt())
    }

    /// The same number as an element of `ℚ(√D)`.
    pub fn to_field(&self) -> QuadElem {
        let inv_q = BigRational::new(BigInt::one(), self.q.clone());
        QuadElem::new(
            BigRational::from_integer(self.p.clone()) * &inv_q,
            inv_q,
            self.d.clone(),
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.to_field().to_f64()
    }

    /// Converts `x + y√Δ` (with `y ≠ 0`) into surd form.
    pub fn from_field(elem: &QuadElem) -> Result<Self, SurdError> {
        if elem.irrational.is_zero() {
            return Err(SurdError::NotIrrational(elem.radicand.clone()));
        }
        let (u, v) = (elem.rational.numer(), elem.rational.denom());
        let (s, t) = (elem.irrational.numer().abs(), elem.irrational.denom());
        let l = v.lcm(t);
        let scale = &l / t;
        let d = &s * &s * &elem.radicand * &scale * &scale;
        let p = u * (&l / v);
        if elem.irrational.is_negative() {
            Self::new(-p, d, -l)
        } else {
            Self::new(p, d, l)
        }
    }

    /// The quadratic irrational with the given eventually periodic expansion.
    pub fn from_periodic(cf: &CfExpansion) -> Result<Self, SurdError> {
        let period = cf.period().ok_or(SurdError::RequiresPeriodic)?;
        let t = digit_product(period);
        let delta = period_discriminant(&t);
        // purely periodic tail y = (ay + b)/(cy + d), the root above 1
        let two_c = BigRational::from_integer(&t.m21 * 2);
        let y = QuadElem::new(
            BigRational::from_integer(&t.m11 - &t.m22) / &two_c,
            BigRational::one() / &two_c,
            delta.clone(),
        );
        let head = &digit_matrix(&BigInt::zero()) * &digit_product(cf.head());
        let lift = |x: &BigInt| QuadElem::from_int(x.clone(), &delta);
        let num = &(&lift(&head.m11) * &y) + &lift(&head.m12);
        let den = &(&lift(&head.m21) * &y) + &lift(&head.m22);
        let inv = den
            .inverse()
            .ok_or_else(|| SurdError::MalformedPeriodMatrix(t.to_string()))?;
        Self::from_field(&(&num * &inv))
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+sqrt {})/{}", self.p, self.d, self.q)
    }
}

fn floor_state(p: &BigInt, q: &BigInt, isqrt_d: &BigInt) -> BigInt {
    let top = p + isqrt_d;
    if q.is_positive() {
        Integer::div_floor(&top, q)
    } else {
        let neg_q: BigInt = -q;
        -(Integer::div_floor(&top, &neg_q) + BigInt::one())
    }
}

/// Periodic expansion via the `(P, Q)` state iteration; the cycle is closed
/// at the first repeated state.
pub fn expand_surd(alpha: &QuadraticSurd) -> Result<CfExpansion, SurdError> {
    if !alpha.floor().is_zero() {
        return Err(SurdError::OutOfRange(alpha.to_string()));
    }
    let d = &alpha.d;
    let s = d.sqrt();
    let mut p = -alpha.p.clone();
    let mut q = (d - &p * &p) / &alpha.q;
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = digits.split_off(start);
            return Ok(CfExpansion::periodic(digits, period)?);
        }
        seen.insert((p.clone(), q.clone()), digits.len());
        let a = floor_state(&p, &q, &s);
        let next_p = &a * &q - &p;
        let next_q = (d - &next_p * &next_p) / &q;
        digits.push(a);
        p = next_p;
        q = next_q;
    }
}

/// `Δ = (d − a)² + 4bc` for `T = [[a, b], [c, d]]`.
pub fn period_discriminant(t: &ConvergentMatrix) -> BigInt {
    let diff = &t.m22 - &t.m11;
    &diff * &diff + BigInt::from(4) * &t.m12 * &t.m21
}

/// Factorization of `[[p_n, p_{n−1}], [q_n, q_{n−1}]]` along the period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodDecomposition {
    /// `[[A, B], [K, F]]`, product over the preperiod.
    pub preperiod: ConvergentMatrix,
    /// `T = [[a, b], [c, d]]`, product over one full period.
    pub period: ConvergentMatrix,
    /// `[[e, f], [g, h]]`, product over the first `l` period digits.
    pub partial: ConvergentMatrix,
    pub r: usize,
    pub k: usize,
    pub l: usize,
    pub j: usize,
}

impl PeriodDecomposition {
    /// `[[0,1],[1,0]] · pre · T^j · partial`.
    pub fn reconstruct(&self) -> ConvergentMatrix {
        let lead = digit_matrix(&BigInt::zero());
        let m = &(&lead * &self.preperiod) * &self.period.pow(self.j);
        &m * &self.partial
    }

    /// `G = (fA + hB)(bc − ad)`.
    pub fn g_coefficient(&self) -> BigInt {
        let (pre, t, part) = (&self.preperiod, &self.period, &self.partial);
        let (f, h) = (&part.m12, &part.m22);
        (f * &pre.m11 + h * &pre.m12) * -t.det()
    }

    /// `M = fAa + hBd + cfB + hAb`.
    pub fn m_coefficient(&self) -> BigInt {
        let (pre, t, part) = (&self.preperiod, &self.period, &self.partial);
        let (f, h) = (&part.m12, &part.m22);
        let (a_up, b_up) = (&pre.m11, &pre.m12);
        f * a_up * &t.m11 + h * b_up * &t.m22 + &t.m21 * f * b_up + h * a_up * &t.m12
    }
}

/// Splits `n − r = jk + l` with `0 ≤ l < k` and builds the three factors.
pub fn period_decomposition(cf: &CfExpansion, n: usize) -> Result<PeriodDecomposition, SurdError> {
    let period = cf.period().ok_or(SurdError::RequiresPeriodic)?;
    let r = cf.preperiod_len();
    if n < r {
        return Err(SurdError::IndexBelowPreperiod { n, r });
    }
    let k = period.len();
    let (j, l) = (n - r).div_rem(&k);
    Ok(PeriodDecomposition {
        preperiod: digit_product(cf.head()),
        period: digit_product(period),
        partial: digit_product(&period[..l]),
        r,
        k,
        l,
        j,
    })
}

/// Spectral split `T^j = λ₁^j P + λ₂^j Q` of a period matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSplit {
    pub radicand: BigInt,
    pub lambda1: QuadElem,
    pub lambda2: QuadElem,
    pub pmat: Mat2<QuadElem>,
    pub qmat: Mat2<QuadElem>,
}

impl EigenSplit {
    /// `λ₁^j P + λ₂^j Q`; valid for negative `j` as well since `det T = ±1`.
    pub fn power(&self, j: i64) -> Mat2<QuadElem> {
        let l1 = self.lambda1.pow(j).expect("eigenvalues are units");
        let l2 = self.lambda2.pow(j).expect("eigenvalues are units");
        &self.pmat.scale(&l1) + &self.qmat.scale(&l2)
    }

    pub fn identity(&self) -> Mat2<QuadElem> {
        Mat2::new(
            QuadElem::one(&self.radicand),
            QuadElem::zero(&self.radicand),
            QuadElem::zero(&self.radicand),
            QuadElem::one(&self.radicand),
        )
    }
}

/// Exact eigen decomposition of a period matrix with determinant ±1.
pub fn eigen_split(t: &ConvergentMatrix) -> Result<EigenSplit, SurdError> {
    let det = t.det();
    let delta = period_discriminant(t);
    if det.abs() != BigInt::one() || !delta.is_positive() {
        return Err(SurdError::MalformedPeriodMatrix(t.to_string()));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let trace = BigRational::from_integer(t.trace());
    let lambda1 = QuadElem::new(&trace * &half, half.clone(), delta.clone());
    let lambda2 = lambda1.conjugate();
    let lift = |x: &BigInt| QuadElem::from_int(x.clone(), &delta);
    let inv_sqrt = QuadElem::new(
        BigRational::zero(),
        BigRational::new(BigInt::one(), delta.clone()),
        delta.clone(),
    );
    let spectral = |lambda: &QuadElem, factor: &QuadElem| {
        Mat2::new(
            lambda - &lift(&t.m11),
            -lift(&t.m12),
            -lift(&t.m21),
            lambda - &lift(&t.m22),
        )
        .scale(factor)
    };
    let pmat = spectral(&lambda2, &-&inv_sqrt);
    let qmat = spectral(&lambda1, &inv_sqrt);
    Ok(EigenSplit {
        radicand: delta,
        lambda1,
        lambda2,
        pmat,
        qmat,
    })
}

/// `q_{n−1}` from the eigenvalue closed form, for `n ≥ r + 1`.
pub fn q_closed_form(cf: &CfExpansion, n: usize) -> Result<BigInt, SurdError> {
    let r = cf.preperiod_len();
    if !cf.is_periodic() {
        return Err(SurdError::RequiresPeriodic);
    }
    if n < r + 1 {
        return Err(SurdError::IndexBelowPreperiod { n, r });
    }
    let dec = period_decomposition(cf, n)?;
    let split = eigen_split(&dec.period)?;
    let j = dec.j as i64;
    let lift = |x: BigInt| QuadElem::from_int(x, &split.radicand);
    let diff = |e: i64| {
        let a = split.lambda1.pow(e).expect("unit");
        let b = split.lambda2.pow(e).expect("unit");
        &a - &b
    };
    let numerator = &(&lift(dec.g_coefficient()) * &diff(j - 1)) + &(&lift(dec.m_coefficient()) * &diff(j));
    let value = &numerator * &QuadElem::sqrt(&split.radicand).inverse().expect("Δ > 0");
    value
        .as_integer()
        .ok_or_else(|| SurdError::NonIntegral(value.to_string()))
}

/// `(a_1 + … + a_n) / q_{n−1}` for `n ≥ 1`.
pub fn digit_sum_over_q(cf: &CfExpansion, n: usize) -> Result<BigRational, CfError> {
    if n == 0 {
        return Err(CfError::IndexTooSmall { index: 0, min: 1 });
    }
    let sum = cf.digit_sum(n)?;
    let q = cf
        .convergents_iter()
        .nth(n - 1)
        .expect("digits up to n exist")
        .q;
    Ok(BigRational::new(sum, q))
}
