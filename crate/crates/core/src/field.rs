//! Exact arithmetic in `ℚ(√Δ)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `rational + irrational·√radicand` with rational coefficients.
///
/// Operands of a binary operation must share the radicand; mixing fields is
/// a logic error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub rational: BigRational,
    pub irrational: BigRational,
    pub radicand: BigInt,
}

impl QuadElem {
    pub fn new(rational: BigRational, irrational: BigRational, radicand: BigInt) -> Self {
        QuadElem {
            rational,
            irrational,
            radicand,
        }
    }

    pub fn from_int(value: impl Into<BigInt>, radicand: &BigInt) -> Self {
        Self::new(BigRational::from_integer(value.into()), BigRational::zero(), radicand.clone())
    }

    pub fn zero(radicand: &BigInt) -> Self {
        Self::from_int(0, radicand)
    }

    pub fn one(radicand: &BigInt) -> Self {
        Self::from_int(1, radicand)
    }

    /// `√radicand` itself.
    pub fn sqrt(radicand: &BigInt) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), radicand.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// Rational value when the irrational part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.irrational.is_zero().then_some(&self.rational)
    }

    /// Integer value when the element is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Galois conjugate `x − y√Δ`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.rational.clone(), -self.irrational.clone(), self.radicand.clone())
    }

    /// `x² − Δy²`.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational
            - &self.irrational * &self.irrational * BigRational::from_integer(self.radicand.clone())
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> Ordering {
        let sx = sign_of(&self.rational);
        let sy = sign_of(&self.irrational);
        if sy == Ordering::Equal || self.radicand.is_zero() {
            return sx;
        }
        if sx == Ordering::Equal || sx == sy {
            return sy;
        }
        // opposite signs: compare x² with y²Δ
        let x2 = &self.rational * &self.rational;
        let y2d = &self.irrational * &self.irrational * BigRational::from_integer(self.radicand.clone());
        match x2.cmp(&y2d) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse via the conjugate; `None` for a zero norm.
    pub fn inverse(&self) -> Option<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(Self::new(c.rational / &norm, c.irrational / &norm, c.radicand))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.radicand);
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(&self.rational * s, &self.irrational * s, self.radicand.clone())
    }

    /// Floating-point rendering, display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let x = self.rational.to_f64().unwrap_or(f64::NAN);
        let y = self.irrational.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        x + y * d.sqrt()
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(self.radicand, other.radicand, "operands from different quadratic fields");
    }
}

fn sign_of(r: &BigRational) -> Ordering {
    r.cmp(&BigRational::zero())
}

impl PartialOrd for QuadElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.radicand == other.radicand).then(|| (self - other).signum())
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        self.assert_same_field(rhs);
        QuadElem::new(
            &self.rational + &rhs.rational,
            &self.irrational + &rhs.irrational,
            self.radicand.clone(),
        )
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        self.assert_same_field(rhs);
        QuadElem::new(
            &self.rational - &rhs.rational,
            &self.irrational - &rhs.irrational,
            self.radicand.clone(),
        )
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        self.assert_same_field(rhs);
        let d = BigRational::from_integer(self.radicand.clone());
        QuadElem::new(
            &self.rational * &rhs.rational + &self.irrational * &rhs.irrational * d,
            &self.rational * &rhs.irrational + &self.irrational * &rhs.rational,
            self.radicand.clone(),
        )
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(-self.rational.clone(), -self.irrational.clone(), self.radicand.clone())
    }
}

// owned-value forwarding so `Mat2<QuadElem>` products compose
impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: QuadElem) -> QuadElem {
        &self + &rhs
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: QuadElem) -> QuadElem {
        &self - &rhs
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: QuadElem) -> QuadElem {
        &self * &rhs
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.irrational.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}*sqrt({})", self.irrational, self.radicand),
            (false, false) => {
                let sign = if self.irrational.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*sqrt({})", self.rational, sign, self.irrational.abs(), self.radicand)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn golden_ratio_identities() {
        let five = BigInt::from(5);
        let phi = QuadElem::new(q(1, 2), q(1, 2), five.clone());
        let conj = phi.conjugate();
        assert_eq!((&phi * &conj).as_rational(), Some(&q(-1, 1)));
        assert_eq!((&phi + &conj).as_integer(), Some(BigInt::from(1)));
        // φ² = φ + 1
        assert_eq!(&phi * &phi, &phi + &QuadElem::one(&five));
        assert_eq!(phi.pow(-1).unwrap(), &phi - &QuadElem::one(&five));
    }

    #[test]
    fn exact_signs() {
        let two = BigInt::from(2);
        let silver_conj = QuadElem::new(q(1, 1), q(-1, 1), two.clone());
        assert_eq!(silver_conj.signum(), Ordering::Less);
        let near_zero = QuadElem::new(q(-99, 70), q(1, 1), two);
        assert_eq!(near_zero.signum(), Ordering::Less);
        assert_eq!(near_zero.conjugate().signum(), Ordering::Less);
        assert_eq!((-near_zero).signum(), Ordering::Greater);
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(QuadElem::zero(&BigInt::from(3)).inverse().is_none());
    }
}
