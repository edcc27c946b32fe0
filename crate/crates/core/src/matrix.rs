//! 2×2 matrices over any ring-like element type.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row-major 2×2 matrix `[[m11, m12], [m21, m22]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
}

/// Integer matrix `[[p_{n+1}, p_n], [q_{n+1}, q_n]]` built from digit matrices.
pub type ConvergentMatrix = Mat2<BigInt>;

impl<T> Mat2<T> {
    pub const fn new(m11: T, m12: T, m21: T, m22: T) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Mat2<U> {
        Mat2::new(f(&self.m11), f(&self.m12), f(&self.m21), f(&self.m22))
    }
}

impl<T: Zero + One> Mat2<T> {
    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }
}

impl<T> Mat2<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    pub fn det(&self) -> T {
        self.m11.clone() * self.m22.clone() - self.m12.clone() * self.m21.clone()
    }

    pub fn trace(&self) -> T {
        self.m11.clone() + self.m22.clone()
    }

    /// `self^exp` by repeated multiplication from the identity.
    pub fn pow(&self, exp: usize) -> Self
    where
        T: Zero + One,
    {
        let mut acc = Mat2::identity();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }
}

impl<T> Mul for &Mat2<T>
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    type Output = Mat2<T>;

    fn mul(self, rhs: &Mat2<T>) -> Mat2<T> {
        let dot = |a: &T, b: &T, c: &T, d: &T| a.clone() * b.clone() + c.clone() * d.clone();
        Mat2::new(
            dot(&self.m11, &rhs.m11, &self.m12, &rhs.m21),
            dot(&self.m11, &rhs.m12, &self.m12, &rhs.m22),
            dot(&self.m21, &rhs.m11, &self.m22, &rhs.m21),
            dot(&self.m21, &rhs.m12, &self.m22, &rhs.m22),
        )
    }
}

impl<T> Add for &Mat2<T>
where
    T: Clone + Add<Output = T>,
{
    type Output = Mat2<T>;

    fn add(self, rhs: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.m11.clone() + rhs.m11.clone(),
            self.m12.clone() + rhs.m12.clone(),
            self.m21.clone() + rhs.m21.clone(),
            self.m22.clone() + rhs.m22.clone(),
        )
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

/// The digit matrix `[[a, 1], [1, 0]]`.
pub fn digit_matrix(a: &BigInt) -> ConvergentMatrix {
    Mat2::new(a.clone(), BigInt::one(), BigInt::one(), BigInt::zero())
}

/// Ordered product of digit matrices; the empty product is the identity.
pub fn digit_product<'a>(digits: impl IntoIterator<Item = &'a BigInt>) -> ConvergentMatrix {
    digits
        .into_iter()
        .fold(Mat2::identity(), |acc, a| &acc * &digit_matrix(a))
}
