use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};

use serde::Serialize;

use crate::scalar::Real;

/// Planar vector `(cos-component, sin-component)`. Holds the direction
/// `w = (cos β, sin β)`, estimator vectors `V`, and `(C, S)` integral pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Vec2<T> {
    pub c: T,
    pub s: T,
}

impl<T: Real> Vec2<T> {
    #[inline]
    pub fn new(c: T, s: T) -> Self {
        Self { c, s }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Unit vector at angle `theta`.
    #[inline]
    pub fn from_angle(theta: T) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn norm(self) -> T {
        self.c.hypot(self.s)
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.c * other.c + self.s * other.s
    }

    /// `atan2(s, c)`.
    #[inline]
    pub fn angle(self) -> T {
        self.s.atan2(self.c)
    }

    pub fn is_finite(self) -> bool {
        self.c.is_finite() && self.s.is_finite()
    }

    pub fn max_abs_diff(self, other: Self) -> T {
        (self.c - other.c).abs().max((self.s - other.s).abs())
    }
}

impl<T: Real> Add for Vec2<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.c + rhs.c, self.s + rhs.s)
    }
}

impl<T: Real> Sub for Vec2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.c - rhs.c, self.s - rhs.s)
    }
}

impl<T: Real> AddAssign for Vec2<T> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Real> Mul<T> for Vec2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, k: T) -> Self {
        Self::new(self.c * k, self.s * k)
    }
}

impl<T: Real> Sum for Vec2<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Add::add)
    }
}
