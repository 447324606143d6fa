use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Real;

/// An angular-momentum quantum number `j` or projection `m`, stored as `2j`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: Self = Self::from_twice(0);
    pub const HALF: Self = Self::from_twice(1);
    pub const ONE: Self = Self::from_twice(2);

    #[inline]
    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    /// The integer `n` as a half-integer label.
    #[inline]
    pub const fn int(n: i32) -> Self {
        Self { twice: 2 * n }
    }

    /// Spin `N/2` carried by `N` spin-1/2 particles.
    #[inline]
    pub const fn from_spin_count(n: u32) -> Self {
        Self { twice: n as i32 }
    }

    #[inline]
    pub const fn twice(self) -> i32 {
        self.twice
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Whether `self - other` is an integer.
    #[inline]
    pub const fn same_parity(self, other: Self) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    /// The value as an integer, if it is one.
    #[inline]
    pub const fn as_integer(self) -> Option<i32> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    #[inline]
    pub const fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }

    #[inline]
    pub fn value<T: Real>(self) -> T {
        T::lit(f64::from(self.twice) * 0.5)
    }

    /// `lo, lo + 1, …` up to and including `hi` (empty if `hi < lo`).
    pub fn range_inclusive(lo: Self, hi: Self) -> impl DoubleEndedIterator<Item = Self> + Clone {
        let count = if hi.twice < lo.twice {
            0
        } else {
            (hi.twice - lo.twice) / 2 + 1
        };
        (0..count).map(move |k| Self::from_twice(lo.twice + 2 * k))
    }

    /// Projections `-j, -j + 1, …, j`.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = Self> + Clone {
        Self::range_inclusive(-self, self)
    }

    /// Checks that `self` is a well-formed angular momentum `j ≥ 0`.
    pub fn check_spin(self) -> Result<()> {
        if self.twice < 0 {
            return Err(domain(format!("negative angular momentum {self}")));
        }
        Ok(())
    }

    /// Checks that `m` is a valid projection of this spin: `|m| ≤ j` and
    /// `j - m` integer.
    pub fn check_projection(self, m: Self) -> Result<()> {
        self.check_spin()?;
        if !self.same_parity(m) {
            return Err(domain(format!("projection {m} has the wrong parity for j = {self}")));
        }
        if m.abs() > self {
            return Err(domain(format!("projection {m} exceeds j = {self}")));
        }
        Ok(())
    }
}

impl Add for HalfInt {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
