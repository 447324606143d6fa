//! Angular-momentum primitives: half-integer labels, log-gamma at
//! half-integers, Clebsch–Gordan coefficients and reduced Wigner matrices.

mod clebsch;
mod gamma;
mod half_int;
mod wigner;

pub use clebsch::clebsch_gordan;
pub(crate) use clebsch::clebsch_gordan_unchecked;
pub use gamma::log_gamma_half;
pub(crate) use gamma::{ln_factorial, log_gamma_half_unchecked};
pub use half_int::HalfInt;
pub use wigner::{wigner_d, WignerTable};

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Polar angle `β ∈ [0, π]` between two axes.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Angle<T>(T);

impl<T: Real> Angle<T> {
    pub fn new(beta: T) -> Result<Self> {
        if !(beta >= T::zero() && beta <= T::PI()) {
            return Err(domain(format!("angle {beta} outside [0, π]")));
        }
        Ok(Self(beta))
    }

    /// From `cos β ∈ [-1, 1]`.
    pub fn from_cos(cos_beta: T) -> Result<Self> {
        if cos_beta.is_nan() || cos_beta.abs() > T::one() {
            return Err(domain(format!("cosine {cos_beta} outside [-1, 1]")));
        }
        Ok(Self(cos_beta.acos()))
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    pub fn pi() -> Self {
        Self(T::PI())
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }
}
