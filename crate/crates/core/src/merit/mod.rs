//! Coefficient layer: `c`, `s`, `η`, and the `(C, S)` overlap integrals.

mod coeffs;
mod quadrature;
mod vec2;

pub use coeffs::{c_coeff, eta, s_coeff};
pub(crate) use coeffs::{eta_unchecked, s_coeff_unchecked};
pub use quadrature::{cs_integral, cs_integral_fixed, GaussLegendre, MAX_NODES};
pub use vec2::Vec2;
