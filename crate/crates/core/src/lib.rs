//! Optimal estimation of the relative angle between two quantum axes built
//! from spin-1/2 particles.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`, which is what the tables, the
//! simulator and the command-line tool use.

pub mod angular;
pub mod error;
pub mod general;
pub mod merit;
pub mod parallel;
pub mod scalar;
pub mod sim;

pub use angular::{clebsch_gordan, log_gamma_half, wigner_d, Angle, HalfInt, WignerTable};
pub use error::{Error, Result};
pub use merit::{c_coeff, cs_integral, eta, s_coeff, GaussLegendre, Vec2};
pub use scalar::Real;

pub type Angle64 = Angle<f64>;
pub type Angle32 = Angle<f32>;
pub type Vec2d = Vec2<f64>;
pub type Vec2f = Vec2<f32>;
