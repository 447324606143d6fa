use serde::Serialize;

use crate::angular::HalfInt;
use crate::error::{domain, Result};
use crate::scalar::Real;

/// A quantum axis of `N` spins: an eigenstate of `n·S` with eigenvalue `M`,
/// `Σ_J a_J |J M⟩` with `J = |M|, …, N/2` and real `a_J ≥ 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralAxis<T> {
    n_spins: u32,
    m: HalfInt,
    amps: Vec<(HalfInt, T)>,
}

impl<T: Real> GeneralAxis<T> {
    /// `amplitudes[i]` belongs to `J = |M| + i`; one amplitude per allowed `J`.
    pub fn new(n_spins: u32, m: HalfInt, amplitudes: Vec<T>) -> Result<Self> {
        if n_spins == 0 {
            return Err(domain("a quantum axis needs at least one spin"));
        }
        let top = HalfInt::from_spin_count(n_spins);
        if !top.same_parity(m) || m.abs() > top {
            return Err(domain(format!("M = {m} is not a projection for {n_spins} spins")));
        }
        let expected = ((top - m.abs()).twice() / 2 + 1) as usize;
        if amplitudes.len() != expected {
            return Err(domain(format!(
                "expected {expected} amplitudes for J = {}..{top}, got {}",
                m.abs(),
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|a| !a.is_finite() || *a < T::zero()) {
            return Err(domain("amplitudes must be finite and nonnegative"));
        }
        let norm: T = amplitudes.iter().map(|a| *a * *a).sum();
        if (norm - T::one()).abs() > T::convergence_tol() {
            return Err(domain(format!("amplitudes are not normalised: Σ a² = {norm}")));
        }
        let amps = HalfInt::range_inclusive(m.abs(), top).zip(amplitudes).collect();
        Ok(Self { n_spins, m, amps })
    }

    /// `N` parallel spins, `|j j⟩` with `j = N/2`.
    pub fn parallel(n_spins: u32) -> Result<Self> {
        Self::new(n_spins, HalfInt::from_spin_count(n_spins), vec![T::one()])
    }

    /// Two spins with `M = 0`: `√(1 - x) |0 0⟩ + √x |1 0⟩`. `x = 1/2` is an
    /// anti-parallel pair.
    pub fn two_spin_m0(x: T) -> Result<Self> {
        if !(x >= T::zero() && x <= T::one()) {
            return Err(domain(format!("x = {x} outside [0, 1]")));
        }
        Self::new(2, HalfInt::ZERO, vec![(T::one() - x).sqrt(), x.sqrt()])
    }

    pub fn n_spins(&self) -> u32 {
        self.n_spins
    }

    pub fn magnetic(&self) -> HalfInt {
        self.m
    }

    pub fn amplitudes(&self) -> &[(HalfInt, T)] {
        &self.amps
    }

    /// Total spins `J` carried by the axis, ascending.
    pub fn labels(&self) -> Vec<HalfInt> {
        self.amps.iter().map(|(j, _)| *j).collect()
    }
}
