//! Optimal relative-angle estimation when both quantum axes consist of
//! parallel spins, `|j1 j1⟩ ⊗ |j2 j2⟩` rotated independently.
//!
//! The optimal measurement projects onto total-spin sectors `j`; the optimal
//! guess for outcome `j` points along `V_j` and the averaged figure of merit
//! is `Σ_j |V_j|`. Also here: the large-`N1` limit, its `1/N1` correction
//! coefficient, and the Stern-Gerlach strategy against a classical axis.

use serde::Serialize;

use crate::angular::{Angle, HalfInt, WignerTable};
use crate::error::{domain, Result};
use crate::merit::{eta_unchecked, s_coeff_unchecked, Vec2};
use crate::scalar::{compensated_sum, Real};

/// Weights below this are treated as a degenerate estimator direction.
pub const DEGENERATE_WEIGHT: f64 = 1e-15;

/// Two parallel-spin quantum axes with spins `j1 = N1/2`, `j2 = N2/2`,
/// stored with `j2 ≤ j1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParallelScenario {
    j1: HalfInt,
    j2: HalfInt,
}

impl ParallelScenario {
    /// Accepts the two spins in either order.
    pub fn new(a: HalfInt, b: HalfInt) -> Result<Self> {
        for j in [a, b] {
            if j < HalfInt::HALF {
                return Err(domain(format!("quantum axis spin {j} must be at least 1/2")));
            }
        }
        let (j1, j2) = if a >= b { (a, b) } else { (b, a) };
        Ok(Self { j1, j2 })
    }

    pub fn from_spin_counts(n1: u32, n2: u32) -> Result<Self> {
        Self::new(HalfInt::from_spin_count(n1), HalfInt::from_spin_count(n2))
    }

    /// The larger spin.
    pub fn j1(&self) -> HalfInt {
        self.j1
    }

    /// The smaller spin.
    pub fn j2(&self) -> HalfInt {
        self.j2
    }

    /// Total-spin sectors `|j1 - j2|, …, j1 + j2`.
    pub fn outcomes(&self) -> impl Iterator<Item = HalfInt> + Clone {
        HalfInt::range_inclusive(self.j1 - self.j2, self.j1 + self.j2)
    }

    fn check_outcome(&self, j: HalfInt) -> Result<()> {
        if !j.same_parity(self.j1 + self.j2) || j < self.j1 - self.j2 || j > self.j1 + self.j2 {
            return Err(domain(format!(
                "outcome {j} is not a total spin of {} ⊗ {}",
                self.j1, self.j2
            )));
        }
        Ok(())
    }

    fn normalisation<T: Real>(&self) -> T {
        normalisation(self.j2)
    }
}

/// `(2 j2 + 1)(j2 + 1)`.
fn normalisation<T: Real>(j2: HalfInt) -> T {
    T::lit(f64::from(j2.twice() + 1) * (f64::from(j2.twice()) * 0.5 + 1.0))
}

/// Probability of total spin `j` when the axes are at relative angle `β`:
/// `Σ_μ η_{j, j1+μ} [d^{(j2)}_{μ j2}(β)]²`.
pub fn outcome_prob<T: Real>(sc: &ParallelScenario, j: HalfInt, beta: Angle<T>) -> Result<T> {
    sc.check_outcome(j)?;
    let terms = sc.j2.projections().map(|mu| {
        let d = WignerTable::<T>::new(sc.j2, mu, sc.j2)
            .expect("projection of j2")
            .eval(beta);
        eta_unchecked::<T>(sc.j1, sc.j2, j, sc.j1 + mu) * d * d
    });
    Ok(compensated_sum(terms))
}

/// `V_j = Σ_μ η_{j, j1+μ} (c_μ, s_μ) / ((2 j2 + 1)(j2 + 1))`, the
/// `β`-average of `(cos β, sin β)` weighted by the outcome probability.
pub fn v_vector<T: Real>(sc: &ParallelScenario, j: HalfInt) -> Result<Vec2<T>> {
    sc.check_outcome(j)?;
    Ok(v_vector_unchecked(sc, j))
}

fn v_vector_unchecked<T: Real>(sc: &ParallelScenario, j: HalfInt) -> Vec2<T> {
    let mut c = Vec::new();
    let mut s = Vec::new();
    for mu in sc.j2.projections() {
        let e = eta_unchecked::<T>(sc.j1, sc.j2, j, sc.j1 + mu);
        c.push(e * mu.value());
        s.push(e * s_coeff_unchecked::<T>(sc.j2, mu));
    }
    let norm = sc.normalisation::<T>();
    Vec2::new(compensated_sum(c) / norm, compensated_sum(s) / norm)
}

/// Optimal estimate and weight for one measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EstimatorEntry<T> {
    pub outcome: HalfInt,
    pub v: Vec2<T>,
    /// Guessed angle `atan2(V.s, V.c)`, or `π/2` when `V` vanishes.
    pub theta_hat: T,
    /// `|V|`, the outcome's contribution to the averaged figure of merit.
    pub weight: T,
    pub degenerate: bool,
}

/// Optimal estimator over a discrete outcome set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimatorTable<T> {
    entries: Vec<EstimatorEntry<T>>,
}

impl<T: Real> EstimatorTable<T> {
    pub fn from_vectors(vectors: impl IntoIterator<Item = (HalfInt, Vec2<T>)>) -> Self {
        let entries = vectors
            .into_iter()
            .map(|(outcome, v)| {
                let weight = v.norm();
                if weight < T::lit(DEGENERATE_WEIGHT) {
                    EstimatorEntry {
                        outcome,
                        v,
                        theta_hat: T::FRAC_PI_2(),
                        weight: T::zero(),
                        degenerate: true,
                    }
                } else {
                    EstimatorEntry {
                        outcome,
                        v,
                        theta_hat: v.angle(),
                        weight,
                        degenerate: false,
                    }
                }
            })
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[EstimatorEntry<T>] {
        &self.entries
    }

    /// `Σ |V|`.
    pub fn delta(&self) -> T {
        compensated_sum(self.entries.iter().map(|e| e.weight))
    }

    pub fn has_degenerate(&self) -> bool {
        self.entries.iter().any(|e| e.degenerate)
    }

    pub fn estimate(&self, outcome: HalfInt) -> Option<T> {
        self.entries.iter().find(|e| e.outcome == outcome).map(|e| e.theta_hat)
    }
}

impl<T: Real> EstimatorEntry<T> {
    /// Contribution `V · (cos θ, sin θ)` of this outcome when the guess is `θ`.
    pub fn contribution(&self, theta: T) -> T {
        self.v.dot(Vec2::from_angle(theta))
    }
}

pub fn estimator_table<T: Real>(sc: &ParallelScenario) -> EstimatorTable<T> {
    EstimatorTable::from_vectors(sc.outcomes().map(|j| (j, v_vector_unchecked(sc, j))))
}

/// Optimal averaged figure of merit `Δ̄ = Σ_j |V_j|`.
pub fn delta_parallel<T: Real>(sc: &ParallelScenario) -> T {
    estimator_table(sc).delta()
}

/// `Δ̄_∞ = Σ_m √(s_m² + c_m²) / ((2 j2 + 1)(j2 + 1))`, the limit of
/// [`delta_parallel`] for an infinitely large reference.
pub fn delta_infinity<T: Real>(j2: HalfInt) -> Result<T> {
    j2.check_spin()?;
    let norm = normalisation::<T>(j2);
    Ok(compensated_sum(j2.projections().map(|m| s_coeff_unchecked::<T>(j2, m).hypot(m.value()))) / norm)
}

/// Coefficient `κ` of the `1/N1` correction: `Δ̄ = Δ̄_∞ - κ/N1 + o(1/N1)`.
pub fn kappa<T: Real>(j2: HalfInt) -> Result<T> {
    j2.check_spin()?;
    let jj: T = j2.value();
    let terms = j2.projections().map(|l| {
        let lv: T = l.value();
        let a = jj * (jj + T::one()) - lv * (T::lit(3.0) * lv - T::one());
        let b = (T::lit(6.0) * lv * (jj + lv) + lv - jj) / (T::lit(2.0) * (jj + lv) + T::one());
        let s = s_coeff_unchecked::<T>(j2, l);
        (a * lv - b * s * s) / s.hypot(lv)
    });
    Ok(compensated_sum(terms) / normalisation::<T>(j2))
}

/// Probability of Stern-Gerlach outcome `m` along the classical axis:
/// `[d^{(j2)}_{m j2}(β)]²`.
pub fn classical_prob<T: Real>(j2: HalfInt, m: HalfInt, beta: Angle<T>) -> Result<T> {
    let d = WignerTable::<T>::new(j2, m, j2)?.eval(beta);
    Ok(d * d)
}

/// Estimator for the von Neumann measurement `|j2 m⟩⟨j2 m|` against a
/// classical axis: `V_m = (c_m, s_m) / ((2 j2 + 1)(j2 + 1))`.
pub fn classical_estimator<T: Real>(j2: HalfInt) -> Result<EstimatorTable<T>> {
    j2.check_spin()?;
    let norm = normalisation::<T>(j2);
    Ok(EstimatorTable::from_vectors(j2.projections().map(|m| {
        (
            m,
            Vec2::new(m.value::<T>() / norm, s_coeff_unchecked::<T>(j2, m) / norm),
        )
    })))
}

/// `Σ_m |V_m|` for the Stern-Gerlach strategy; coincides with
/// [`delta_infinity`].
pub fn delta_classical<T: Real>(j2: HalfInt) -> Result<T> {
    Ok(classical_estimator::<T>(j2)?.delta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn scenario_canonical_order() {
        let a = ParallelScenario::from_spin_counts(1, 2).unwrap();
        let b = ParallelScenario::from_spin_counts(2, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.j1(), HalfInt::ONE);
        assert_eq!(a.j2(), HalfInt::HALF);
        assert!(ParallelScenario::from_spin_counts(0, 2).is_err());
        assert_eq!(a.outcomes().count(), 2);
    }

    #[test]
    fn aligned_axes_give_stretched_sector() {
        let sc = ParallelScenario::from_spin_counts(5, 3).unwrap();
        let top = sc.j1() + sc.j2();
        for j in sc.outcomes() {
            let p: f64 = outcome_prob(&sc, j, Angle::zero()).unwrap();
            assert_relative_eq!(p, if j == top { 1.0 } else { 0.0 }, epsilon = 1e-14);
        }
    }

    #[test]
    fn outcome_outside_range_is_error() {
        let sc = ParallelScenario::from_spin_counts(2, 2).unwrap();
        assert!(outcome_prob::<f64>(&sc, h(6), Angle::zero()).is_err());
        assert!(outcome_prob::<f64>(&sc, h(1), Angle::zero()).is_err());
        assert!(v_vector::<f64>(&sc, h(3)).is_err());
    }

    #[test]
    fn parallel_anchor_value() {
        let sc = ParallelScenario::from_spin_counts(1, 2).unwrap();
        let expected = (2.0 * (4.0 + 9.0 * PI * PI).sqrt() + (16.0 + 9.0 * PI * PI).sqrt()) / 36.0;
        assert_relative_eq!(delta_parallel::<f64>(&sc), expected, epsilon = 1e-14);
        for e in estimator_table::<f64>(&sc).entries() {
            assert!(e.weight > 0.0 && !e.degenerate);
        }
    }

    #[test]
    fn delta_infinity_spin_half() {
        let expected = 2.0 / 3.0 * ((3.0 * PI / 8.0).powi(2) + 0.25).sqrt();
        assert_relative_eq!(delta_infinity::<f64>(HalfInt::HALF).unwrap(), expected, epsilon = 1e-15);
    }

    #[test]
    fn classical_strategy_equals_infinite_reference() {
        for tj in 1..=40 {
            let j2 = h(tj);
            let a: f64 = delta_classical(j2).unwrap();
            let b: f64 = delta_infinity(j2).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
        let table = classical_estimator::<f64>(HalfInt::HALF).unwrap();
        let e = table.entries();
        assert_eq!(e.len(), 2);
        assert_relative_eq!(e[0].theta_hat, PI - e[1].theta_hat, epsilon = 1e-15);
    }

    #[test]
    fn kappa_leading_term_coefficient() {
        // A_0 = j2 (j2 + 1) enters as A_0 c_0 = 0, so κ for j2 = 1/2 only sees
        // l = ±1/2.
        let k: f64 = kappa(HalfInt::HALF).unwrap();
        assert!(k > 0.0);
        let k50: f64 = kappa(HalfInt::int(50)).unwrap();
        assert!((k50 - 0.5).abs() < 0.05 * 0.5);
    }

    #[test]
    fn degenerate_vector_gets_prior_mean() {
        let t = EstimatorTable::<f64>::from_vectors([(HalfInt::ZERO, Vec2::zero())]);
        assert!(t.has_degenerate());
        assert_eq!(t.entries()[0].theta_hat, PI / 2.0);
        assert_eq!(t.delta(), 0.0);
    }

    #[test]
    fn single_precision_tracks_double() {
        let sc = ParallelScenario::from_spin_counts(6, 3).unwrap();
        let a = delta_parallel::<f32>(&sc);
        let b = delta_parallel::<f64>(&sc);
        assert!((f64::from(a) - b).abs() < 1e-5);
    }
}
