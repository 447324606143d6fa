use serde::Serialize;

use crate::angular::HalfInt;
use crate::error::{domain, Result};
use crate::parallel::{delta_parallel, ParallelScenario};
use crate::scalar::Real;

/// Optimal figure of merit for a two-spin `M = 0` axis
/// `√(1 - x)|0 0⟩ + √x|1 0⟩` against `N1` parallel spins.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoSpinSolution<T> {
    pub x: T,
    pub a: T,
    pub b: T,
    pub delta: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoSpinOptimum<T> {
    pub x_star: T,
    pub delta_max: T,
    pub a: T,
    pub b: T,
}

fn check_reference(j1: HalfInt) -> Result<()> {
    if j1 < HalfInt::HALF {
        return Err(domain(format!("reference spin {j1} must be at least 1/2")));
    }
    Ok(())
}

fn check_x<T: Real>(x: T) -> Result<()> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(domain(format!("x = {x} outside [0, 1]")));
    }
    Ok(())
}

/// `a = (6 j1 + 5) / (8 (j1 + 1))`, `b = 4 j1 / (9 (j1 + 1))`.
pub fn two_spin_coefficients<T: Real>(j1: HalfInt) -> (T, T) {
    let j: T = j1.value();
    let a = (T::lit(6.0) * j + T::lit(5.0)) / (T::lit(8.0) * (j + T::one()));
    let b = T::lit(4.0) * j / (T::lit(9.0) * (j + T::one()));
    (a, b)
}

/// Coefficients of the infinitely large reference: `a = 3/4`, `b = 4/9`.
pub fn classical_two_spin_coefficients<T: Real>() -> (T, T) {
    (T::lit(0.75), T::lit(4.0) / T::lit(9.0))
}

/// `Δ̄⁰(x) = (π/4) a x + √(b x (1 - x) + (π/4)² (1 - a x)²)`.
pub fn two_spin_merit<T: Real>(a: T, b: T, x: T) -> T {
    let q = T::FRAC_PI_4();
    q * a * x + (b * x * (T::one() - x) + q * q * (T::one() - a * x).powi(2)).sqrt()
}

pub fn delta_two_spin<T: Real>(j1: HalfInt, x: T) -> Result<TwoSpinSolution<T>> {
    check_reference(j1)?;
    check_x(x)?;
    let (a, b) = two_spin_coefficients(j1);
    Ok(TwoSpinSolution {
        x,
        a,
        b,
        delta: two_spin_merit(a, b, x),
    })
}

pub fn delta_two_spin_classical<T: Real>(x: T) -> Result<T> {
    check_x(x)?;
    let (a, b) = classical_two_spin_coefficients();
    Ok(two_spin_merit(a, b, x))
}

/// Closed-form maximum over `x`:
/// `[a π (8b - a π²) + 16 b √(4b + (1 - a) π²)] / [4 (16 b - a² π²)]`.
pub fn two_spin_max_closed_form<T: Real>(a: T, b: T) -> T {
    let pi = T::PI();
    let pi2 = pi * pi;
    let num = a * pi * (T::lit(8.0) * b - a * pi2) + T::lit(16.0) * b * (T::lit(4.0) * b + (T::one() - a) * pi2).sqrt();
    num / (T::lit(4.0) * (T::lit(16.0) * b - a * a * pi2))
}

/// Stationary point of [`two_spin_merit`] in `[0, 1]`.
///
/// Squaring `f'(x) = 0` gives `4Q x² + 4B x - (b - 4pa) = 0` with
/// `p = π²/16`, `B = b - 2pa`, `Q = pa² - b`; of the real roots in `[0, 1]`
/// (and the endpoints) the one with the largest merit is returned.
pub fn two_spin_argmax<T: Real>(a: T, b: T) -> T {
    let p = T::PI() * T::PI() / T::lit(16.0);
    let four = T::lit(4.0);
    let big_b = b - T::lit(2.0) * p * a;
    let q = p * a * a - b;
    let c0 = -(b - four * p * a);
    let mut candidates = vec![T::zero(), T::one()];
    if q.abs() > T::epsilon() {
        let disc = (four * big_b).powi(2) - T::lit(4.0) * (four * q) * c0;
        if disc >= T::zero() {
            let sq = disc.sqrt();
            candidates.push((-four * big_b + sq) / (T::lit(8.0) * q));
            candidates.push((-four * big_b - sq) / (T::lit(8.0) * q));
        }
    } else if big_b != T::zero() {
        candidates.push(-c0 / (four * big_b));
    }
    candidates
        .into_iter()
        .filter(|x| *x >= T::zero() && *x <= T::one())
        .fold((T::zero(), T::neg_infinity()), |best, x| {
            let f = two_spin_merit(a, b, x);
            if f > best.1 {
                (x, f)
            } else {
                best
            }
        })
        .0
}

pub fn delta_two_spin_max<T: Real>(j1: HalfInt) -> Result<TwoSpinOptimum<T>> {
    check_reference(j1)?;
    let (a, b) = two_spin_coefficients(j1);
    Ok(TwoSpinOptimum {
        x_star: two_spin_argmax(a, b),
        delta_max: two_spin_max_closed_form(a, b),
        a,
        b,
    })
}

pub fn delta_two_spin_max_classical<T: Real>() -> TwoSpinOptimum<T> {
    let (a, b) = classical_two_spin_coefficients();
    TwoSpinOptimum {
        x_star: two_spin_argmax(a, b),
        delta_max: two_spin_max_closed_form(a, b),
        a,
        b,
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns `(x, f(x))` once the bracket is narrower than `tol`.
pub fn golden_section_max<T: Real>(mut f: impl FnMut(T) -> T, lo: T, hi: T, tol: T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) * T::lit(0.5);
    (x, f(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvexityVerdict<T> {
    /// `Σ_M p_M Δ̄^M`.
    pub mixture: T,
    /// `max_M Δ̄^M` over the weighted `M`.
    pub best: T,
    pub holds: bool,
    pub strict: bool,
}

/// For a two-spin axis dephased into a mixture with weights
/// `p = (p_{-1}, p_0, p_{+1})`, compares `Σ_M p_M Δ̄^M` against the best pure
/// `M`, using the optimal `Δ̄^M` for each magnetic number.
pub fn convexity_check<T: Real>(j1: HalfInt, weights: [T; 3]) -> Result<ConvexityVerdict<T>> {
    check_reference(j1)?;
    let total: T = weights.iter().copied().sum();
    if weights.iter().any(|p| p.is_nan() || *p < T::zero()) || (total - T::one()).abs() > T::convergence_tol() {
        return Err(domain("weights must be a probability vector over M = -1, 0, 1"));
    }
    let sc = ParallelScenario::new(j1, HalfInt::ONE)?;
    let parallel: T = delta_parallel(&sc);
    let per_m = [parallel, delta_two_spin_max::<T>(j1)?.delta_max, parallel];
    let mixture: T = weights.iter().zip(per_m).map(|(p, d)| *p * d).sum();
    let best = weights
        .iter()
        .zip(per_m)
        .filter(|(p, _)| **p > T::zero())
        .map(|(_, d)| d)
        .fold(T::neg_infinity(), T::max);
    let slack = T::lit(1e-15).max(T::epsilon() * T::lit(4.0));
    Ok(ConvexityVerdict {
        mixture,
        best,
        holds: mixture <= best + slack,
        strict: mixture < best,
    })
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
    fn endpoints_are_the_prior_baseline() {
        for tj1 in 1..=12 {
            let j1 = h(tj1);
            assert_relative_eq!(delta_two_spin::<f64>(j1, 0.0).unwrap().delta, PI / 4.0, epsilon = 1e-15);
            assert_relative_eq!(delta_two_spin::<f64>(j1, 1.0).unwrap().delta, PI / 4.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn anti_parallel_anchor() {
        let sol = delta_two_spin::<f64>(HalfInt::HALF, 0.5).unwrap();
        assert_relative_eq!(sol.a, 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(sol.b, 4.0 / 27.0, epsilon = 1e-15);
        let expected = PI / 12.0 + (4.0 / 3.0 + PI * PI).sqrt() / 6.0;
        assert_relative_eq!(sol.delta, expected, epsilon = 1e-15);
        assert_eq!(format!("{:.5}", sol.delta), "0.81965");
    }

    #[test]
    fn x_outside_unit_interval_is_error() {
        assert!(delta_two_spin::<f64>(HalfInt::HALF, -0.1).is_err());
        assert!(delta_two_spin::<f64>(HalfInt::HALF, 1.1).is_err());
        assert!(delta_two_spin::<f64>(HalfInt::ZERO, 0.5).is_err());
        assert!(delta_two_spin_classical::<f64>(f64::NAN).is_err());
    }

    #[test]
    fn stationary_point_attains_closed_form() {
        for tj1 in 1..=40 {
            let opt = delta_two_spin_max::<f64>(h(tj1)).unwrap();
            assert!(opt.x_star > 0.0 && opt.x_star < 1.0);
            assert_relative_eq!(two_spin_merit(opt.a, opt.b, opt.x_star), opt.delta_max, epsilon = 1e-13);
        }
        let c = delta_two_spin_max_classical::<f64>();
        assert_relative_eq!(two_spin_merit(c.a, c.b, c.x_star), c.delta_max, epsilon = 1e-13);
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x: f64| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert_relative_eq!(fx, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn convexity_verdicts() {
        let j1 = h(3);
        let pure = convexity_check::<f64>(j1, [0.0, 1.0, 0.0]).unwrap();
        assert!(pure.holds && !pure.strict);
        assert_eq!(pure.mixture, pure.best);
        let third = 1.0 / 3.0;
        let uniform = convexity_check::<f64>(j1, [third, third, third]).unwrap();
        assert!(uniform.holds && uniform.strict);
        assert!(convexity_check::<f64>(j1, [0.5, 0.6, 0.0]).is_err());
        assert!(convexity_check::<f64>(j1, [-0.1, 1.1, 0.0]).is_err());
    }
}
