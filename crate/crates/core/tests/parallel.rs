use std::f64::consts::{FRAC_PI_4, PI};

use quantum_axes::parallel::{
    classical_estimator, delta_classical, delta_infinity, delta_parallel, estimator_table, kappa, outcome_prob,
    v_vector, ParallelScenario,
};
use quantum_axes::{Angle, HalfInt, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spin(n: u32) -> HalfInt {
    HalfInt::from_spin_count(n)
}

fn scenario(n1: u32, n2: u32) -> ParallelScenario {
    ParallelScenario::from_spin_counts(n1, n2).unwrap()
}

/// Composite Simpson rule on `[0, π]`.
fn simpson(f: impl Fn(f64) -> f64, intervals: usize) -> f64 {
    let h = PI / intervals as f64;
    let mut acc = f(0.0) + f(PI);
    for i in 1..intervals {
        acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

#[test]
fn anchor_value() {
    let d: f64 = delta_parallel(&scenario(1, 2));
    let closed = (2.0 * (4.0 + 9.0 * PI * PI).sqrt() + (16.0 + 9.0 * PI * PI).sqrt()) / 36.0;
    assert!((d - closed).abs() < 1e-12);
    assert!((d - 0.81966).abs() < 5e-6);
    let table = estimator_table::<f64>(&scenario(2, 1));
    assert_eq!(table.entries().len(), 2);
    assert!(table.entries().iter().all(|e| e.weight > 0.0 && !e.degenerate));
}

#[test]
fn probabilities_are_normalised() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n1 in 1..=8 {
        for n2 in 1..=8 {
            let sc = scenario(n1, n2);
            let aligned: f64 = outcome_prob(&sc, sc.j1() + sc.j2(), Angle::zero()).unwrap();
            assert!((aligned - 1.0).abs() < 1e-14);
            for _ in 0..100 {
                let beta = Angle::new(rng.random_range(0.0..=PI)).unwrap();
                let total: f64 = sc.outcomes().map(|j| outcome_prob::<f64>(&sc, j, beta).unwrap()).sum();
                assert!((total - 1.0).abs() < 1e-10, "N1={n1} N2={n2}: {total}");
            }
        }
    }
    assert!(outcome_prob::<f64>(&scenario(2, 2), spin(6), Angle::zero()).is_err());
}

/// Explicit two-qubit calculation: the first spin points along z, the second
/// along the axis rotated by `β` about y, projected on the singlet.
#[test]
fn singlet_probability_from_explicit_states() {
    let sc = scenario(1, 1);
    for &b in &[0.0, 0.5, 1.3, 2.9, PI] {
        let (c, s) = ((b / 2.0).cos(), (b / 2.0).sin());
        let up = [1.0, 0.0];
        let rotated = [c, s];
        // Basis |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
        let product = [
            up[0] * rotated[0],
            up[0] * rotated[1],
            up[1] * rotated[0],
            up[1] * rotated[1],
        ];
        let singlet = [0.0, 1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
        let amp: f64 = product.iter().zip(&singlet).map(|(a, b)| a * b).sum();
        let p: f64 = outcome_prob(&sc, HalfInt::ZERO, Angle::new(b).unwrap()).unwrap();
        assert!((p - amp * amp).abs() < 1e-14, "β={b}");
    }
    let p: f64 = outcome_prob(&sc, HalfInt::ZERO, Angle::pi()).unwrap();
    assert!((p - 0.5).abs() < 1e-14);
}

#[test]
fn v_vectors_match_quadrature_of_probabilities() {
    for (n1, n2) in [(1, 1), (2, 1), (3, 2), (4, 4), (5, 3)] {
        let sc = scenario(n1, n2);
        let mut total = 0.0;
        for j in sc.outcomes() {
            let v: Vec2<f64> = v_vector(&sc, j).unwrap();
            let p = |b: f64| outcome_prob::<f64>(&sc, j, Angle::new(b).unwrap()).unwrap();
            let c = 0.5 * simpson(|b| b.sin() * b.cos() * p(b), 4000);
            let s = 0.5 * simpson(|b| b.sin() * b.sin() * p(b), 4000);
            assert!(
                (v.c - c).abs() < 1e-10 && (v.s - s).abs() < 1e-10,
                "N1={n1} N2={n2} j={j}"
            );
            total += v.norm();
        }
        assert!((total - delta_parallel::<f64>(&sc)).abs() < 1e-14);
    }
}

#[test]
fn estimates_are_strict_optima() {
    for n1 in 1..=6 {
        for n2 in 1..=n1 {
            for e in estimator_table::<f64>(&scenario(n1, n2)).entries() {
                assert!((0.0..=PI).contains(&e.theta_hat));
                let best = e.contribution(e.theta_hat);
                assert!((best - e.weight).abs() < 1e-14);
                assert!(e.contribution(e.theta_hat + 0.01) < best);
                assert!(e.contribution(e.theta_hat - 0.01) < best);
            }
        }
    }
}

#[test]
fn swap_symmetry_and_bounds() {
    for n1 in 1..=16 {
        for n2 in 1..=16 {
            let a: f64 = delta_parallel(&ParallelScenario::new(spin(n1), spin(n2)).unwrap());
            let b: f64 = delta_parallel(&ParallelScenario::new(spin(n2), spin(n1)).unwrap());
            assert!((a - b).abs() < 1e-12);
            assert!(a > FRAC_PI_4 && a < 1.0, "N1={n1} N2={n2}: {a}");
        }
    }
}

#[test]
fn finite_reference_stays_below_the_limit() {
    for n2 in 1..=4 {
        let limit: f64 = delta_infinity(spin(n2)).unwrap();
        for n1 in n2..=128 {
            let d: f64 = delta_parallel(&scenario(n1, n2));
            assert!(d < limit, "N1={n1} N2={n2}");
        }
    }
    let gap = delta_infinity::<f64>(spin(1)).unwrap() - delta_parallel::<f64>(&scenario(256, 1));
    assert!(gap > 0.0 && gap < 1e-2);
}

#[test]
fn limit_closed_forms() {
    let d: f64 = delta_infinity(HalfInt::HALF).unwrap();
    let expected = 2.0 / 3.0 * ((3.0 * PI / 8.0).powi(2) + 0.25).sqrt();
    assert!((d - expected).abs() < 1e-14);

    let product = 200.0 * (1.0 - delta_infinity::<f64>(spin(200)).unwrap());
    assert!((product - 0.5).abs() < 0.05, "{product}");
}

#[test]
fn kappa_matches_extrapolated_gap() {
    for n2 in 1..=3 {
        let j2 = spin(n2);
        let limit: f64 = delta_infinity(j2).unwrap();
        let scaled = |n1: u32| f64::from(n1) * (limit - delta_parallel::<f64>(&scenario(n1, n2)));
        let extrapolated = 2.0 * scaled(1024) - scaled(512);
        let k: f64 = kappa(j2).unwrap();
        assert!(((extrapolated - k) / k).abs() < 0.02, "N2={n2}: {extrapolated} vs {k}");
    }
    let k50: f64 = kappa(HalfInt::int(50)).unwrap();
    assert!((k50 - 0.5).abs() < 0.025, "{k50}");
}

#[test]
fn classical_strategy_reaches_the_limit() {
    for n2 in 1..=40 {
        let j2 = spin(n2);
        let a: f64 = delta_classical(j2).unwrap();
        let b: f64 = delta_infinity(j2).unwrap();
        assert!((a - b).abs() < 1e-12, "N2={n2}");
    }
    let table = classical_estimator::<f64>(HalfInt::HALF).unwrap();
    let [down, up] = table.entries() else {
        panic!("two outcomes")
    };
    assert_eq!(down.outcome, -HalfInt::HALF);
    assert!((down.theta_hat - (PI - up.theta_hat)).abs() < 1e-14);
    assert!((up.theta_hat - (3.0 * PI / 8.0).atan2(0.5)).abs() < 1e-14);
}

#[test]
fn single_precision_tracks_double() {
    for (n1, n2) in [(1, 2), (7, 3), (40, 5)] {
        let d32: f32 = delta_parallel(&scenario(n1, n2));
        let d64: f64 = delta_parallel(&scenario(n1, n2));
        assert!((f64::from(d32) - d64).abs() < 1e-5);
    }
}
