use std::f64::consts::{FRAC_PI_4, PI};

use quantum_axes::parallel::{delta_infinity, delta_parallel, ParallelScenario};
use quantum_axes::sim::{
    run_protocol_classical, run_protocol_parallel, run_protocol_two_spin, sample_relative_angle, SimulationMode,
    Strategy,
};
use quantum_axes::{Angle, HalfInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: u64 = 1_000_000;

fn spin(n: u32) -> HalfInt {
    HalfInt::from_spin_count(n)
}

fn anti_parallel_anchor() -> f64 {
    PI / 12.0 + (4.0f64 / 3.0 + PI * PI).sqrt() / 6.0
}

#[test]
fn relative_angle_is_uniform_in_cosine() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let draws: Vec<f64> = (0..N).map(|_| sample_relative_angle(&mut rng).value()).collect();
    assert!(draws.iter().all(|b| (0.0..=PI).contains(b)));
    let mean_cos = draws.iter().map(|b| b.cos()).sum::<f64>() / N as f64;
    let mean_sin = draws.iter().map(|b| b.sin()).sum::<f64>() / N as f64;
    assert!(mean_cos.abs() < 3e-3, "{mean_cos}");
    let sd_sin = ((2.0 / 3.0 - PI * PI / 16.0) / N as f64).sqrt();
    assert!((mean_sin - FRAC_PI_4).abs() < 3.0 * sd_sin, "{mean_sin}");

    let mut again = ChaCha8Rng::seed_from_u64(2024);
    assert!(draws
        .iter()
        .take(1000)
        .all(|b| *b == sample_relative_angle(&mut again).value()));
}

#[test]
fn parallel_anchor_simulation() {
    let sc = ParallelScenario::from_spin_counts(1, 2).unwrap();
    let r = run_protocol_parallel(&sc, N, 1).unwrap();
    assert_eq!(r.mode, SimulationMode::Parallel);
    assert!((r.theoretical_delta - 0.81966).abs() < 5e-6);
    assert!(r.z_score.abs() < 3.0, "{r:?}");

    let single = ParallelScenario::from_spin_counts(1, 1).unwrap();
    let r = run_protocol_parallel(&single, N, 2).unwrap();
    assert_eq!(r.theoretical_delta, delta_parallel::<f64>(&single));
    assert!(r.z_score.abs() < 3.0, "{r:?}");
}

#[test]
fn thousand_sample_sanity() {
    let sc = ParallelScenario::from_spin_counts(3, 2).unwrap();
    let r = run_protocol_parallel(&sc, 1000, 5).unwrap();
    assert!(r.z_score.abs() < 10.0, "{r:?}");
    assert!(r.std_error > 0.0);
}

#[test]
fn classical_simulation() {
    let r = run_protocol_classical(HalfInt::HALF, N, 3).unwrap();
    assert_eq!(r.theoretical_delta, delta_infinity::<f64>(HalfInt::HALF).unwrap());
    assert!(r.z_score.abs() < 3.0, "{r:?}");

    let j2 = spin(10);
    let r = run_protocol_classical(j2, N, 4).unwrap();
    assert!(r.z_score.abs() < 3.0, "{r:?}");
    let law = 1.0 / (2.0 * 10.0);
    assert!(((1.0 - r.empirical_delta) - law).abs() < 0.25 * law, "{r:?}");

    let strat = Strategy::classical(j2).unwrap();
    let at_zero = strat.outcome_probabilities(Angle::zero()).unwrap();
    assert!((at_zero.last().unwrap() - 1.0).abs() < 1e-15);
    assert!(at_zero[..at_zero.len() - 1].iter().all(|p| p.abs() < 1e-15));
}

#[test]
fn two_spin_simulation() {
    let r = run_protocol_two_spin(HalfInt::HALF, 0.5, N, 6).unwrap();
    assert!((r.theoretical_delta - anti_parallel_anchor()).abs() < 1e-12);
    assert!(r.z_score.abs() < 3.0, "{r:?}");

    let r = run_protocol_two_spin(spin(3), 1.0, N, 7).unwrap();
    assert!((r.theoretical_delta - FRAC_PI_4).abs() < 1e-12);
    assert!(r.z_score.abs() < 3.0, "{r:?}");

    let r = run_protocol_two_spin(spin(2), 0.0, N, 8).unwrap();
    assert!((r.theoretical_delta - FRAC_PI_4).abs() < 1e-12);
    assert!(r.z_score.abs() < 3.0, "{r:?}");
}

#[test]
fn frequencies_match_probabilities_at_fixed_angle() {
    let strategies = [
        Strategy::parallel(&ParallelScenario::from_spin_counts(3, 2).unwrap()).unwrap(),
        Strategy::classical(spin(3)).unwrap(),
        Strategy::two_spin(spin(2), 0.3).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let draws = 100_000u64;
    for strat in &strategies {
        for _ in 0..20 {
            let beta = Angle::new(rng.random_range(0.0..=PI)).unwrap();
            let probs = strat.outcome_probabilities(beta).unwrap();
            let counts = strat.draw_outcomes_at(beta, draws, rng.random()).unwrap();
            assert_eq!(counts.iter().sum::<u64>(), draws);
            for (p, k) in probs.iter().zip(&counts) {
                let sd = (p * (1.0 - p) / draws as f64).sqrt();
                let freq = *k as f64 / draws as f64;
                assert!(
                    (freq - p).abs() <= 4.0 * sd + 1e-12,
                    "{:?} β={:?}: {freq} vs {p}",
                    strat.mode(),
                    beta
                );
            }
        }
    }
}

#[test]
fn z_scores_look_standard_normal() {
    let strat = Strategy::parallel(&ParallelScenario::from_spin_counts(2, 2).unwrap()).unwrap();
    let z: Vec<f64> = (0..50)
        .map(|seed| strat.run(100_000, 1000 + seed).unwrap().z_score)
        .collect();
    let mean = z.iter().sum::<f64>() / z.len() as f64;
    assert!(mean.abs() < 0.5, "{mean}");
    assert!(z.iter().all(|z| z.abs() < 4.0), "{z:?}");
}

#[test]
fn reports_are_reproducible() {
    let a = run_protocol_two_spin(spin(1), 0.7, 20_000, 31).unwrap();
    let b = run_protocol_two_spin(spin(1), 0.7, 20_000, 31).unwrap();
    assert_eq!(a.empirical_delta.to_bits(), b.empirical_delta.to_bits());
    assert_eq!(a, b);
}
