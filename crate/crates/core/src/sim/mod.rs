//! Monte-Carlo simulation of the full estimation protocol, used as an
//! oracle for the closed forms.
//!
//! Each sample draws the relative angle from the rotation-invariant prior
//! (`cos β` uniform on `[-1, 1]`), draws a measurement outcome from its exact
//! probability at that angle, applies the optimal guess and scores
//! `cos(β - θ̂)`. The random words used by sample `k` are fixed by `k` and the
//! seed alone, and the running sums are exact, so a report depends only on
//! `(strategy, n, seed)`: never on block size or worker count.

mod model;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::angular::{Angle, HalfInt};
use crate::error::{domain, Result};
use crate::general::{delta_two_spin, v_vectors_general, GeneralAxis, XiFamily};
use crate::merit::Vec2;
use crate::parallel::{
    classical_estimator, delta_infinity, delta_parallel, estimator_table, EstimatorTable, ParallelScenario,
};

pub use model::OutcomeModel;

pub const MIN_SAMPLES: u64 = 1000;

/// Samples per parallel work item.
pub const BLOCK_SIZE: u64 = 1 << 14;

/// Probability vectors whose sum is off by more than this are a bug.
pub const NORMALISATION_TOLERANCE: f64 = 1e-8;

/// Individual probabilities below this are a positivity violation.
pub const NEGATIVITY_TOLERANCE: f64 = -1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimulationMode {
    Parallel,
    Classical,
    TwoSpin,
}

impl SimulationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Parallel => "parallel",
            Self::Classical => "classical",
            Self::TwoSpin => "two_spin",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub mode: SimulationMode,
    pub n_samples: u64,
    pub empirical_delta: f64,
    /// Sample standard deviation over `√n`.
    pub std_error: f64,
    pub theoretical_delta: f64,
    pub z_score: f64,
    pub seed: u64,
}

/// Draws `β` with `cos β` uniform on `[-1, 1]`.
pub fn sample_relative_angle<R: Rng + ?Sized>(rng: &mut R) -> Angle<f64> {
    let cos_beta = 2.0 * rng.random::<f64>() - 1.0;
    Angle::from_cos(cos_beta).expect("cosine in range")
}

/// A measurement with finitely many outcomes plus the guess made for each.
#[derive(Clone, Debug)]
pub struct Strategy {
    mode: SimulationMode,
    model: OutcomeModel,
    /// Unit vectors `(cos θ̂, sin θ̂)` per outcome.
    guesses: Vec<Vec2<f64>>,
    theoretical: f64,
}

impl Strategy {
    fn from_table(mode: SimulationMode, model: OutcomeModel, table: &EstimatorTable<f64>, theoretical: f64) -> Self {
        let guesses = table.entries().iter().map(|e| Vec2::from_angle(e.theta_hat)).collect();
        Self {
            mode,
            model,
            guesses,
            theoretical,
        }
    }

    /// Total-spin measurement on two parallel-spin axes.
    pub fn parallel(sc: &ParallelScenario) -> Result<Self> {
        let table = estimator_table::<f64>(sc);
        let outcomes: Vec<HalfInt> = table.entries().iter().map(|e| e.outcome).collect();
        let model = OutcomeModel::parallel(sc, &outcomes)?;
        Ok(Self::from_table(
            SimulationMode::Parallel,
            model,
            &table,
            delta_parallel(sc),
        ))
    }

    /// Stern-Gerlach measurement of `N2` parallel spins along a classical axis.
    pub fn classical(j2: HalfInt) -> Result<Self> {
        if j2 < HalfInt::HALF {
            return Err(domain(format!("signal spin {j2} must be at least 1/2")));
        }
        let table = classical_estimator::<f64>(j2)?;
        let model = OutcomeModel::classical(j2)?;
        Ok(Self::from_table(
            SimulationMode::Classical,
            model,
            &table,
            delta_infinity(j2)?,
        ))
    }

    /// Two-spin `M = 0` axis with the optimal coherent POVM.
    pub fn two_spin(j1: HalfInt, x: f64) -> Result<Self> {
        let solution = delta_two_spin::<f64>(j1, x)?;
        let axis = GeneralAxis::two_spin_m0(x)?;
        let fam = XiFamily::two_spin_optimal(j1)?;
        let vectors = v_vectors_general(j1, &axis, &fam)?;
        let table = EstimatorTable::from_vectors(vectors.iter().map(|(_, j, v)| (*j, *v)));
        let model = OutcomeModel::general(j1, &axis, &fam)?;
        Ok(Self::from_table(SimulationMode::TwoSpin, model, &table, solution.delta))
    }

    pub fn mode(&self) -> SimulationMode {
        self.mode
    }

    pub fn theoretical_delta(&self) -> f64 {
        self.theoretical
    }

    pub fn outcome_count(&self) -> usize {
        self.guesses.len()
    }

    /// Exact outcome probabilities at `β`, checked and renormalised.
    pub fn outcome_probabilities(&self, beta: Angle<f64>) -> Result<Vec<f64>> {
        let h = 0.5 * beta.value();
        let mut scratch = self.model.scratch();
        let mut probs = vec![0.0; self.outcome_count()];
        self.model.probabilities(h.cos(), h.sin(), &mut scratch, &mut probs)?;
        Ok(probs)
    }

    /// Histogram of `n` outcome draws at fixed `β`.
    pub fn draw_outcomes_at(&self, beta: Angle<f64>, n: u64, seed: u64) -> Result<Vec<u64>> {
        let probs = self.outcome_probabilities(beta)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; probs.len()];
        for _ in 0..n {
            counts[inverse_cdf(&probs, rng.random())] += 1;
        }
        Ok(counts)
    }

    /// Runs `n` protocol rounds and compares with the closed form.
    pub fn run(&self, n: u64, seed: u64) -> Result<SimulationReport> {
        self.run_blocked(n, seed, BLOCK_SIZE)
    }

    /// [`Self::run`] with an explicit block size; the report does not depend
    /// on it.
    pub fn run_blocked(&self, n: u64, seed: u64, block_size: u64) -> Result<SimulationReport> {
        if n < MIN_SAMPLES {
            return Err(domain(format!("need at least {MIN_SAMPLES} samples, got {n}")));
        }
        if block_size == 0 {
            return Err(domain("block size must be positive"));
        }
        let blocks = n.div_ceil(block_size);
        let total = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let start = b * block_size;
                self.run_block(seed, start, block_size.min(n - start))
            })
            .try_reduce(FixedSums::default, |a, b| Ok(a + b))?;
        let count = n as f64;
        let mean = total.mean(count);
        let variance = (total.sum_sq() - count * mean * mean).max(0.0) / (count - 1.0);
        let std_error = (variance / count).sqrt();
        Ok(SimulationReport {
            mode: self.mode,
            n_samples: n,
            empirical_delta: mean,
            std_error,
            theoretical_delta: self.theoretical,
            z_score: (mean - self.theoretical) / std_error,
            seed,
        })
    }

    fn run_block(&self, seed: u64, start: u64, len: u64) -> Result<FixedSums> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_word_pos(u128::from(start) * WORDS_PER_SAMPLE);
        let mut scratch = self.model.scratch();
        let mut probs = vec![0.0; self.outcome_count()];
        let mut acc = FixedSums::default();
        for _ in 0..len {
            let cos_beta = 2.0 * rng.random::<f64>() - 1.0;
            let cos_half = (0.5 * (1.0 + cos_beta)).max(0.0).sqrt();
            let sin_half = (0.5 * (1.0 - cos_beta)).max(0.0).sqrt();
            let sin_beta = 2.0 * sin_half * cos_half;
            self.model.probabilities(cos_half, sin_half, &mut scratch, &mut probs)?;
            let guess = self.guesses[inverse_cdf(&probs, rng.random())];
            acc.push(cos_beta * guess.c + sin_beta * guess.s);
        }
        Ok(acc)
    }
}

/// Sample `k` owns words `[4k, 4k + 4)` of the seed's ChaCha8 stream: two
/// `u64` draws, one for `β` and one for the outcome.
const WORDS_PER_SAMPLE: u128 = 4;

fn inverse_cdf(probs: &[f64], u: f64) -> usize {
    let mut cum = 0.0;
    for (i, p) in probs.iter().enumerate() {
        cum += p;
        if u < cum {
            return i;
        }
    }
    // u landed in the rounding gap at the top; take the last outcome with
    // nonzero probability.
    probs.iter().rposition(|p| *p > 0.0).unwrap_or(probs.len() - 1)
}

/// Scores and squared scores in fixed point with 2^-52 resolution.
///
/// Integer addition is associative, so the totals are independent of how
/// samples are split into blocks and of the order blocks finish in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct FixedSums {
    sum: i128,
    sum_sq: i128,
}

const FIXED_SCALE: f64 = (1u64 << 52) as f64;

impl FixedSums {
    #[inline]
    fn push(&mut self, x: f64) {
        self.sum += (x * FIXED_SCALE).round() as i128;
        self.sum_sq += (x * x * FIXED_SCALE).round() as i128;
    }

    fn mean(&self, count: f64) -> f64 {
        self.sum as f64 / FIXED_SCALE / count
    }

    fn sum_sq(&self) -> f64 {
        self.sum_sq as f64 / FIXED_SCALE
    }
}

impl std::ops::Add for FixedSums {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            sum: self.sum + rhs.sum,
            sum_sq: self.sum_sq + rhs.sum_sq,
        }
    }
}

pub fn run_protocol_parallel(sc: &ParallelScenario, n: u64, seed: u64) -> Result<SimulationReport> {
    Strategy::parallel(sc)?.run(n, seed)
}

pub fn run_protocol_classical(j2: HalfInt, n: u64, seed: u64) -> Result<SimulationReport> {
    Strategy::classical(j2)?.run(n, seed)
}

pub fn run_protocol_two_spin(j1: HalfInt, x: f64, n: u64, seed: u64) -> Result<SimulationReport> {
    Strategy::two_spin(j1, x)?.run(n, seed)
}
