use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use super::GeneralAxis;
use crate::angular::HalfInt;
use crate::error::{domain, Result};
use crate::scalar::Real;

/// Positivity and completeness must both hold to this tolerance.
pub const XI_TOLERANCE: f64 = 1e-10;

/// `ξ^{J'J}_{rj}` for one outcome `(r, j)`: rows and columns follow the
/// family's labels.
#[derive(Clone, Debug, PartialEq)]
pub struct XiElement<T: Real> {
    pub r: usize,
    pub j: HalfInt,
    pub matrix: DMatrix<T>,
}

/// Coefficients of a rotationally invariant POVM
/// `O_{rj} = Σ_{J'J} ξ^{J'J}_{rj} 1^{j1⊗J'} 1_j 1^{j1⊗J}` on a parallel-spin
/// reference and a general quantum axis.
#[derive(Clone, Debug, PartialEq)]
pub struct XiFamily<T: Real> {
    labels: Vec<HalfInt>,
    elements: Vec<XiElement<T>>,
}

/// Total spins `j` reachable by coupling `j1` with any of `labels`.
pub fn outcome_range(j1: HalfInt, labels: &[HalfInt]) -> Vec<HalfInt> {
    let Some(lo) = labels.iter().map(|&big| (j1 - big).abs()).min() else {
        return Vec::new();
    };
    let hi = labels.iter().map(|&big| j1 + big).max().expect("nonempty");
    HalfInt::range_inclusive(lo, hi).collect()
}

/// `|j1 - J| ≤ j ≤ j1 + J`.
#[inline]
pub fn couples(j1: HalfInt, big: HalfInt, j: HalfInt) -> bool {
    (j1 - big).abs() <= j && j <= j1 + big
}

impl<T: Real> XiFamily<T> {
    pub fn new(labels: Vec<HalfInt>, elements: Vec<XiElement<T>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(domain("ξ family needs at least one J label"));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.matrix.nrows() != n || e.matrix.ncols() != n {
                return Err(domain(format!(
                    "ξ element (r = {}, j = {}) is {}×{}, expected {n}×{n}",
                    e.r,
                    e.j,
                    e.matrix.nrows(),
                    e.matrix.ncols()
                )));
            }
            let asym = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| (e.matrix[(a, b)] - e.matrix[(b, a)]).abs())
                .fold(T::zero(), T::max);
            if asym > T::lit(XI_TOLERANCE) || e.matrix.iter().any(|v| !v.is_finite()) {
                return Err(domain(format!(
                    "ξ element (r = {}, j = {}) is not real symmetric",
                    e.r, e.j
                )));
            }
            if elements[..i].iter().any(|o| o.r == e.r && o.j == e.j) {
                return Err(domain(format!("duplicate ξ element (r = {}, j = {})", e.r, e.j)));
            }
        }
        Ok(Self { labels, elements })
    }

    /// A single outcome per `j`, `ξ^{J'J} = δ^{J'J}` on the `J` that couple to
    /// `j`. Ignores all coherence between different `J`.
    pub fn identity(j1: HalfInt, axis: &GeneralAxis<T>) -> Self {
        let labels = axis.labels();
        let elements = outcome_range(j1, &labels)
            .into_iter()
            .map(|j| XiElement {
                r: 0,
                j,
                matrix: DMatrix::from_fn(labels.len(), labels.len(), |a, b| {
                    if a == b && couples(j1, labels[a], j) {
                        T::one()
                    } else {
                        T::zero()
                    }
                }),
            })
            .collect();
        Self { labels, elements }
    }

    /// Optimal family for two spins with `M = 0` (labels `J = 0, 1`): at
    /// `j = j1` two outcomes with `ξ^{00} = ξ^{11} = 1/2`,
    /// `ξ^{01} = ξ^{10} = ∓1/2`; at `j = j1 ± 1` the projector on `J = 1`.
    pub fn two_spin_optimal(j1: HalfInt) -> Result<Self> {
        if j1 < HalfInt::HALF {
            return Err(domain(format!("reference spin {j1} must be at least 1/2")));
        }
        let half = T::lit(0.5);
        let labels = vec![HalfInt::ZERO, HalfInt::ONE];
        let mut elements = Vec::new();
        for j in outcome_range(j1, &labels) {
            if j == j1 {
                for r in 1..=2usize {
                    let off = if r % 2 == 0 { half } else { -half };
                    elements.push(XiElement {
                        r,
                        j,
                        matrix: DMatrix::from_row_slice(2, 2, &[half, off, off, half]),
                    });
                }
            } else {
                elements.push(XiElement {
                    r: 1,
                    j,
                    matrix: DMatrix::from_row_slice(2, 2, &[T::zero(), T::zero(), T::zero(), T::one()]),
                });
            }
        }
        Ok(Self { labels, elements })
    }

    pub fn labels(&self) -> &[HalfInt] {
        &self.labels
    }

    pub fn elements(&self) -> &[XiElement<T>] {
        &self.elements
    }

    pub fn element(&self, r: usize, j: HalfInt) -> Option<&XiElement<T>> {
        self.elements.iter().find(|e| e.r == r && e.j == j)
    }

    /// Checks that the family's labels and outcomes fit `(j1, axis)`.
    pub(crate) fn check_structure(&self, j1: HalfInt, axis: &GeneralAxis<T>) -> Result<()> {
        j1.check_spin()?;
        if self.labels != axis.labels() {
            return Err(domain(format!(
                "ξ labels {:?} do not match the axis labels {:?}",
                self.labels,
                axis.labels()
            )));
        }
        let outcomes = outcome_range(j1, &self.labels);
        for e in &self.elements {
            if !outcomes.contains(&e.j) {
                return Err(domain(format!("outcome j = {} cannot arise from j1 = {j1}", e.j)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XiDiagnostics {
    /// `max(0, -λ_min)` over all elements.
    pub max_psd_violation: f64,
    /// Largest entry of `Σ_r ξ_{rj} - P_j` over all `j`, with `P_j` the
    /// diagonal indicator of the `J` coupling to `j`.
    pub max_completeness_residual: f64,
    pub passed: bool,
}

/// Checks positivity of every `ξ_{rj}` and completeness
/// `Σ_r ξ^{J'J}_{rj} = δ^{J'J} [|j1 - J| ≤ j ≤ j1 + J]`.
pub fn validate_xi<T: Real>(fam: &XiFamily<T>, j1: HalfInt, axis: &GeneralAxis<T>) -> Result<XiDiagnostics> {
    fam.check_structure(j1, axis)?;
    let n = fam.labels.len();
    let mut psd = 0.0f64;
    for e in &fam.elements {
        let m = DMatrix::<f64>::from_fn(n, n, |a, b| e.matrix[(a, b)].as_f64());
        let lowest = m.symmetric_eigenvalues().min();
        psd = psd.max(-lowest);
    }
    let mut residual = 0.0f64;
    for j in outcome_range(j1, &fam.labels) {
        let mut sum = DMatrix::<f64>::zeros(n, n);
        for e in fam.elements.iter().filter(|e| e.j == j) {
            sum += DMatrix::<f64>::from_fn(n, n, |a, b| e.matrix[(a, b)].as_f64());
        }
        for a in 0..n {
            if couples(j1, fam.labels[a], j) {
                sum[(a, a)] -= 1.0;
            }
        }
        residual = residual.max(sum.amax());
    }
    Ok(XiDiagnostics {
        max_psd_violation: psd,
        max_completeness_residual: residual,
        passed: psd < XI_TOLERANCE && residual < XI_TOLERANCE,
    })
}

/// Draws a random valid family with `outcomes_per_j` outcomes for every `j`.
///
/// Each element starts as `GᵀG` for a Gaussian-ish factor `G` supported on the
/// `J` that couple to `j`; the elements for one `j` are then congruence-scaled
/// by `S^{-1/2}`, `S = Σ_r GᵀG`, which keeps them positive and makes them sum
/// to the projector exactly. Ill-conditioned draws are redrawn.
pub fn random_xi_family<R: Rng + ?Sized>(
    j1: HalfInt,
    axis: &GeneralAxis<f64>,
    outcomes_per_j: usize,
    rng: &mut R,
) -> Result<XiFamily<f64>> {
    if outcomes_per_j == 0 {
        return Err(domain("need at least one outcome per j"));
    }
    let labels = axis.labels();
    let mut elements = Vec::new();
    for j in outcome_range(j1, &labels) {
        let support: Vec<usize> = (0..labels.len()).filter(|&a| couples(j1, labels[a], j)).collect();
        let d = support.len();
        let (grams, scale) = loop {
            let grams: Vec<DMatrix<f64>> = (0..outcomes_per_j)
                .map(|_| {
                    let g = DMatrix::<f64>::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0));
                    g.transpose() * g
                })
                .collect();
            let total = grams.iter().fold(DMatrix::<f64>::zeros(d, d), |acc, g| acc + g);
            let eig = total.symmetric_eigen();
            if eig.eigenvalues.min() < 1e-6 {
                continue;
            }
            let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|v| v.sqrt().recip()));
            let scale = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
            break (grams, scale);
        };
        for (r, g) in grams.into_iter().enumerate() {
            let mut block = &scale * g * &scale;
            block = (&block + block.transpose()) * 0.5;
            let mut matrix = DMatrix::<f64>::zeros(labels.len(), labels.len());
            for (p, &a) in support.iter().enumerate() {
                for (q, &b) in support.iter().enumerate() {
                    matrix[(a, b)] = block[(p, q)];
                }
            }
            elements.push(XiElement { r, j, matrix });
        }
    }
    XiFamily::new(labels, elements)
}
