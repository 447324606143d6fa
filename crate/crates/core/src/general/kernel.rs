use std::collections::HashMap;

use super::xi::{outcome_range, XiElement, XiFamily};
use super::GeneralAxis;
use crate::angular::{clebsch_gordan_unchecked, Angle, HalfInt, WignerTable};
use crate::error::{domain, Result};
use crate::merit::{cs_integral, Vec2};
use crate::scalar::{compensated_sum, Real};

/// Coupling coefficient `⟨j1 j1; J k | j, j1 + k⟩`.
///
/// The product of two of these for different `J` carries the relative sign
/// that `√(η^{J'} η^J)` drops; for two spins only `k = 0` mixes `J = 0` and
/// `J = 1`, and there the product is positive.
fn coupling<T: Real>(j1: HalfInt, big: HalfInt, k: HalfInt, j: HalfInt) -> T {
    clebsch_gordan_unchecked(j1, j1, big, k, j, j1 + k)
}

/// Projections `k` shared by `J'` and `J`.
fn shared_projections(a: HalfInt, b: HalfInt) -> impl Iterator<Item = HalfInt> {
    a.min(b).projections()
}

/// Per-outcome kernels `K_j^{J'J} = Σ_k ⟨…J'k|…⟩⟨…Jk|…⟩ (C, S)^{J'J}_{kM}`,
/// so that `V^M_{rj} = Σ_{J'J} a_{J'} a_J ξ^{J'J}_{rj} K_j^{J'J}`.
///
/// Depends only on the reference spin and the axis support, not on the
/// POVM, so one kernel serves any number of ξ families.
#[derive(Clone, Debug)]
pub struct MeritKernel<T> {
    j1: HalfInt,
    labels: Vec<HalfInt>,
    amps: Vec<T>,
    blocks: Vec<(HalfInt, Vec<Vec2<T>>)>,
}

impl<T: Real> MeritKernel<T> {
    pub fn new(j1: HalfInt, axis: &GeneralAxis<T>) -> Result<Self> {
        let labels = axis.labels();
        Self::for_outcomes(j1, axis, &outcome_range(j1, &labels))
    }

    pub fn for_outcomes(j1: HalfInt, axis: &GeneralAxis<T>, outcomes: &[HalfInt]) -> Result<Self> {
        j1.check_spin()?;
        let labels = axis.labels();
        let m = axis.magnetic();
        let n = labels.len();
        let mut integrals: HashMap<(HalfInt, HalfInt, HalfInt), Vec2<T>> = HashMap::new();
        let mut blocks = Vec::with_capacity(outcomes.len());
        for &j in outcomes {
            let mut block = vec![Vec2::zero(); n * n];
            for a in 0..n {
                for b in a..n {
                    let (ja, jb) = (labels[a], labels[b]);
                    let mut acc = Vec2::zero();
                    for k in shared_projections(ja, jb) {
                        let w = coupling::<T>(j1, ja, k, j) * coupling::<T>(j1, jb, k, j);
                        if w == T::zero() {
                            continue;
                        }
                        let key = (ja, jb, k);
                        let cs = match integrals.get(&key) {
                            Some(v) => *v,
                            None => {
                                let v = cs_integral::<T>(ja, jb, k, m)?;
                                integrals.insert(key, v);
                                v
                            }
                        };
                        acc += cs * w;
                    }
                    block[a * n + b] = acc;
                    block[b * n + a] = acc;
                }
            }
            blocks.push((j, block));
        }
        let amps = axis.amplitudes().iter().map(|(_, a)| *a).collect();
        Ok(Self {
            j1,
            labels,
            amps,
            blocks,
        })
    }

    pub fn reference_spin(&self) -> HalfInt {
        self.j1
    }

    /// `V^M_{rj}` for one ξ element.
    pub fn v_vector(&self, element: &XiElement<T>) -> Result<Vec2<T>> {
        let (_, block) = self
            .blocks
            .iter()
            .find(|(j, _)| *j == element.j)
            .ok_or_else(|| domain(format!("no kernel for outcome j = {}", element.j)))?;
        let n = self.labels.len();
        let mut c = Vec::with_capacity(n * n);
        let mut s = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let w = self.amps[a] * self.amps[b] * element.matrix[(a, b)];
                c.push(w * block[a * n + b].c);
                s.push(w * block[a * n + b].s);
            }
        }
        Ok(Vec2::new(compensated_sum(c), compensated_sum(s)))
    }
}

/// `V^M_{rj}` for outcome `(r, j)` of `fam`.
pub fn v_vector_general<T: Real>(
    j1: HalfInt,
    axis: &GeneralAxis<T>,
    fam: &XiFamily<T>,
    r: usize,
    j: HalfInt,
) -> Result<Vec2<T>> {
    fam.check_structure(j1, axis)?;
    let element = fam
        .element(r, j)
        .ok_or_else(|| domain(format!("family has no outcome (r = {r}, j = {j})")))?;
    MeritKernel::for_outcomes(j1, axis, &[j])?.v_vector(element)
}

/// `(r, j)` and `V^M_{rj}` for every outcome of `fam`, in family order.
pub fn v_vectors_general<T: Real>(
    j1: HalfInt,
    axis: &GeneralAxis<T>,
    fam: &XiFamily<T>,
) -> Result<Vec<(usize, HalfInt, Vec2<T>)>> {
    fam.check_structure(j1, axis)?;
    let kernel = MeritKernel::new(j1, axis)?;
    fam.elements()
        .iter()
        .map(|e| Ok((e.r, e.j, kernel.v_vector(e)?)))
        .collect()
}

/// `Δ̄^M = Σ_{r, j} |V^M_{rj}|`.
pub fn delta_general<T: Real>(j1: HalfInt, axis: &GeneralAxis<T>, fam: &XiFamily<T>) -> Result<T> {
    Ok(compensated_sum(
        v_vectors_general(j1, axis, fam)?.into_iter().map(|(_, _, v)| v.norm()),
    ))
}

/// `tr[O_{rj} ρ(β)]` before the angular average:
/// `Σ_{J'J} a_{J'} a_J ξ^{J'J}_{rj} Σ_k ⟨…J'k|…⟩⟨…Jk|…⟩ d^{(J')}_{kM}(β) d^{(J)}_{kM}(β)`.
pub fn outcome_prob_general<T: Real>(
    j1: HalfInt,
    axis: &GeneralAxis<T>,
    fam: &XiFamily<T>,
    r: usize,
    j: HalfInt,
    beta: Angle<T>,
) -> Result<T> {
    fam.check_structure(j1, axis)?;
    let element = fam
        .element(r, j)
        .ok_or_else(|| domain(format!("family has no outcome (r = {r}, j = {j})")))?;
    let m = axis.magnetic();
    let amps = axis.amplitudes();
    let mut terms = Vec::new();
    for (a, &(ja, amp_a)) in amps.iter().enumerate() {
        for (b, &(jb, amp_b)) in amps.iter().enumerate() {
            let w = amp_a * amp_b * element.matrix[(a, b)];
            if w == T::zero() {
                continue;
            }
            for k in shared_projections(ja, jb) {
                let cg = coupling::<T>(j1, ja, k, j) * coupling::<T>(j1, jb, k, j);
                if cg == T::zero() {
                    continue;
                }
                let da = WignerTable::new(ja, k, m)?.eval(beta);
                let db = WignerTable::new(jb, k, m)?.eval(beta);
                terms.push(w * cg * da * db);
            }
        }
    }
    Ok(compensated_sum(terms))
}
