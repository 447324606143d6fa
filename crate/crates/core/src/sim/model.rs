use std::collections::HashMap;

use super::{NEGATIVITY_TOLERANCE, NORMALISATION_TOLERANCE};
use crate::angular::{clebsch_gordan_unchecked, HalfInt, WignerTable};
use crate::error::{Error, Result};
use crate::general::{GeneralAxis, XiFamily};
use crate::merit::eta_unchecked;
use crate::parallel::ParallelScenario;

#[derive(Clone, Copy, Debug)]
struct Term {
    coef: f64,
    a: usize,
    b: usize,
}

/// Outcome probabilities compiled to `p_i(β) = Σ coef · d_a(β) d_b(β)` over a
/// shared set of Wigner tables, so a sample costs one evaluation per table.
#[derive(Clone, Debug)]
pub struct OutcomeModel {
    tables: Vec<WignerTable<f64>>,
    outcomes: Vec<Vec<Term>>,
}

#[derive(Default)]
struct Builder {
    tables: Vec<WignerTable<f64>>,
    index: HashMap<(HalfInt, HalfInt, HalfInt), usize>,
}

impl Builder {
    fn table(&mut self, j: HalfInt, m: HalfInt, mp: HalfInt) -> Result<usize> {
        if let Some(&i) = self.index.get(&(j, m, mp)) {
            return Ok(i);
        }
        let i = self.tables.len();
        self.tables.push(WignerTable::new(j, m, mp)?);
        self.index.insert((j, m, mp), i);
        Ok(i)
    }

    fn finish(self, outcomes: Vec<Vec<Term>>) -> OutcomeModel {
        OutcomeModel {
            tables: self.tables,
            outcomes,
        }
    }
}

impl OutcomeModel {
    /// `p_j = Σ_μ η_{j, j1+μ} [d^{(j2)}_{μ j2}]²`, one entry per element of
    /// `outcomes`.
    pub fn parallel(sc: &ParallelScenario, outcomes: &[HalfInt]) -> Result<Self> {
        let (j1, j2) = (sc.j1(), sc.j2());
        let mut builder = Builder::default();
        let mut compiled = Vec::with_capacity(outcomes.len());
        for &j in outcomes {
            let mut terms = Vec::new();
            for mu in j2.projections() {
                let coef = eta_unchecked::<f64>(j1, j2, j, j1 + mu);
                if coef != 0.0 {
                    let t = builder.table(j2, mu, j2)?;
                    terms.push(Term { coef, a: t, b: t });
                }
            }
            compiled.push(terms);
        }
        Ok(builder.finish(compiled))
    }

    /// `p_m = [d^{(j2)}_{m j2}]²` for `m = -j2, …, j2`.
    pub fn classical(j2: HalfInt) -> Result<Self> {
        j2.check_spin()?;
        let mut builder = Builder::default();
        let mut compiled = Vec::new();
        for m in j2.projections() {
            let t = builder.table(j2, m, j2)?;
            compiled.push(vec![Term { coef: 1.0, a: t, b: t }]);
        }
        Ok(builder.finish(compiled))
    }

    /// One entry per element of `fam`, in family order.
    pub fn general(j1: HalfInt, axis: &GeneralAxis<f64>, fam: &XiFamily<f64>) -> Result<Self> {
        let m = axis.magnetic();
        let amps = axis.amplitudes();
        let mut builder = Builder::default();
        let mut compiled = Vec::with_capacity(fam.elements().len());
        for element in fam.elements() {
            let j = element.j;
            let mut terms = Vec::new();
            for (a, &(ja, amp_a)) in amps.iter().enumerate() {
                for (b, &(jb, amp_b)) in amps.iter().enumerate() {
                    let w = amp_a * amp_b * element.matrix[(a, b)];
                    if w == 0.0 {
                        continue;
                    }
                    for k in ja.min(jb).projections() {
                        let cg = clebsch_gordan_unchecked::<f64>(j1, j1, ja, k, j, j1 + k)
                            * clebsch_gordan_unchecked::<f64>(j1, j1, jb, k, j, j1 + k);
                        if cg == 0.0 {
                            continue;
                        }
                        let ta = builder.table(ja, k, m)?;
                        let tb = builder.table(jb, k, m)?;
                        terms.push(Term {
                            coef: w * cg,
                            a: ta,
                            b: tb,
                        });
                    }
                }
            }
            compiled.push(terms);
        }
        Ok(builder.finish(compiled))
    }

    pub fn outcome_count(&self) -> usize {
        self.outcomes.len()
    }

    /// Buffer for [`Self::probabilities`].
    pub fn scratch(&self) -> Vec<f64> {
        vec![0.0; self.tables.len()]
    }

    /// Writes the probabilities at the angle with the given half-angle
    /// cosine and sine into `out`, renormalised to sum to one.
    ///
    /// Fails if any probability is below `NEGATIVITY_TOLERANCE` or the raw
    /// sum is further than `NORMALISATION_TOLERANCE` from one.
    pub fn probabilities(&self, cos_half: f64, sin_half: f64, scratch: &mut [f64], out: &mut [f64]) -> Result<()> {
        for (d, t) in scratch.iter_mut().zip(&self.tables) {
            *d = t.eval_half(cos_half, sin_half);
        }
        let mut total = 0.0;
        for (p, terms) in out.iter_mut().zip(&self.outcomes) {
            let raw: f64 = terms.iter().map(|t| t.coef * scratch[t.a] * scratch[t.b]).sum();
            if raw < NEGATIVITY_TOLERANCE {
                return Err(Error::Numerical(format!(
                    "negative outcome probability {raw:e} at cos(β/2) = {cos_half}"
                )));
            }
            *p = raw.max(0.0);
            total += *p;
        }
        if (total - 1.0).abs() > NORMALISATION_TOLERANCE {
            return Err(Error::Numerical(format!(
                "outcome probabilities sum to {total} at cos(β/2) = {cos_half}"
            )));
        }
        for p in out.iter_mut() {
            *p /= total;
        }
        Ok(())
    }
}
