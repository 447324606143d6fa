use super::gamma::ln_factorial;
use super::{Angle, HalfInt};
use crate::error::Result;
use crate::scalar::{sorted_sum, Real};

/// Reduced rotation matrix element `d^{(j)}_{m m'}(β) = ⟨j m| e^{-iβJ_y} |j m'⟩`.
pub fn wigner_d<T: Real>(j: HalfInt, m: HalfInt, mp: HalfInt, beta: Angle<T>) -> Result<T> {
    Ok(WignerTable::new(j, m, mp)?.eval(beta))
}

#[derive(Clone, Copy, Debug)]
struct Term<T> {
    /// Signed coefficient; `ln_coef` is the log of its magnitude.
    coef: T,
    ln_coef: T,
    negative: bool,
    pow_cos: i32,
    pow_sin: i32,
}

/// The Wigner sum for fixed `(j, m, m')`, precomputed as a polynomial in
/// `cos(β/2)` and `sin(β/2)`.
///
/// Building the table does all the factorial work once; evaluating it at a
/// new angle costs a handful of multiplications per term. Quadrature and
/// sampling loops hold on to tables instead of calling [`wigner_d`] again.
#[derive(Clone, Debug)]
pub struct WignerTable<T> {
    j: HalfInt,
    m: HalfInt,
    mp: HalfInt,
    terms: Vec<Term<T>>,
    /// All coefficients are representable; otherwise terms are combined in
    /// log space.
    direct: bool,
}

impl<T: Real> WignerTable<T> {
    pub fn new(j: HalfInt, m: HalfInt, mp: HalfInt) -> Result<Self> {
        j.check_projection(m)?;
        j.check_projection(mp)?;
        let n = |h: HalfInt| i64::from(h.twice() / 2);
        let half = T::lit(0.5);
        let ln_norm = half
            * (ln_factorial::<T>(n(j + m))
                + ln_factorial(n(j - m))
                + ln_factorial(n(j + mp))
                + ln_factorial(n(j - mp)));
        let s_min = 0.max(n(mp - m));
        let s_max = n(j + mp).min(n(j - m));
        let mut direct = true;
        let terms = (s_min..=s_max)
            .map(|s| {
                let ln_coef = ln_norm
                    - ln_factorial::<T>(n(j + mp) - s)
                    - ln_factorial(s)
                    - ln_factorial(n(m - mp) + s)
                    - ln_factorial(n(j - m) - s);
                let negative = (n(m - mp) + s).rem_euclid(2) == 1;
                let mag = ln_coef.exp();
                if !mag.is_normal() {
                    direct = false;
                }
                let pow_sin = (n(m - mp) + 2 * s) as i32;
                Term {
                    coef: if negative { -mag } else { mag },
                    ln_coef,
                    negative,
                    pow_cos: j.twice() - pow_sin,
                    pow_sin,
                }
            })
            .collect();
        Ok(Self {
            j,
            m,
            mp,
            terms,
            direct,
        })
    }

    pub fn labels(&self) -> (HalfInt, HalfInt, HalfInt) {
        (self.j, self.m, self.mp)
    }

    #[inline]
    pub fn eval(&self, beta: Angle<T>) -> T {
        let h = beta.value() * T::lit(0.5);
        self.eval_half(h.cos(), h.sin())
    }

    /// Evaluates at the angle whose half has cosine `cos_half` and sine
    /// `sin_half`.
    pub fn eval_half(&self, cos_half: T, sin_half: T) -> T {
        let value = |t: &Term<T>| -> T {
            if self.direct {
                t.coef * cos_half.powi(t.pow_cos) * sin_half.powi(t.pow_sin)
            } else {
                let mut ln = t.ln_coef;
                for (base, p) in [(cos_half, t.pow_cos), (sin_half, t.pow_sin)] {
                    if p > 0 {
                        if base == T::zero() {
                            return T::zero();
                        }
                        ln = ln + T::lit(f64::from(p)) * base.abs().ln();
                    }
                }
                let mag = ln.exp();
                let flip = t.negative
                    ^ (cos_half < T::zero() && t.pow_cos % 2 == 1)
                    ^ (sin_half < T::zero() && t.pow_sin % 2 == 1);
                if flip {
                    -mag
                } else {
                    mag
                }
            }
        };
        match self.terms.len() {
            0 => T::zero(),
            1 => value(&self.terms[0]),
            len if len <= 16 => {
                let mut buf = [T::zero(); 16];
                for (slot, t) in buf.iter_mut().zip(&self.terms) {
                    *slot = value(t);
                }
                sorted_sum(&mut buf[..len])
            }
            _ => {
                let mut buf: Vec<T> = self.terms.iter().map(value).collect();
                sorted_sum(&mut buf)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn identity_at_zero_angle() {
        let zero = Angle::<f64>::zero();
        for tj in 0..9 {
            let j = h(tj);
            for m in j.projections() {
                for mp in j.projections() {
                    let d = wigner_d(j, m, mp, zero).unwrap();
                    let expected = if m == mp { 1.0 } else { 0.0 };
                    assert_relative_eq!(d, expected, epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn spin_half_and_spin_one_closed_forms() {
        for &b in &[0.0, 0.3, 1.1, 2.0, std::f64::consts::PI] {
            let beta = Angle::new(b).unwrap();
            assert_relative_eq!(
                wigner_d(h(1), h(1), h(1), beta).unwrap(),
                (b / 2.0).cos(),
                epsilon = 1e-15
            );
            assert_relative_eq!(
                wigner_d(h(1), h(1), h(-1), beta).unwrap(),
                -(b / 2.0).sin(),
                epsilon = 1e-15
            );
            assert_relative_eq!(wigner_d(h(2), h(0), h(0), beta).unwrap(), b.cos(), epsilon = 1e-15);
            assert_relative_eq!(
                wigner_d(h(2), h(2), h(0), beta).unwrap(),
                -b.sin() / 2f64.sqrt(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn malformed_labels_are_errors() {
        let beta = Angle::new(0.5f64).unwrap();
        assert!(wigner_d(h(2), h(1), h(0), beta).is_err());
        assert!(wigner_d(h(2), h(4), h(0), beta).is_err());
    }

    #[test]
    fn log_space_path_matches_direct_path() {
        // Large j forces log-space evaluation for some coefficients; compare
        // a single-term element against its closed form
        // d^j_{j,j}(β) = cos(β/2)^{2j}.
        let j = h(1200);
        let table = WignerTable::<f64>::new(j, j, j).unwrap();
        let b = 0.01f64;
        assert_relative_eq!(
            table.eval(Angle::new(b).unwrap()),
            (b / 2.0).cos().powi(1200),
            max_relative = 1e-12
        );
        // Stretched row: d^j_{m,j}(β) = √binom(2j, j-m) cos^{j+m} sin^{j-m}.
        let j = h(2200);
        let m = h(0);
        let t = WignerTable::<f64>::new(j, m, j).unwrap();
        assert!(!t.direct);
        let beta = Angle::new(1.3f64).unwrap();
        let ln_binom = ln_factorial::<f64>(2200) - 2.0 * ln_factorial::<f64>(1100);
        let expected = (0.5 * ln_binom + 1100.0 * (0.65f64.cos().ln() + 0.65f64.sin().ln())).exp();
        let sign = if 1100 % 2 == 0 { 1.0 } else { -1.0 };
        assert_relative_eq!(t.eval(beta), sign * expected, max_relative = 1e-11);
    }
}
