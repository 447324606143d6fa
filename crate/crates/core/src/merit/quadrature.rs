use crate::angular::{HalfInt, WignerTable};
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Real};

use super::Vec2;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// `n`-point rule. Nodes are the roots of `P_n`, found by Newton
    /// iteration from the Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = T::lit(n as f64);
        let two = T::lit(2.0);
        for i in 0..n.div_ceil(2) {
            let mut x = (T::PI() * (T::lit(i as f64) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::epsilon() * T::lit(4.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = two / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f(x) dx`.
    pub fn integrate(&self, a: T, b: T, mut f: impl FnMut(T) -> T) -> T {
        let half = (b - a) * T::lit(0.5);
        let mid = (b + a) * T::lit(0.5);
        half * compensated_sum(
            self.nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * f(mid + half * x)),
        )
    }

    /// `∫_a^b f(x) dx` for a vector-valued integrand.
    pub fn integrate_vec2(&self, a: T, b: T, mut f: impl FnMut(T) -> Vec2<T>) -> Vec2<T> {
        let half = (b - a) * T::lit(0.5);
        let mid = (b + a) * T::lit(0.5);
        let values: Vec<(T, Vec2<T>)> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| (w, f(mid + half * x)))
            .collect();
        Vec2::new(
            half * compensated_sum(values.iter().map(|(w, v)| *w * v.c)),
            half * compensated_sum(values.iter().map(|(w, v)| *w * v.s)),
        )
    }
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::lit(k as f64);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::lit(n as f64);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Node cap for [`cs_integral`]. Reaching it indicates a bug rather than a
/// hard integrand: the integrands are trigonometric polynomials.
pub const MAX_NODES: usize = 1 << 14;

/// `(C, S)^{J'J}_{kM} = ½ ∫_0^π sin β (cos β, sin β) d^{(J')}_{kM}(β) d^{(J)}_{kM}(β) dβ`.
///
/// Gauss–Legendre in `β`, doubling the node count from
/// `max(16, 2(2J + 2J'))` until successive estimates agree to `1e-12`.
///
/// With this measure the diagonal stretched case satisfies
/// `(2J + 1)(J + 1) C^{JJ}_{kJ} = c^J_k` and `(2J + 1)(J + 1) S^{JJ}_{kJ} = s^J_k`.
pub fn cs_integral<T: Real>(jp: HalfInt, j: HalfInt, k: HalfInt, m: HalfInt) -> Result<Vec2<T>> {
    let integrand = CsIntegrand::new(jp, j, k, m)?;
    let tol = T::convergence_tol();
    let mut n = 16.max(2 * (jp.twice() + j.twice()) as usize);
    let mut before = integrand.estimate(n);
    let mut previous = before;
    while n < MAX_NODES {
        n *= 2;
        let current = integrand.estimate(n);
        if current.max_abs_diff(previous) < tol {
            return Ok(current);
        }
        before = previous;
        previous = current;
    }
    Err(Error::NoConvergence {
        nodes: n,
        previous: (before.c.as_f64(), before.s.as_f64()),
        last: (previous.c.as_f64(), previous.s.as_f64()),
    })
}

/// [`cs_integral`] with a fixed `nodes`-point rule and no convergence test.
pub fn cs_integral_fixed<T: Real>(jp: HalfInt, j: HalfInt, k: HalfInt, m: HalfInt, nodes: usize) -> Result<Vec2<T>> {
    Ok(CsIntegrand::new(jp, j, k, m)?.estimate(nodes))
}

struct CsIntegrand<T> {
    left: WignerTable<T>,
    right: WignerTable<T>,
}

impl<T: Real> CsIntegrand<T> {
    fn new(jp: HalfInt, j: HalfInt, k: HalfInt, m: HalfInt) -> Result<Self> {
        Ok(Self {
            left: WignerTable::new(jp, k, m)?,
            right: WignerTable::new(j, k, m)?,
        })
    }

    fn estimate(&self, nodes: usize) -> Vec2<T> {
        GaussLegendre::new(nodes).integrate_vec2(T::zero(), T::PI(), |beta| {
            let (sin, cos) = beta.sin_cos();
            let (sh, ch) = (beta * T::lit(0.5)).sin_cos();
            let weight = T::lit(0.5) * sin * self.left.eval_half(ch, sh) * self.right.eval_half(ch, sh);
            Vec2::new(cos * weight, sin * weight)
        })
    }
}
