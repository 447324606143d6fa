use crate::error::{domain, Result};
use crate::scalar::Real;

/// `ln Γ(x)` for `x = twice_x / 2 > 0`, i.e. at integers and half-integers.
///
/// Built by the exact recursion `Γ(x + 1) = x Γ(x)` from `Γ(1) = 1` or
/// `Γ(1/2) = √π`. The running product is folded into the logarithm whenever it
/// grows past `√MAX`, so no intermediate overflows for any argument.
pub fn log_gamma_half<T: Real>(twice_x: i64) -> Result<T> {
    if twice_x <= 0 {
        return Err(domain(format!("log-gamma of nonpositive argument {twice_x}/2")));
    }
    Ok(log_gamma_half_unchecked(twice_x))
}

pub(crate) fn log_gamma_half_unchecked<T: Real>(twice_x: i64) -> T {
    debug_assert!(twice_x > 0);
    let half = T::lit(0.5);
    let (mut acc, mut factor) = if twice_x % 2 == 0 {
        (T::zero(), T::one())
    } else {
        (T::PI().sqrt().ln(), half)
    };
    let base = if twice_x % 2 == 0 { 2 } else { 1 };
    let limit = T::max_value().sqrt();
    let mut product = T::one();
    // Multiply x - 1, x - 2, … down to the base argument.
    let mut t = base;
    while t < twice_x {
        product = product * factor;
        if product > limit {
            acc = acc + product.ln();
            product = T::one();
        }
        factor = factor + T::one();
        t += 2;
    }
    acc + product.ln()
}

/// `ln n!` for `n ≥ 0`.
#[inline]
pub(crate) fn ln_factorial<T: Real>(n: i64) -> T {
    debug_assert!(n >= 0, "factorial of {n}");
    log_gamma_half_unchecked(2 * n + 2)
}
