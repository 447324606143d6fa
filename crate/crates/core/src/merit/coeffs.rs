use crate::angular::{ln_factorial, log_gamma_half_unchecked, HalfInt};
use crate::error::{domain, Result};
use crate::scalar::Real;

/// `c^{j2}_m = m`.
pub fn c_coeff<T: Real>(j2: HalfInt, m: HalfInt) -> Result<T> {
    j2.check_projection(m)?;
    Ok(m.value())
}

/// `s^{j2}_m = Γ(3/2 + j2 + m) Γ(3/2 + j2 - m) / (Γ(1 + j2 + m) Γ(1 + j2 - m))`.
pub fn s_coeff<T: Real>(j2: HalfInt, m: HalfInt) -> Result<T> {
    j2.check_projection(m)?;
    Ok(s_coeff_unchecked(j2, m))
}

pub(crate) fn s_coeff_unchecked<T: Real>(j2: HalfInt, m: HalfInt) -> T {
    let up = i64::from((j2 + m).twice());
    let down = i64::from((j2 - m).twice());
    (log_gamma_half_unchecked::<T>(up + 3) + log_gamma_half_unchecked(down + 3)
        - log_gamma_half_unchecked(up + 2)
        - log_gamma_half_unchecked(down + 2))
    .exp()
}

/// `η^{j2}_{j m} = ⟨j1 j1; j2 m-j1 | j m⟩²` from its closed factorial ratio.
///
/// Labels with inconsistent parity are errors; anything that merely falls
/// outside the selection rules (triangle, `|m| ≤ j`, `|m - j1| ≤ j2`) gives 0,
/// so callers can sum over formal ranges.
pub fn eta<T: Real>(j1: HalfInt, j2: HalfInt, j: HalfInt, m: HalfInt) -> Result<T> {
    j1.check_spin()?;
    j2.check_spin()?;
    j.check_spin()?;
    if !(j1 + j2).same_parity(j) {
        return Err(domain(format!("j1 + j2 + j is not an integer ({j1}, {j2}, {j})")));
    }
    if !j.same_parity(m) {
        return Err(domain(format!("projection {m} has the wrong parity for j = {j}")));
    }
    Ok(eta_unchecked(j1, j2, j, m))
}

pub(crate) fn eta_unchecked<T: Real>(j1: HalfInt, j2: HalfInt, j: HalfInt, m: HalfInt) -> T {
    if j > j1 + j2 || j < (j1 - j2).abs() || m.abs() > j || (m - j1).abs() > j2 {
        return T::zero();
    }
    let n = |h: HalfInt| i64::from(h.twice() / 2);
    let ln = T::lit(f64::from(j.twice() + 1)).ln() + ln_factorial::<T>(n(j1 + j1)) + ln_factorial(n(j2 - j1 + j))
        - ln_factorial(n(j1 - j2 + j))
        - ln_factorial(n(j1 + j2 - j))
        - ln_factorial(n(j1 + j2 + j) + 1)
        + ln_factorial(n(j2 + j1 - m))
        + ln_factorial(n(j + m))
        - ln_factorial(n(j2 - j1 + m))
        - ln_factorial(n(j - m));
    ln.exp()
}
