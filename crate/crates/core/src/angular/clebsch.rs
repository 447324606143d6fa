use super::gamma::ln_factorial;
use super::HalfInt;
use crate::error::{domain, Result};
use crate::scalar::{sorted_sum, Real};

/// Clebsch–Gordan coefficient `⟨j1 m1; j2 m2 | j m⟩`, Condon–Shortley phase.
///
/// Malformed labels (negative spins, projections of the wrong parity, or
/// `j1 + j2 + j` not an integer) are errors. Selection-rule violations
/// (`m ≠ m1 + m2`, `|m| > j`, `j` outside the triangle) give 0.
pub fn clebsch_gordan<T: Real>(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<T> {
    for (spin, proj) in [(j1, m1), (j2, m2), (j, m)] {
        spin.check_spin()?;
        if !spin.same_parity(proj) {
            return Err(domain(format!("projection {proj} has the wrong parity for j = {spin}")));
        }
    }
    if !(j1 + j2).same_parity(j) {
        return Err(domain(format!("j1 + j2 + j is not an integer ({j1}, {j2}, {j})")));
    }
    Ok(clebsch_gordan_unchecked(j1, m1, j2, m2, j, m))
}

/// Racah's closed sum, evaluated in log space. Assumes parities are consistent.
pub(crate) fn clebsch_gordan_unchecked<T: Real>(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> T {
    if m1 + m2 != m || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
        return T::zero();
    }
    if j > j1 + j2 || j < (j1 - j2).abs() {
        return T::zero();
    }
    // Every combination below is an integer once parities are consistent.
    let n = |h: HalfInt| i64::from(h.twice() / 2);
    let (a, b, c) = (n(j1 + j2 - j), n(j1 - j2 + j), n(j - j1 + j2));
    let ln_tri = ln_factorial::<T>(a) + ln_factorial(b) + ln_factorial(c) - ln_factorial(n(j1 + j2 + j) + 1);
    let ln_proj = ln_factorial::<T>(n(j1 + m1))
        + ln_factorial(n(j1 - m1))
        + ln_factorial(n(j2 + m2))
        + ln_factorial(n(j2 - m2))
        + ln_factorial(n(j + m))
        + ln_factorial(n(j - m));
    let prefactor = T::lit(f64::from(j.twice() + 1)).ln() + ln_tri;
    let half = T::lit(0.5);

    let k_min = 0.max(n(j2 - j - m1)).max(n(j1 - j + m2));
    let k_max = a.min(n(j1 - m1)).min(n(j2 + m2));
    let mut terms: Vec<T> = (k_min..=k_max)
        .map(|k| {
            let ln_den = ln_factorial::<T>(k)
                + ln_factorial(a - k)
                + ln_factorial(n(j1 - m1) - k)
                + ln_factorial(n(j2 + m2) - k)
                + ln_factorial(n(j - j2 + m1) + k)
                + ln_factorial(n(j - j1 - m2) + k);
            let mag = (half * (prefactor + ln_proj) - ln_den).exp();
            if k % 2 == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    sorted_sum(&mut terms)
}
