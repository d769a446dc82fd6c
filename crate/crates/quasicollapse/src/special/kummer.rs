//! Confluent hypergeometric function M(a, b, z) by direct power series.

use super::SpecialError;
use num_complex::Complex64;

const MAX_TERMS: usize = 2000;

/// Result of a Kummer-series summation, carrying enough bookkeeping for the
/// caller to judge how much cancellation the sum suffered.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KummerSum {
    pub value: Complex64,
    /// Largest term modulus encountered; the roundoff floor of the sum is
    /// proportional to this, not to the (possibly much smaller) value.
    pub max_term: f64,
    pub terms: usize,
}

impl KummerSum {
    /// Absolute roundoff-plus-truncation estimate for the summed value.
    pub fn abs_error(&self) -> f64 {
        f64::EPSILON * self.max_term * (self.terms as f64).sqrt()
    }
}

/// M(a, b, z) = sum_k (a)_k z^k / ((b)_k k!), summed until two consecutive
/// terms drop below 1e-13 of the running sum. `b` must not be a non-positive
/// integer (the callers here use b = 1/2 and b = 3/2 only).
pub(crate) fn kummer_m(
    a: Complex64,
    b: Complex64,
    z: Complex64,
) -> Result<KummerSum, SpecialError> {
    assert!(
        !(b.im == 0.0 && b.re <= 0.0 && b.re == b.re.floor()),
        "kummer_m pole at b = {b}"
    );
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut max_term = 1.0f64;
    let mut small_streak = 0usize;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        max_term = max_term.max(term.norm());
        if term == Complex64::new(0.0, 0.0) {
            // terminating series (polynomial case), done exactly
            return Ok(KummerSum { value: sum, max_term, terms: k + 1 });
        }
        if term.norm() <= 1e-13 * sum.norm() {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(KummerSum { value: sum, max_term, terms: k + 1 });
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecialError::SeriesDiverged(MAX_TERMS))
}
