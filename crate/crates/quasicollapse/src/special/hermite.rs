//! Harmonic-oscillator eigenfunctions psi_n(x) with unit L2 norm.

use super::SpecialError;
use std::f64::consts::LN_2;

/// Levels above this would need more recurrence steps than the scaled
/// representation has been validated for.
pub const HERMITE_LEVEL_GUARD: usize = 5000;

/// Positions at or beyond this make even high-n values underflow.
pub const HERMITE_POSITION_GUARD: f64 = 40.0;

// Mantissas are renormalized into [2^-100, 2^100] as the recurrence runs.
const RESCALE_EXP: i32 = 100;
const RESCALE_UP: f64 = 1.2676506002282294e30; // 2^100
const RESCALE_DOWN: f64 = 7.888609052210118e-31; // 2^-100

/// psi_n(x) = (2^n n! sqrt(pi))^(-1/2) H_n(x) e^(-x^2/2), evaluated by the
/// three-term recurrence on the normalized functions themselves,
///
/// ```text
/// psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}
/// ```
///
/// carried on (mantissa, power-of-two) pairs. The Gaussian start is folded
/// into the exponent, so deep tunneling tails at large n survive even where
/// e^(-x^2/2) alone would underflow.
pub fn hermite_psi(n: usize, x: f64) -> Result<f64, SpecialError> {
    if n > HERMITE_LEVEL_GUARD {
        return Err(SpecialError::LevelTooLarge(n));
    }
    if !(x.abs() < HERMITE_POSITION_GUARD) {
        return Err(SpecialError::PositionEnvelope(x.abs()));
    }

    // e^(-x^2/2) = 2^g with g split into integer exponent + mantissa factor
    let g = -x * x / (2.0 * LN_2);
    let g_int = g.floor();
    let mut exp2 = g_int as i64;
    let mut prev = 0.0f64;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (g - g_int).exp2();

    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > RESCALE_UP {
            cur *= RESCALE_DOWN;
            prev *= RESCALE_DOWN;
            exp2 += RESCALE_EXP as i64;
        } else if m > 0.0 && m < RESCALE_DOWN {
            cur *= RESCALE_UP;
            prev *= RESCALE_UP;
            exp2 -= RESCALE_EXP as i64;
        }
    }

    // |psi| <= 1 everywhere, so a large negative exponent means a true
    // underflow and zero is the honest answer
    if exp2 < -1200 {
        return Ok(0.0);
    }
    Ok(cur * (exp2 as f64).exp2())
}

/// A single oscillator level as an evaluatable function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OscillatorFunction {
    n: usize,
}

impl OscillatorFunction {
    pub fn new(n: usize) -> Result<Self, SpecialError> {
        if n > HERMITE_LEVEL_GUARD {
            return Err(SpecialError::LevelTooLarge(n));
        }
        Ok(Self { n })
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: f64) -> Result<f64, SpecialError> {
        hermite_psi(self.n, x)
    }
}
