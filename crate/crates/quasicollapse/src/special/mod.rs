//! Oscillator eigenfunctions and parabolic cylinder functions for complex
//! order and argument, plus the gamma/Kummer/erfc routines they are built on.
//!
//! Everything here works by power series and fixed coefficient sets inside an
//! explicit accuracy envelope. Out-of-envelope requests, and in-envelope
//! points where series cancellation has destroyed the result, fail with an
//! error instead of returning quietly degraded values.

mod erfc;
mod gamma;
mod hermite;
mod kummer;
mod pcf;

pub use erfc::erfc;
pub use gamma::{gamma, recip_gamma};
pub use hermite::{hermite_psi, OscillatorFunction, HERMITE_LEVEL_GUARD, HERMITE_POSITION_GUARD};
pub use pcf::{pcf_d, pcf_d_on_ray, weber_recurrence_residual, PcfRay, PcfValue};

use thiserror::Error;

/// Largest `|xi|` the Kummer-series route accepts.
pub const XI_ENVELOPE: f64 = 30.0;

/// Largest `|a|` the Kummer-series route accepts.
pub const ORDER_ENVELOPE: f64 = 50.0;

/// Estimated relative error beyond which a parabolic cylinder evaluation is
/// rejected rather than returned.
pub const PCF_ACCURACY_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("|xi| = {0:.3} exceeds the series envelope |xi| <= {XI_ENVELOPE}")]
    ArgumentEnvelope(f64),
    #[error("|a| = {0:.3} exceeds the series envelope |a| <= {ORDER_ENVELOPE}")]
    OrderEnvelope(f64),
    #[error("oscillator level {0} exceeds the recurrence guard n <= {HERMITE_LEVEL_GUARD}")]
    LevelTooLarge(usize),
    #[error("|x| = {0:.3} exceeds the oscillator underflow guard |x| < {HERMITE_POSITION_GUARD}")]
    PositionEnvelope(f64),
    #[error("confluent series did not converge within {0} terms")]
    SeriesDiverged(usize),
    #[error(
        "series cancellation at |xi| = {xi_abs:.3}: estimated relative error {est:.2e} \
         exceeds {limit:.0e}"
    )]
    AccuracyLoss { est: f64, limit: f64, xi_abs: f64 },
}
