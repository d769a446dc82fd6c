//! Quasienergy spectra of the driven Jaynes-Cummings ladder and its
//! counter-rotating extension, together with the closed-form solutions of the
//! equivalent crossed-field Dirac problem.
//!
//! The library computes the same physics along two independent routes:
//!
//! * numerically, by building the Hamiltonian on a truncated Fock basis
//!   ([`fock`]) and diagonalizing it with the in-house symmetric eigensolver
//!   ([`eig`]), with explicit truncation-convergence certificates;
//! * analytically, by mapping the drive/coupling pair onto crossed electric
//!   and magnetic fields ([`model`]) and evaluating boosted Landau levels,
//!   parabolic cylinder wavefunctions, and zero-mode polarizations
//!   ([`analytic`], [`special`]).
//!
//! Both routes see the same spectral collapse: the discrete quasienergy
//! ladder `+-lambda (1 - r^2)^(3/4) sqrt(n+1)` closes as the drive ratio `r`
//! approaches one and the spectrum turns continuous beyond it.
//!
//! The `examples/` directory is the front door: each example is a runnable
//! experiment (spectrum scans, collapse-exponent fits, squeeze-identity
//! checks, zero-mode polarization, Landau-level cross-checks). The same
//! experiments are reachable from the `quasicollapse` binary for scripted
//! runs with config files and CSV/JSON output.

pub mod analytic;
pub mod eig;
pub mod experiments;
pub mod fock;
pub mod model;
pub mod special;

pub use model::{ModelParams, Regime};
