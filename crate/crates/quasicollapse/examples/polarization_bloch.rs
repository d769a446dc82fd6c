//! Spin polarization of the near-zero mode on both sides of the transition.
//!
//! Below critical the expectation of the lowering operator is purely
//! imaginary, i r, and the Bloch vector leans over in the y-z plane until it
//! hits the equator exactly at the critical drive. Above critical the state
//! pair acquires opposite real parts and |<sigma->| locks to 1. The numeric
//! column diagonalizes the truncated ladder and reads the same expectation
//! off the eigenvector nearest zero; above critical there is nothing
//! normalizable for it to find, hence the dashes.

use quasicollapse::analytic::polarization;
use quasicollapse::eig::eigenpair_nearest_zero;
use quasicollapse::fock::{build_h0, sigma_minus_expectation, BasisSpec};
use quasicollapse::model::{classify_regime, ModelParams, Regime};

fn main() {
    let lambda = 1.0;
    let basis = BasisSpec::new(200).unwrap();

    println!(
        "{:>6} {:>22} {:>22}  bloch vector",
        "ratio", "analytic <sigma->", "numeric <sigma->"
    );

    for r in [0.1, 0.3, 0.5, 0.7, 0.9, 1.2, 1.6, 2.0] {
        let params = ModelParams::new(lambda, r * lambda / 2.0, 0.0).unwrap();
        let pol = polarization(&params).unwrap();
        let s = pol.sigma_minus_expectation;

        let numeric = match classify_regime(&params) {
            Regime::Discrete => {
                let op = build_h0(&params, basis);
                let (_, vector) = eigenpair_nearest_zero(&op).unwrap();
                let z = sigma_minus_expectation(&vector);
                format!("{:+.6} {:+.6}i", z.re, z.im)
            }
            _ => "-".into(),
        };

        let (bx, by, bz) = pol.bloch_vector;
        println!(
            "{:>6.2} {:>22} {:>22}  ({bx:+.4}, {by:+.4}, {bz:+.4})",
            r,
            format!("{:+.6} {:+.6}i", s.re, s.im),
            numeric
        );
    }
}
