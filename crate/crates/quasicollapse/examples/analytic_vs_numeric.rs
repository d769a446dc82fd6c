//! Put the closed-form quasienergies and the truncated-diagonalization ones
//! side by side, level by level, at a few drive strengths. Agreement to many
//! digits is the whole point: two completely independent routes, one through
//! parabolic cylinder asymptotics and one through a banded eigensolver.

use quasicollapse::analytic::{quasienergy_jc, Sign};
use quasicollapse::eig::converged_spectrum;
use quasicollapse::fock::build_h0;
use quasicollapse::model::ModelParams;

fn main() {
    let lambda = 1.0;

    for ratio in [0.2, 0.5, 0.8] {
        let params = ModelParams::new(lambda, ratio * lambda / 2.0, 0.0).unwrap();
        let (spectrum, cert) =
            converged_spectrum(|basis| build_h0(&params, basis), 9, 1e-8).unwrap();

        let mut positive: Vec<f64> = spectrum
            .eigenvalues
            .iter()
            .copied()
            .filter(|q| *q > 1e-8)
            .collect();
        positive.sort_by(|a, b| a.total_cmp(b));

        println!(
            "drive ratio {ratio}: converged at n_max = {} ({} doublings)",
            spectrum.n_max,
            cert.n_max_sequence.len() - 1
        );
        println!("{:>3} {:>20} {:>20} {:>12}", "n", "closed form", "numeric", "rel diff");
        for n in 0..4 {
            let exact = quasienergy_jc(n, Sign::Plus, &params).unwrap();
            let numeric = positive[n];
            println!(
                "{n:>3} {exact:>20.14} {numeric:>20.14} {:>12.2e}",
                (exact - numeric).abs() / exact
            );
        }
        println!();
    }
}
