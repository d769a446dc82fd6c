//! Scan the drive from zero toward the critical point and watch the
//! quasienergy ladder close. Every point reruns the truncation ladder, so the
//! printed n_max column shows how the Fock cutoff needed for convergence
//! blows up as the gap shrinks.

use quasicollapse::eig::converged_spectrum;
use quasicollapse::fock::build_h0;
use quasicollapse::model::{critical_drive, ModelParams};

fn main() {
    let lambda = 1.0;
    let levels = 5;
    let tol = 1e-8;

    let eps_c = critical_drive(&ModelParams::new(lambda, 0.0, 0.0).unwrap());
    println!("# lambda = {lambda}, critical drive = {eps_c}");
    println!(
        "{:>8} {:>7} {:>6} {:>10}  levels nearest zero",
        "epsilon", "ratio", "n_max", "converged"
    );

    for i in 0..=12 {
        let epsilon = eps_c * i as f64 / 12.0;
        let params = ModelParams::new(lambda, epsilon, 0.0).unwrap();
        let (spectrum, cert) =
            converged_spectrum(|basis| build_h0(&params, basis), levels, tol).unwrap();

        let shown: Vec<String> = quasienergies_nearest_zero(&spectrum.eigenvalues, levels)
            .iter()
            .map(|q| format!("{q:+.6}"))
            .collect();
        println!(
            "{:>8.4} {:>7.3} {:>6} {:>10}  [{}]",
            epsilon,
            params.drive_ratio(),
            spectrum.n_max,
            cert.converged,
            shown.join(", ")
        );
    }

    println!();
    println!("right at the critical drive nothing converges: every discrete level");
    println!("has collapsed toward zero and the cutoff doubling never settles");
}

fn quasienergies_nearest_zero(sorted: &[f64], k: usize) -> Vec<f64> {
    let mut by_distance: Vec<f64> = sorted.to_vec();
    by_distance.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let mut out: Vec<f64> = by_distance.into_iter().take(k).collect();
    out.sort_by(|a, b| a.total_cmp(b));
    out
}
