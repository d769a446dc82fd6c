//! Landau levels of a massless Dirac particle in crossed E and B fields,
//! computed three ways: the direct closed form, a boost into the frame where
//! the electric field vanishes, and the optical ladder that shares the same
//! spectrum.
//!
//! The drift velocity is E/B. As it approaches the speed of light the level
//! spacing picks up the factor (1 - beta^2)^(3/4) and the whole ladder
//! collapses; that is the field-theory face of the driven-cavity transition.

use quasicollapse::analytic::{
    dirac_energy_discrete, dirac_energy_via_boost, quasienergy_jc, Sign,
};
use quasicollapse::model::{fields_to_optics, FieldConfig};

fn main() {
    let b_field = 1.0;

    println!("pure magnetic field, B = {b_field} (the textbook ladder):");
    let fields = FieldConfig::new(0.0, b_field).unwrap();
    for n in 0..4 {
        let e = dirac_energy_discrete(n, Sign::Plus, &fields).unwrap();
        println!("  n = {n}:  E = {e:.12}  (sqrt(2 B (n+1)) = {:.12})", (2.0 * b_field * (n as f64 + 1.0)).sqrt());
    }

    println!();
    println!("crossed fields with drift beta = E/B, n = 0, both routes:");
    println!(
        "{:>6} {:>18} {:>18} {:>12}",
        "beta", "direct", "boosted frame", "difference"
    );
    for beta in [0.0, 0.3, 0.6, 0.9, 0.99] {
        let fields = FieldConfig::with_wavenumbers(beta * b_field, b_field, 0.7, -0.4).unwrap();
        let direct = dirac_energy_discrete(0, Sign::Plus, &fields).unwrap();
        let boosted = dirac_energy_via_boost(0, Sign::Plus, &fields).unwrap();
        println!(
            "{beta:>6.2} {direct:>18.12} {boosted:>18.12} {:>12.2e}",
            (direct - boosted).abs()
        );
    }

    println!();
    println!("the same spectrum read as a driven cavity (k2 = k3 = 0):");
    let fields = FieldConfig::new(0.45, 1.0).unwrap();
    let params = fields_to_optics(&fields).unwrap();
    println!(
        "  E = {}, B = {}  <->  lambda = {:.6}, epsilon = {:.6}",
        fields.e_field(),
        fields.b_field(),
        params.lambda(),
        params.epsilon()
    );
    for n in 0..3 {
        let landau = dirac_energy_discrete(n, Sign::Plus, &fields).unwrap();
        let optical = quasienergy_jc(n, Sign::Plus, &params).unwrap();
        println!("  n = {n}:  Landau {landau:.12}  quasienergy {optical:.12}");
    }
}
