//! Shared helpers for the integration suites: seeded random matrix draws and
//! an eigenvalue oracle that goes through the characteristic polynomial and
//! its companion matrix, sharing no code with the library's Householder/QL
//! path.

#![allow(dead_code)]

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random real symmetric matrix with entries in [-1, 1].
pub fn random_symmetric(dim: usize, seed: u64) -> Array2<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Array2::zeros((dim, dim));
    for i in 0..dim {
        for j in 0..=i {
            let v = rng.random_range(-1.0..1.0);
            m[[i, j]] = v;
            m[[j, i]] = v;
        }
    }
    m
}

/// Random complex Hermitian matrix with component entries in [-1, 1].
pub fn random_hermitian(dim: usize, seed: u64) -> Array2<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Array2::zeros((dim, dim));
    for i in 0..dim {
        m[[i, i]] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in 0..i {
            let v = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[[i, j]] = v;
            m[[j, i]] = v.conj();
        }
    }
    m
}

fn trace(m: &Array2<Complex64>) -> Complex64 {
    (0..m.nrows()).map(|i| m[[i, i]]).sum()
}

/// Coefficients `c[0..n]` of `det(x I - M) = x^n + c[n-1] x^(n-1) + ... + c[0]`
/// by the Faddeev-LeVerrier trace recursion.
fn char_poly(m: &Array2<Complex64>) -> Vec<Complex64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    let mut mk = m.clone();
    let mut c = -trace(&mk);
    coeffs[n - 1] = c;
    for k in 2..=n {
        for i in 0..n {
            mk[[i, i]] += c;
        }
        mk = m.dot(&mk);
        c = -trace(&mk) / (k as f64);
        coeffs[n - k] = c;
    }
    coeffs
}

/// Monic companion matrix of `x^n + c[n-1] x^(n-1) + ... + c[0]`: ones on the
/// subdiagonal, `-c` down the last column. Its eigenvalues are the roots.
fn companion(coeffs: &[Complex64]) -> Array2<Complex64> {
    let n = coeffs.len();
    let mut c = Array2::zeros((n, n));
    for i in 1..n {
        c[[i, i - 1]] = Complex64::new(1.0, 0.0);
    }
    for (i, ck) in coeffs.iter().enumerate() {
        c[[i, n - 1]] = -ck;
    }
    c
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for c in coeffs.iter().rev() {
        p = p * z + c;
    }
    p
}

/// All eigenvalues of `m` by brute force on the companion matrix of its
/// characteristic polynomial: the companion row norm bounds every root, and
/// simultaneous Weierstrass iteration from that circle refines all of them at
/// once. Returns roots sorted by real part.
pub fn char_poly_roots(m: &Array2<Complex64>) -> Vec<Complex64> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    let coeffs = char_poly(m);
    let comp = companion(&coeffs);
    let radius = (0..n)
        .map(|i| (0..n).map(|j| comp[[i, j]].norm()).sum::<f64>())
        .fold(1e-3_f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64 + 0.37) / n as f64;
            radius * Complex64::new(angle.cos(), angle.sin())
        })
        .collect();
    for _ in 0..600 {
        let mut moved = 0.0_f64;
        for j in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for k in 0..n {
                if k != j {
                    denom *= z[j] - z[k];
                }
            }
            let step = horner(&coeffs, z[j]) / denom;
            z[j] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re));
    z
}

/// [`char_poly_roots`] for Hermitian input: asserts the roots came out real
/// and returns them ascending.
pub fn char_poly_roots_real(m: &Array2<Complex64>) -> Vec<f64> {
    let roots = char_poly_roots(m);
    let scale = roots.iter().map(|r| r.norm()).fold(1.0_f64, f64::max);
    for r in &roots {
        assert!(
            r.im.abs() <= 1e-9 * scale,
            "oracle root {r} has a non-negligible imaginary part for Hermitian input"
        );
    }
    roots.iter().map(|r| r.re).collect()
}
