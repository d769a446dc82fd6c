//! Dense real-symmetric eigensolver: Householder tridiagonalization followed
//! by implicit QL with Wilkinson shifts. Classic kernels, written against the
//! usual two-stage layout so the tridiagonal stage can be shared with the
//! banded reduction path.

use ndarray::Array2;

use super::EigError;

/// Symmetry defect relative to a unit floor, so tiny matrices with entries
/// below 1 are not held to an impossible relative standard.
pub(crate) fn symmetry_defect(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((a[[i, j]] - a[[j, i]]).abs());
        }
    }
    worst
}

pub(crate) fn max_abs(a: &Array2<f64>) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Householder reduction of a symmetric matrix to tridiagonal form,
/// accumulating the orthogonal transform. On return `a` holds Q such that
/// Qᵀ A Q = tridiag(d, e), with `e[i]` coupling rows i and i+1 (e[n-1] = 0).
pub(crate) fn tridiagonalize_with_q(a: &mut Array2<f64>, d: &mut [f64], e: &mut [f64]) {
    let n = a.nrows();
    // e is used with the EISPACK convention (e[i] couples i-1 and i) during
    // the reduction and shifted to the i/i+1 convention at the end.
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0f64;
        if l > 0 {
            let mut scale = 0.0f64;
            for k in 0..=l {
                scale += a[[i, k]].abs();
            }
            if scale == 0.0 {
                e[i] = a[[i, l]];
            } else {
                for k in 0..=l {
                    a[[i, k]] /= scale;
                    h += a[[i, k]] * a[[i, k]];
                }
                let mut f = a[[i, l]];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[[i, l]] = f - g;
                f = 0.0;
                for j in 0..=l {
                    a[[j, i]] = a[[i, j]] / h;
                    let mut g = 0.0f64;
                    for k in 0..=j {
                        g += a[[j, k]] * a[[i, k]];
                    }
                    for k in (j + 1)..=l {
                        g += a[[k, j]] * a[[i, k]];
                    }
                    e[j] = g / h;
                    f += e[j] * a[[i, j]];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let fj = a[[i, j]];
                    let gj = e[j] - hh * fj;
                    e[j] = gj;
                    for k in 0..=j {
                        let upd = fj * e[k] + gj * a[[i, k]];
                        a[[j, k]] -= upd;
                    }
                }
            }
        } else {
            e[i] = a[[i, l]];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            // accumulate the stored Householder vectors into Q
            for j in 0..i {
                let mut g = 0.0f64;
                for k in 0..i {
                    g += a[[i, k]] * a[[k, j]];
                }
                for k in 0..i {
                    let upd = g * a[[k, i]];
                    a[[k, j]] -= upd;
                }
            }
        }
        d[i] = a[[i, i]];
        a[[i, i]] = 1.0;
        for j in 0..i {
            a[[i, j]] = 0.0;
            a[[j, i]] = 0.0;
        }
    }
    // shift the off-diagonal to the (i, i+1) convention
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
}

/// Same reduction without transform accumulation, for eigenvalues-only work.
pub(crate) fn tridiagonalize(a: &mut Array2<f64>, d: &mut [f64], e: &mut [f64]) {
    let n = a.nrows();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0f64;
        if l > 0 {
            let mut scale = 0.0f64;
            for k in 0..=l {
                scale += a[[i, k]].abs();
            }
            if scale == 0.0 {
                e[i] = a[[i, l]];
            } else {
                for k in 0..=l {
                    a[[i, k]] /= scale;
                    h += a[[i, k]] * a[[i, k]];
                }
                let mut f = a[[i, l]];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[[i, l]] = f - g;
                f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0f64;
                    for k in 0..=j {
                        g += a[[j, k]] * a[[i, k]];
                    }
                    for k in (j + 1)..=l {
                        g += a[[k, j]] * a[[i, k]];
                    }
                    e[j] = g / h;
                    f += e[j] * a[[i, j]];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let fj = a[[i, j]];
                    let gj = e[j] - hh * fj;
                    e[j] = gj;
                    for k in 0..=j {
                        let upd = fj * e[k] + gj * a[[i, k]];
                        a[[j, k]] -= upd;
                    }
                }
            }
        } else {
            e[i] = a[[i, l]];
        }
    }
    // each diagonal entry was last touched by the reflection of the step
    // above it, so the tridiagonal diagonal can be read straight off
    for i in 0..n {
        d[i] = a[[i, i]];
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
}

/// Implicitly shifted QL sweeps on a tridiagonal matrix. `d` carries the
/// diagonal, `e[i]` the coupling between i and i+1 (e[n-1] ignored). When `z`
/// is given its columns are rotated along, turning an identity (or a
/// tridiagonalizing Q) into the full eigenvector matrix. The sweep budget is
/// shared across all levels; exhausting it reports the level being worked.
pub(crate) fn ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    mut z: Option<&mut Array2<f64>>,
    sweep_budget: usize,
) -> Result<(), EigError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let mut sweeps = 0usize;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > sweep_budget {
                return Err(EigError::NoConvergence { level: l, sweeps: sweep_budget });
            }
            // Wilkinson shift from the leading 2x2 of the active block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let sign_r = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut underflow_restart = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // rotation annihilated early; deflate and restart
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow_restart = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(zm) = z.as_deref_mut() {
                    let rows = zm.nrows();
                    for k in 0..rows {
                        f = zm[[k, i + 1]];
                        zm[[k, i + 1]] = s * zm[[k, i]] + c * f;
                        zm[[k, i]] = c * zm[[k, i]] - s * f;
                    }
                }
            }
            if underflow_restart {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Sort eigenvalues ascending, carrying eigenvector columns along.
pub(crate) fn sort_ascending(d: &mut [f64], z: Option<&mut Array2<f64>>) {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let sorted: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    d.copy_from_slice(&sorted);
    if let Some(zm) = z {
        let old = zm.clone();
        for (newcol, &oldcol) in order.iter().enumerate() {
            for k in 0..zm.nrows() {
                zm[[k, newcol]] = old[[k, oldcol]];
            }
        }
    }
}

/// Full decomposition driver used by the public entry points. Consumes a
/// working copy of the matrix.
pub(crate) fn decompose(
    mut a: Array2<f64>,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Array2<f64>>), EigError> {
    let n = a.nrows();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    if n == 1 {
        return Ok((vec![a[[0, 0]]], want_vectors.then(|| Array2::eye(1))));
    }
    let budget = 30 * n;
    if want_vectors {
        tridiagonalize_with_q(&mut a, &mut d, &mut e);
        ql_implicit(&mut d, &mut e, Some(&mut a), budget)?;
        sort_ascending(&mut d, Some(&mut a));
        Ok((d, Some(a)))
    } else {
        tridiagonalize(&mut a, &mut d, &mut e);
        ql_implicit(&mut d, &mut e, None, budget)?;
        sort_ascending(&mut d, None);
        Ok((d, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(n: usize, seed: u64) -> Array2<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = Array2::<f64>::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let v: f64 = rng.random_range(-1.0..1.0);
                a[[i, j]] = v;
                a[[j, i]] = v;
            }
        }
        a
    }

    #[test]
    fn two_by_two_exchange() {
        let mut a = Array2::<f64>::zeros((2, 2));
        a[[0, 1]] = 1.0;
        a[[1, 0]] = 1.0;
        let (d, _) = decompose(a, false).unwrap();
        assert!((d[0] + 1.0).abs() < 1e-15);
        assert!((d[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reconstructs_random_matrix() {
        let a = random_symmetric(50, 7);
        let (d, z) = decompose(a.clone(), true).unwrap();
        let z = z.unwrap();
        let mut recon = Array2::<f64>::zeros((50, 50));
        for k in 0..50 {
            for i in 0..50 {
                for j in 0..50 {
                    recon[[i, j]] += d[k] * z[[i, k]] * z[[j, k]];
                }
            }
        }
        let mut worst = 0.0f64;
        for i in 0..50 {
            for j in 0..50 {
                worst = worst.max((recon[[i, j]] - a[[i, j]]).abs());
            }
        }
        assert!(worst < 1e-10, "reconstruction defect {worst:.2e}");
    }

    #[test]
    fn vector_columns_orthonormal() {
        let a = random_symmetric(40, 11);
        let (_, z) = decompose(a, true).unwrap();
        let z = z.unwrap();
        let gram = z.t().dot(&z);
        let mut worst = 0.0f64;
        for i in 0..40 {
            for j in 0..40 {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[[i, j]] - expect).abs());
            }
        }
        assert!(worst < 1e-10, "orthonormality defect {worst:.2e}");
    }

    #[test]
    fn eigenvalue_only_path_matches_vector_path() {
        let a = random_symmetric(30, 23);
        let (d1, _) = decompose(a.clone(), false).unwrap();
        let (d2, _) = decompose(a, true).unwrap();
        for (x, y) in d1.iter().zip(&d2) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn trace_preserved() {
        for seed in [1u64, 2, 3] {
            let a = random_symmetric(35, seed);
            let tr: f64 = (0..35).map(|i| a[[i, i]]).sum();
            let (d, _) = decompose(a, false).unwrap();
            let sum: f64 = d.iter().sum();
            assert!((sum - tr).abs() < 1e-9 * 35.0, "trace drift {}", (sum - tr).abs());
        }
    }

    #[test]
    fn diagonal_matrix_passes_through() {
        let mut a = Array2::<f64>::zeros((4, 4));
        for (i, v) in [3.0, -1.0, 0.5, 2.0].iter().enumerate() {
            a[[i, i]] = *v;
        }
        let (d, z) = decompose(a, true).unwrap();
        assert_eq!(d, vec![-1.0, 0.5, 2.0, 3.0]);
        // columns are signed unit vectors
        let z = z.unwrap();
        for col in 0..4 {
            let norm: f64 = (0..4).map(|r| z[[r, col]] * z[[r, col]]).sum();
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }
}
