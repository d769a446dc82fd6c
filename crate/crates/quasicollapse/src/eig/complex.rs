//! Hermitian eigensolver: complex Householder reduction to a real symmetric
//! tridiagonal (absorbing off-diagonal phases into a diagonal unitary),
//! followed by the same implicit QL stage as the real path.

use ndarray::Array2;
use num_complex::Complex64;

use super::dense::{ql_implicit, sort_ascending};
use super::EigError;

pub(crate) fn hermiticity_defect(a: &Array2<Complex64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        worst = worst.max(a[[i, i]].im.abs());
        for j in (i + 1)..n {
            worst = worst.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    worst
}

pub(crate) fn max_abs_c(a: &Array2<Complex64>) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(v.norm()))
}

/// Reduce a Hermitian matrix to real tridiagonal (d, e) by unitary
/// similarity. When `want_q` is set, returns Q with Q† A Q = tridiag(d, e);
/// eigenvectors of A are then Q times the tridiagonal eigenvectors.
fn reduce_to_real_tridiagonal(
    a: &mut Array2<Complex64>,
    d: &mut [f64],
    e: &mut [f64],
    want_q: bool,
) -> Option<Array2<Complex64>> {
    let n = a.nrows();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut q = want_q.then(|| Array2::from_shape_fn((n, n), |(i, j)| if i == j { one } else { zero }));
    // complex off-diagonals collected during the reduction, phased real below
    let mut t = vec![zero; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0f64;
        for k in 0..=l {
            h += a[[i, k]].norm_sqr();
        }
        if h == 0.0 {
            t[i] = zero;
            continue;
        }
        // reflect the column a[0..=l, i]; zeroing the row needs the
        // conjugate data, and the two only agree in the real case
        let f = a[[l, i]];
        let norm = h.sqrt();
        let phase = if f.norm() > 0.0 { f / f.norm() } else { one };
        let g = -phase * norm;
        // Householder vector u lives in indices 0..=l
        let mut u: Vec<Complex64> = (0..=l).map(|k| a[[k, i]]).collect();
        u[l] = f - g;
        let beta = 1.0 / (norm * (norm + f.norm()));

        // similarity on the leading block: A <- A - q u† - u q†,
        // q = beta (A u - K u), K = beta (u† A u)/2
        let mut p = vec![zero; l + 1];
        for r in 0..=l {
            let mut acc = zero;
            for k in 0..=l {
                acc += a[[r, k]] * u[k];
            }
            p[r] = acc * beta;
        }
        let mut udp = zero;
        for k in 0..=l {
            udp += u[k].conj() * p[k];
        }
        let kk = udp * (beta * 0.5);
        for r in 0..=l {
            let qr = p[r] - kk * u[r];
            for s_col in 0..=l {
                let upd = qr * u[s_col].conj() + u[r] * (p[s_col] - kk * u[s_col]).conj();
                a[[r, s_col]] -= upd;
            }
        }
        // the column picked up g, so the subdiagonal entry is its conjugate
        t[i] = g.conj();
        a[[i, l]] = g.conj();
        a[[l, i]] = g;
        for k in 0..l {
            a[[i, k]] = zero;
            a[[k, i]] = zero;
        }
        if let Some(qm) = q.as_mut() {
            // Q <- Q (I - beta u u†)
            for r in 0..n {
                let mut acc = zero;
                for k in 0..=l {
                    acc += qm[[r, k]] * u[k];
                }
                acc *= beta;
                for k in 0..=l {
                    let upd = acc * u[k].conj();
                    qm[[r, k]] -= upd;
                }
            }
        }
    }

    // absorb the off-diagonal phases: D diagonal unitary with
    // conj(D_i) t_i D_{i-1} = |t_i|
    let mut dphase = vec![one; n];
    for i in 1..n {
        let ti = t[i];
        let mag = ti.norm();
        let ph = if mag > 0.0 { ti / mag } else { one };
        dphase[i] = ph * dphase[i - 1];
        e[i] = mag;
    }
    for i in 0..n {
        d[i] = a[[i, i]].re;
    }
    e[0] = 0.0;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    if let Some(qm) = q.as_mut() {
        for c in 0..n {
            let ph = dphase[c];
            for r in 0..n {
                qm[[r, c]] *= ph;
            }
        }
    }
    q
}

pub(crate) fn decompose_hermitian(
    mut a: Array2<Complex64>,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Array2<Complex64>>), EigError> {
    let n = a.nrows();
    if n == 1 {
        let v = want_vectors.then(|| Array2::from_elem((1, 1), Complex64::new(1.0, 0.0)));
        return Ok((vec![a[[0, 0]].re], v));
    }
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    let q = reduce_to_real_tridiagonal(&mut a, &mut d, &mut e, want_vectors);
    let budget = 30 * n;
    if want_vectors {
        let mut z = Array2::<f64>::eye(n);
        ql_implicit(&mut d, &mut e, Some(&mut z), budget)?;
        sort_ascending(&mut d, Some(&mut z));
        let q = q.expect("transform requested");
        // V = Q Z, complex times real
        let mut v = Array2::from_elem((n, n), Complex64::new(0.0, 0.0));
        for c in 0..n {
            for k in 0..n {
                let zkc = z[[k, c]];
                if zkc == 0.0 {
                    continue;
                }
                for r in 0..n {
                    v[[r, c]] += q[[r, k]] * zkc;
                }
            }
        }
        Ok((d, Some(v)))
    } else {
        ql_implicit(&mut d, &mut e, None, budget)?;
        sort_ascending(&mut d, None);
        Ok((d, None))
    }
}
