//! Banded machinery for the large truncations: Givens reduction of a
//! symmetric banded matrix to tridiagonal form (bulge chasing, no transform
//! accumulation) and a pivoted banded LU powering shifted inverse iteration.
//! Together these keep the convergence ladder at O(band · dim²) instead of
//! the dense O(dim³), which is what makes the 4096-level cap affordable.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Symmetric banded matrix. `w[[i, k]]` holds entry (i, i+k) for
/// k = 0..=hbw; slot hbw+1 is scratch for the bulge that the reduction
/// chases along the band.
#[derive(Debug, Clone)]
pub struct SymBand {
    n: usize,
    hbw: usize,
    w: Array2<f64>,
}

impl SymBand {
    pub fn new(n: usize, hbw: usize) -> Self {
        assert!(n >= 1 && hbw >= 1);
        SymBand { n, hbw, w: Array2::zeros((n, hbw + 2)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.hbw
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        if hi - lo >= self.w.ncols() {
            0.0
        } else {
            self.w[[lo, hi - lo]]
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        self.w[[lo, hi - lo]] = v;
    }

    pub fn from_dense(a: &Array2<f64>, hbw: usize) -> Self {
        let n = a.nrows();
        let mut b = SymBand::new(n, hbw.max(1));
        for i in 0..n {
            for j in i..(i + hbw + 1).min(n) {
                b.set(i, j, a[[i, j]]);
            }
        }
        b
    }

    pub fn max_abs(&self) -> f64 {
        self.w.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0f64; n];
        for i in 0..n {
            let mut acc = self.get(i, i) * x[i];
            let lo = i.saturating_sub(self.hbw + 1);
            for j in lo..i {
                acc += self.get(j, i) * x[j];
            }
            for j in (i + 1)..(i + self.hbw + 2).min(n) {
                acc += self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Rotate planes (p, p+1) by (c, s): col_p' = c col_p - s col_q,
    /// col_q' = s col_p + c col_q, same on rows. Touches only entries within
    /// distance `reach` of the diagonal.
    fn rotate(&mut self, p: usize, c: f64, s: f64, reach: usize) {
        let q = p + 1;
        // rows below p - reach + 1 are structurally zero in both touched
        // columns, and writing at distance reach + 1 would fall off the store
        let lo = p.saturating_sub(reach - 1);
        for r in lo..p {
            let x = self.get(r, p);
            let y = self.get(r, q);
            self.set(r, p, c * x - s * y);
            self.set(r, q, s * x + c * y);
        }
        let app = self.get(p, p);
        let aqq = self.get(q, q);
        let apq = self.get(p, q);
        self.set(p, p, c * c * app - 2.0 * c * s * apq + s * s * aqq);
        self.set(q, q, s * s * app + 2.0 * c * s * apq + c * c * aqq);
        self.set(p, q, c * s * (app - aqq) + (c * c - s * s) * apq);
        let hi = (p + reach + 1).min(self.n);
        for t in (q + 1)..hi {
            let x = self.get(p, t);
            let y = self.get(q, t);
            self.set(p, t, c * x - s * y);
            self.set(q, t, s * x + c * y);
        }
    }

    /// Reduce to tridiagonal (d, e) by chasing each outer diagonal off the
    /// end of the band, one level at a time.
    pub fn into_tridiagonal(mut self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        for m in (2..=self.hbw).rev() {
            if m >= n {
                continue;
            }
            for j in 0..(n - m) {
                // zero (j, j+m), then chase the bulge created m further down
                let mut row = j;
                let mut p = j + m - 1;
                loop {
                    let x = self.get(row, p);
                    let y = self.get(row, p + 1);
                    if y != 0.0 {
                        let r = x.hypot(y);
                        self.rotate(p, x / r, -y / r, m + 1);
                        self.set(row, p, r);
                        self.set(row, p + 1, 0.0);
                    } else {
                        break;
                    }
                    if p + m + 1 < n && self.get(p, p + m + 1) != 0.0 {
                        row = p;
                        p += m;
                    } else {
                        break;
                    }
                }
            }
        }
        let mut d = vec![0.0f64; n];
        let mut e = vec![0.0f64; n];
        for i in 0..n {
            d[i] = self.get(i, i);
            if i + 1 < n {
                e[i] = self.get(i, i + 1);
            }
        }
        (d, e)
    }
}

/// Pivoted LU of (A - sigma I) for a symmetric banded A, with the usual
/// bandwidth growth absorbed by a widened working array. Row i's window
/// covers columns [i - kb, i + 2 kb].
pub struct BandLu {
    n: usize,
    kb: usize,
    w: Array2<f64>,
    pivots: Vec<usize>,
    lmult: Array2<f64>,
}

impl BandLu {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        if j + self.kb < i || j > i + 2 * self.kb {
            0.0
        } else {
            self.w[[i, j + self.kb - i]]
        }
    }

    #[inline]
    fn put(&mut self, i: usize, j: usize, v: f64) {
        self.w[[i, j + self.kb - i]] = v;
    }

    pub fn factor(a: &SymBand, sigma: f64) -> Self {
        let n = a.n();
        let kb = a.half_bandwidth() + 1; // one extra for a possible bulge slot
        let mut lu = BandLu {
            n,
            kb,
            w: Array2::zeros((n, 3 * kb + 1)),
            pivots: vec![0; n],
            lmult: Array2::zeros((n, kb)),
        };
        for i in 0..n {
            for j in i.saturating_sub(kb)..(i + kb + 1).min(n) {
                let v = a.get(i, j) - if i == j { sigma } else { 0.0 };
                lu.put(i, j, v);
            }
        }
        // a strictly zero pivot would stall inverse iteration right at an
        // eigenvalue; nudge it to roundoff scale instead
        let tiny = f64::EPSILON * a.max_abs().max(1.0) * n as f64;
        for k in 0..n {
            let kmax = (k + kb).min(n - 1);
            let mut pr = k;
            let mut best = lu.at(k, k).abs();
            for r in (k + 1)..=kmax {
                let cand = lu.at(r, k).abs();
                if cand > best {
                    best = cand;
                    pr = r;
                }
            }
            lu.pivots[k] = pr;
            if pr != k {
                let hi = (k + 2 * kb).min(n - 1);
                for j in k..=hi {
                    let x = lu.at(k, j);
                    let y = lu.at(pr, j);
                    lu.put(k, j, y);
                    lu.put(pr, j, x);
                }
            }
            let mut piv = lu.at(k, k);
            if piv.abs() < tiny {
                piv = if piv >= 0.0 { tiny } else { -tiny };
                lu.put(k, k, piv);
            }
            for r in (k + 1)..=kmax {
                let m = lu.at(r, k) / piv;
                lu.lmult[[k, r - k - 1]] = m;
                if m != 0.0 {
                    let hi = (k + 2 * kb).min(n - 1);
                    for j in (k + 1)..=hi {
                        let upd = m * lu.at(k, j);
                        if upd != 0.0 {
                            let v = lu.at(r, j) - upd;
                            lu.put(r, j, v);
                        }
                    }
                }
                lu.put(r, k, 0.0);
            }
        }
        lu
    }

    pub fn solve(&self, b: &mut [f64]) {
        let n = self.n;
        for k in 0..n {
            let pr = self.pivots[k];
            if pr != k {
                b.swap(k, pr);
            }
            let kmax = (k + self.kb).min(n - 1);
            for r in (k + 1)..=kmax {
                b[r] -= self.lmult[[k, r - k - 1]] * b[k];
            }
        }
        // When the shift sits exactly on an eigenvalue, several nudged pivots
        // can compound and push the solution toward overflow within a single
        // pass. Rescaling the computed tail keeps everything finite; only the
        // direction of the solution matters to inverse iteration, so the
        // inconsistency with the already-consumed rows is harmless.
        const GROWTH_LIMIT: f64 = 1e250;
        for i in (0..n).rev() {
            let hi = (i + 2 * self.kb).min(n - 1);
            let mut acc = b[i];
            for j in (i + 1)..=hi {
                acc -= self.at(i, j) * b[j];
            }
            let x = acc / self.at(i, i);
            if x.abs() > GROWTH_LIMIT {
                let scale = GROWTH_LIMIT / x.abs();
                for v in b[i..].iter_mut() {
                    *v *= scale;
                }
                b[i] = if x >= 0.0 { GROWTH_LIMIT } else { -GROWTH_LIMIT };
            } else {
                b[i] = x;
            }
        }
    }
}

/// Shifted inverse iteration on a banded matrix. The shift comes from the QL
/// stage and is accurate to roundoff, so a handful of solves from a seeded
/// random start is plenty.
pub fn inverse_iteration(a: &SymBand, sigma: f64, seed: u64) -> Vec<f64> {
    let n = a.n();
    let lu = BandLu::factor(a, sigma);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    normalize(&mut x);
    for _ in 0..4 {
        lu.solve(&mut x);
        normalize(&mut x);
    }
    x
}

fn normalize(x: &mut [f64]) {
    // scale by the peak first: near-singular solves return components large
    // enough that summing raw squares overflows
    let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(peak > 0.0) {
        return;
    }
    for v in x.iter_mut() {
        *v /= peak;
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}
