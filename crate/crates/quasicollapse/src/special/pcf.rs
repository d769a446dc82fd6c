//! Parabolic cylinder functions D_a(xi) for complex order and argument.

use super::gamma::recip_gamma;
use super::kummer::kummer_m;
use super::{SpecialError, ORDER_ENVELOPE, PCF_ACCURACY_LIMIT, XI_ENVELOPE};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI, SQRT_2};

/// One evaluated parabolic cylinder point: order, argument, value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfValue {
    pub a: Complex64,
    pub xi: Complex64,
    pub value: Complex64,
}

impl PcfValue {
    pub fn eval(a: Complex64, xi: Complex64) -> Result<Self, SpecialError> {
        Ok(Self { a, xi, value: pcf_d(a, xi)? })
    }
}

/// D_a(xi) through the two Kummer series
///
/// ```text
/// D_a(xi) = 2^(a/2) e^(-xi^2/4) sqrt(pi)
///           [ M(-a/2, 1/2, xi^2/2) / Gamma((1-a)/2)
///             - sqrt(2) xi M((1-a)/2, 3/2, xi^2/2) / Gamma(-a/2) ]
/// ```
///
/// A series whose 1/Gamma prefactor is exactly zero is skipped entirely, so
/// non-negative integer orders reduce to terminating polynomials and D_0 is
/// exact for every argument. Each summation tracks its largest term; when the
/// estimated roundoff exceeds [`PCF_ACCURACY_LIMIT`] relative to the result,
/// the evaluation is rejected as lost to cancellation.
pub fn pcf_d(a: Complex64, xi: Complex64) -> Result<Complex64, SpecialError> {
    if !(a.norm() <= ORDER_ENVELOPE) {
        return Err(SpecialError::OrderEnvelope(a.norm()));
    }
    let one = Complex64::new(1.0, 0.0);
    assemble(a, recip_gamma((one - a) * 0.5), recip_gamma(-a * 0.5), xi)
}

fn assemble(
    a: Complex64,
    p_even: Complex64,
    p_odd: Complex64,
    xi: Complex64,
) -> Result<Complex64, SpecialError> {
    if !(xi.norm() <= XI_ENVELOPE) {
        return Err(SpecialError::ArgumentEnvelope(xi.norm()));
    }
    let zero = Complex64::new(0.0, 0.0);
    let w = xi * xi * 0.5;
    let mut series = zero;
    let mut abs_err = 0.0f64;
    if p_even != zero {
        let m = kummer_m(-a * 0.5, Complex64::new(0.5, 0.0), w)?;
        series += p_even * m.value;
        abs_err += p_even.norm() * m.abs_error();
    }
    if p_odd != zero {
        let m = kummer_m((Complex64::new(1.0, 0.0) - a) * 0.5, Complex64::new(1.5, 0.0), w)?;
        let f = SQRT_2 * xi * p_odd;
        series -= f * m.value;
        abs_err += f.norm() * m.abs_error();
    }
    // Roundoff must stay below the limit both relative to the summed result
    // and against the series' natural O(1) scale. The second leg keeps exact
    // polynomial zeros (terminating series) from being reported as failures:
    // only the exponential blow-up of nearly cancelling e^|w| terms trips it.
    let scale = series.norm().max(1.0);
    if abs_err > PCF_ACCURACY_LIMIT * scale {
        return Err(SpecialError::AccuracyLoss {
            est: abs_err / scale,
            limit: PCF_ACCURACY_LIMIT,
            xi_abs: xi.norm(),
        });
    }
    // 2^(a/2) e^(-xi^2/4) sqrt(pi), with -xi^2/4 = -w/2
    let outer = (a * (0.5 * LN_2) - w * 0.5).exp() * PI.sqrt();
    Ok(outer * series)
}

/// Evaluator for D_a along the rotated ray `xi = sqrt(2) e^(i pi/4) s`,
/// s real, with pure imaginary order. On this ray `xi = (1 + i) s` and
/// `xi^2/2 = i s^2`, so the Kummer argument is purely imaginary and the
/// series never suffers exponential cancellation growth.
///
/// The two gamma prefactors depend only on the order; a sweep over many s
/// values reuses them. The struct is immutable, so shared references may be
/// used from any number of threads.
#[derive(Debug, Clone, Copy)]
pub struct PcfRay {
    a: Complex64,
    p_even: Complex64,
    p_odd: Complex64,
}

impl PcfRay {
    /// Evaluator for order `a = i a_im`.
    pub fn new(a_im: f64) -> Result<Self, SpecialError> {
        let a = Complex64::new(0.0, a_im);
        if !(a.norm() <= ORDER_ENVELOPE) {
            return Err(SpecialError::OrderEnvelope(a.norm()));
        }
        let one = Complex64::new(1.0, 0.0);
        Ok(Self { a, p_even: recip_gamma((one - a) * 0.5), p_odd: recip_gamma(-a * 0.5) })
    }

    pub fn order(&self) -> Complex64 {
        self.a
    }

    /// D_a(sqrt(2) e^(i pi/4) s).
    pub fn eval(&self, s: f64) -> Result<Complex64, SpecialError> {
        assemble(self.a, self.p_even, self.p_odd, Complex64::new(s, s))
    }
}

/// Convenience one-shot form of [`PcfRay`].
pub fn pcf_d_on_ray(a_im: f64, s: f64) -> Result<Complex64, SpecialError> {
    PcfRay::new(a_im)?.eval(s)
}

/// Relative residual of the Weber recurrence
/// `D_{a+1}(xi) - xi D_a(xi) + a D_{a-1}(xi) = 0`,
/// scaled by the largest of the three term moduli.
pub fn weber_recurrence_residual(a: Complex64, xi: Complex64) -> Result<f64, SpecialError> {
    let one = Complex64::new(1.0, 0.0);
    let d_up = pcf_d(a + one, xi)?;
    let d_mid = xi * pcf_d(a, xi)?;
    let d_dn = a * pcf_d(a - one, xi)?;
    let scale = d_up.norm().max(d_mid.norm()).max(d_dn.norm());
    Ok((d_up - d_mid + d_dn).norm() / scale.max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::super::{erfc, hermite_psi};
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn order_zero_is_the_bare_gaussian() {
        // D_0(xi) = e^(-xi^2/4): the odd prefactor 1/Gamma(0) kills its series
        // and the even series terminates, so this holds to roundoff everywhere
        let xi = c(1.0, 1.0);
        let expect = (-xi * xi / 4.0).exp();
        let got = pcf_d(c(0.0, 0.0), xi).unwrap();
        assert!((got - expect).norm() < 1e-12);

        for &xi in &[c(0.3, 0.0), c(-2.0, 0.5), c(20.0, 0.0), c(0.0, 8.0), c(14.0, -14.0)] {
            let expect = (-xi * xi / 4.0).exp();
            let got = pcf_d(c(0.0, 0.0), xi).unwrap();
            assert!(
                (got - expect).norm() <= 1e-12 * expect.norm().max(1e-300),
                "D_0 mismatch at xi = {xi}"
            );
        }
    }

    #[test]
    fn order_minus_one_matches_erfc_oracle() {
        // D_{-1}(x) = sqrt(pi/2) e^(x^2/4) erfc(x/sqrt(2)) on the real axis
        let mut x: f64 = 0.0;
        while x <= 3.0 + 1e-9 {
            let expect = (PI / 2.0).sqrt() * (x * x / 4.0).exp() * erfc(x / SQRT_2);
            let got = pcf_d(c(-1.0, 0.0), c(x, 0.0)).unwrap();
            assert_abs_diff_eq!(got.re, expect, epsilon = 1e-8);
            assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-12);
            x += 0.1;
        }
    }

    #[test]
    fn weber_recurrence_at_reference_point() {
        let a = c(-0.5, 0.3);
        let xi = SQRT_2 * c(1.0, 1.0); // 2 e^(i pi/4)
        assert!(weber_recurrence_residual(a, xi).unwrap() < 1e-8);
    }

    #[test]
    fn weber_recurrence_on_grid() {
        // 10 orders x 10 arguments = 100 pairs inside the accurate zone
        let orders = [
            c(-2.0, 0.0),
            c(-1.3, 0.4),
            c(-0.6, -0.7),
            c(-0.2, 0.1),
            c(0.0, 0.5),
            c(0.3, -0.3),
            c(0.8, 0.0),
            c(1.4, 0.9),
            c(-1.9, -1.1),
            c(2.2, 0.6),
        ];
        let args = [
            c(0.1, 0.0),
            c(0.9, 0.0),
            c(-1.4, 0.3),
            c(0.5, 1.0),
            c(-0.8, -0.9),
            c(1.8, 0.7),
            c(0.0, 1.5),
            c(2.3, 0.0),
            c(-2.0, -1.0),
            c(1.1, -2.0),
        ];
        for a in orders {
            for xi in args {
                let r = weber_recurrence_residual(a, xi).unwrap();
                assert!(r < 1e-8, "residual {r:.2e} at a = {a}, xi = {xi}");
            }
        }
    }

    #[test]
    fn weber_ode_residual_by_central_differences() {
        // D'' + (a + 1/2 - xi^2/4) D = 0, second derivative along the real
        // direction with step 1e-3
        let h = 1e-3;
        let points = [
            (c(-0.5, 0.3), c(0.4, 0.2)),
            (c(-0.5, 0.3), c(-1.2, 0.8)),
            (c(-1.0, 0.0), c(1.5, 0.0)),
            (c(-1.0, 0.0), c(0.3, -1.1)),
            (c(0.7, -0.2), c(2.0, 0.5)),
            (c(0.7, -0.2), c(-0.6, -0.6)),
            (c(0.0, 1.0), c(1.0, 1.0)),
            (c(0.0, 1.0), c(-2.2, 0.1)),
            (c(1.5, 0.5), c(0.8, -0.4)),
            (c(1.5, 0.5), c(1.9, 1.2)),
            (c(-2.3, 0.9), c(0.2, 0.7)),
            (c(-2.3, 0.9), c(-1.0, -1.3)),
            (c(0.4, -1.4), c(2.4, 0.0)),
            (c(0.4, -1.4), c(0.0, 2.0)),
            (c(-0.1, 0.05), c(-2.5, 0.4)),
            (c(-0.1, 0.05), c(1.3, -0.9)),
            (c(2.8, 0.0), c(0.6, 0.3)),
            (c(2.8, 0.0), c(-0.4, 1.7)),
            (c(-3.2, -0.6), c(1.1, 0.1)),
            (c(-3.2, -0.6), c(-1.8, -0.2)),
        ];
        assert_eq!(points.len(), 20);
        for (a, xi) in points {
            let dm = pcf_d(a, xi - h).unwrap();
            let d0 = pcf_d(a, xi).unwrap();
            let dp = pcf_d(a, xi + h).unwrap();
            let second = (dp - 2.0 * d0 + dm) / (h * h);
            let potential = (a + 0.5 - xi * xi / 4.0) * d0;
            let scale = second.norm().max(potential.norm()).max(1e-300);
            let res = (second + potential).norm() / scale;
            assert!(res < 1e-5, "ODE residual {res:.2e} at a = {a}, xi = {xi}");
        }
    }

    #[test]
    fn integer_orders_reduce_to_hermite_polynomials() {
        // D_n(xi) = 2^(-n/2) e^(-xi^2/4) H_n(xi / sqrt(2))
        let hermites: [&dyn Fn(f64) -> f64; 6] = [
            &|_| 1.0,
            &|x| 2.0 * x,
            &|x| 4.0 * x * x - 2.0,
            &|x| 8.0 * x.powi(3) - 12.0 * x,
            &|x| 16.0 * x.powi(4) - 48.0 * x * x + 12.0,
            &|x| 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x,
        ];
        for (n, h) in hermites.iter().enumerate() {
            let mut xi: f64 = -3.0;
            while xi <= 3.0 + 1e-9 {
                let expect = 2f64.powf(-(n as f64) / 2.0) * (-xi * xi / 4.0).exp() * h(xi / SQRT_2);
                let got = pcf_d(c(n as f64, 0.0), c(xi, 0.0)).unwrap();
                assert_abs_diff_eq!(got.re, expect, epsilon = 1e-9);
                assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-12);
                xi += 0.25;
            }
        }
    }

    #[test]
    fn integer_orders_match_oscillator_functions() {
        // same identity routed through psi_n: D_n(xi) = sqrt(n! sqrt(pi)) psi_n(xi/sqrt(2))
        let mut fact = 1.0;
        for n in 0..=5usize {
            if n > 0 {
                fact *= n as f64;
            }
            let norm = (fact * PI.sqrt()).sqrt();
            for i in -6..=6 {
                let xi = 0.5 * i as f64;
                let expect = norm * hermite_psi(n, xi / SQRT_2).unwrap();
                let got = pcf_d(c(n as f64, 0.0), c(xi, 0.0)).unwrap();
                assert_abs_diff_eq!(got.re, expect, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn ray_entry_point() {
        let origin = pcf_d_on_ray(0.0, 0.0).unwrap();
        assert!((origin - c(1.0, 0.0)).norm() < 1e-13);

        // order 0 on the ray: xi^2/4 = i s^2 / 2 is a pure phase
        for &s in &[0.5, 3.0, 10.0, 21.0, -7.5] {
            let v = pcf_d_on_ray(0.0, s).unwrap();
            assert_abs_diff_eq!(v.norm(), 1.0, epsilon = 1e-12);
        }

        // entry points agree
        let general = pcf_d(c(0.0, -0.5), c(1.0, 1.0)).unwrap();
        let ray = pcf_d_on_ray(-0.5, 1.0).unwrap();
        assert!((general - ray).norm() < 1e-14 * general.norm());
    }

    #[test]
    fn ray_cache_reuse_matches_fresh_evaluations() {
        let ray = PcfRay::new(-2.7).unwrap();
        for i in 0..30 {
            let s = -3.0 + 0.2 * i as f64;
            let cached = ray.eval(s).unwrap();
            let fresh = pcf_d(c(0.0, -2.7), c(s, s)).unwrap();
            assert!((cached - fresh).norm() <= 1e-13 * fresh.norm().max(1e-300));
        }
    }

    #[test]
    fn envelope_rejections() {
        assert!(matches!(
            pcf_d(c(0.0, 0.0), c(31.0, 0.0)),
            Err(SpecialError::ArgumentEnvelope(_))
        ));
        assert!(matches!(
            pcf_d(c(51.0, 0.0), c(1.0, 0.0)),
            Err(SpecialError::OrderEnvelope(_))
        ));
        assert!(matches!(PcfRay::new(50.5), Err(SpecialError::OrderEnvelope(_))));
    }

    #[test]
    fn cancellation_is_rejected_not_returned() {
        // real xi = 25 puts e^(xi^2/2) ~ 1e135 terms against an e^(-xi^2/4)
        // result; the error estimate must catch this inside the envelope
        match pcf_d(c(-1.0, 0.0), c(25.0, 0.0)) {
            Err(SpecialError::AccuracyLoss { est, limit, .. }) => assert!(est > limit),
            other => panic!("expected AccuracyLoss, got {other:?}"),
        }
    }

    #[test]
    fn pcf_value_record() {
        let p = PcfValue::eval(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((p.value - c(1.0, 0.0)).norm() < 1e-13);
        assert_eq!(p.a, c(0.0, 0.0));
    }
}
