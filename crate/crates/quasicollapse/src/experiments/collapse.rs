//! `collapse-fit`: measure how the smallest positive quasienergy closes as
//! the drive approaches critical, and fit the closing exponent.
//!
//! The gap at each usable sweep point comes from the converged numeric
//! spectrum, never from the closed form, so the fit is an independent check
//! of the analytic exponent 3/4. Points at or above the critical drive, and
//! points inside the exclusion window around it, are tabulated but not
//! diagonalized or fitted. The fitted line is `log gap` against
//! `log(1 - r^2)` with `r` the drive ratio; a second straight-line fit of
//! `gap^(4/3)` against the squared drive locates the critical drive from the
//! data alone.

use rayon::prelude::*;

use crate::model::{critical_drive, ModelParams};

use super::config::{ConfigMap, LadderSpec, SweepSpec};
use super::spectrum::sweep_point;
use super::table::{write_output, Cell, Format, OutputSpec, Table};
use super::{thread_pool, Failure};

/// Floor below which a computed level counts as the zero mode rather than a
/// gap; the true zero mode lands around 1e-14 in practice.
const GAP_FLOOR: f64 = 1e-8;

/// How many levels around zero to track per point; enough to hold the zero
/// mode, the first gap pair, and one guard pair.
const TRACKED_LEVELS: usize = 6;

/// Outcome of a collapse fit. Serialized as the JSON report; the CSV view
/// repeats the scalar columns on every gap row.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CollapseReport {
    pub lambda: f64,
    pub eta: f64,
    pub critical_predicted: f64,
    pub critical_detected: f64,
    pub grid_step: f64,
    pub exponent: f64,
    pub exponent_ci: f64,
    pub fit_residual: f64,
    pub points_used: usize,
    pub points: Vec<GapPoint>,
}

/// One sweep point: its gap when the point was diagonalized, and whether it
/// entered the fit.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct GapPoint {
    pub epsilon: f64,
    pub gap: Option<f64>,
    pub used: bool,
}

struct Line {
    slope: f64,
    intercept: f64,
    rms: f64,
    slope_stderr: f64,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> Line {
    assert!(xs.len() == ys.len() && xs.len() >= 3);
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    Line {
        slope,
        intercept,
        rms: (ssr / n).sqrt(),
        slope_stderr: (ssr / (n - 2.0) / sxx).sqrt(),
    }
}

pub(super) fn run(mut cfg: ConfigMap) -> Result<(), Failure> {
    let out = OutputSpec::take(&mut cfg, Format::Json)?;
    let lambda = cfg.f64_or("lambda", 1.0)?;
    let eta = cfg.f64_or("eta", 0.0)?;
    let probe = ModelParams::from_scaled(lambda, 0.0, eta)?;
    let eps_c = critical_drive(&probe);
    let sweep = SweepSpec::take_or(&mut cfg, (0.0, 0.9 * eps_c, 40))?;
    let exclusion = cfg.f64_or("exclusion", 0.02)?;
    let ladder = LadderSpec::take(&mut cfg)?;
    let pool = thread_pool(&mut cfg)?;
    cfg.ensure_consumed("collapse-fit")?;
    if !(0.0..1.0).contains(&exclusion) {
        return Err(Failure::config(format!(
            "`exclusion` must be in [0, 1), got {exclusion}"
        )));
    }

    let grid = sweep.grid();
    let included: Vec<bool> = grid
        .iter()
        .map(|&eps| eps < eps_c && (eps - eps_c).abs() >= exclusion * eps_c)
        .collect();

    let gaps: Vec<Result<Option<f64>, Failure>> = pool.install(|| {
        grid.par_iter()
            .zip(&included)
            .map(|(&eps, &wanted)| {
                if !wanted {
                    return Ok(None);
                }
                let (levels, converged) =
                    sweep_point(lambda, eps, eta, TRACKED_LEVELS, ladder)?;
                if !converged {
                    return Err(Failure::cap(format!(
                        "no convergence at epsilon = {eps} within the n_max cap {}",
                        ladder.cap
                    )));
                }
                Ok(levels
                    .iter()
                    .map(|(q, _)| *q)
                    .filter(|q| *q > GAP_FLOOR)
                    .fold(None, |best: Option<f64>, q| {
                        Some(best.map_or(q, |b| b.min(q)))
                    }))
            })
            .collect()
    });

    let mut points = Vec::with_capacity(grid.len());
    for (&epsilon, gap) in grid.iter().zip(gaps) {
        let gap = gap?;
        points.push(GapPoint { epsilon, gap, used: gap.is_some() });
    }

    let usable: Vec<&GapPoint> = points.iter().filter(|p| p.used).collect();
    if usable.len() < 3 {
        return Err(Failure::config(format!(
            "collapse fit needs at least 3 usable points below critical, got {}",
            usable.len()
        )));
    }

    // Exponent: log gap against log(1 - r^2), slope is the closing power.
    let log_x: Vec<f64> = usable
        .iter()
        .map(|p| (1.0 - (p.epsilon / eps_c).powi(2)).ln())
        .collect();
    let log_y: Vec<f64> = usable.iter().map(|p| p.gap.unwrap().ln()).collect();
    let fit = least_squares(&log_x, &log_y);

    // Critical drive from the data: gap^(4/3) is linear in epsilon^2 and
    // crosses zero at the critical point.
    let sq_x: Vec<f64> = usable.iter().map(|p| p.epsilon * p.epsilon).collect();
    let pow_y: Vec<f64> = usable.iter().map(|p| p.gap.unwrap().powf(4.0 / 3.0)).collect();
    let locate = least_squares(&sq_x, &pow_y);
    let crossing = -locate.intercept / locate.slope;
    if !(crossing > 0.0) {
        return Err(Failure::config(
            "sweep data does not bracket a gap closing; widen the drive range",
        ));
    }

    let report = CollapseReport {
        lambda,
        eta,
        critical_predicted: eps_c,
        critical_detected: crossing.sqrt(),
        grid_step: sweep.step(),
        exponent: fit.slope,
        exponent_ci: 1.96 * fit.slope_stderr,
        fit_residual: fit.rms,
        points_used: usable.len(),
        points,
    };

    let text = match out.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| Failure::config(format!("cannot serialize report: {e}")))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut table = Table::new(vec![
                "epsilon",
                "gap",
                "used",
                "exponent",
                "exponent_ci",
                "fit_residual",
                "critical_detected",
                "critical_predicted",
            ]);
            for p in &report.points {
                table.push(vec![
                    Cell::Float(p.epsilon),
                    p.gap.map_or(Cell::Empty, Cell::Float),
                    Cell::Bool(p.used),
                    Cell::Float(report.exponent),
                    Cell::Float(report.exponent_ci),
                    Cell::Float(report.fit_residual),
                    Cell::Float(report.critical_detected),
                    Cell::Float(report.critical_predicted),
                ]);
            }
            table.render(Format::Csv)
        }
    };
    write_output(&out.path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_squares_recovers_an_exact_line() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64 * 0.3 - 1.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.75 * x + 2.5).collect();
        let fit = least_squares(&xs, &ys);
        assert!((fit.slope - 0.75).abs() < 1e-12);
        assert!((fit.intercept - 2.5).abs() < 1e-12);
        assert!(fit.rms < 1e-12);
        assert!(fit.slope_stderr < 1e-12);
    }

    #[test]
    fn least_squares_stderr_grows_with_scatter() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let clean: Vec<f64> = xs.iter().map(|x| 2.0 * x).collect();
        let noisy: Vec<f64> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| 2.0 * x + if i % 2 == 0 { 0.05 } else { -0.05 })
            .collect();
        let a = least_squares(&xs, &clean);
        let b = least_squares(&xs, &noisy);
        assert!(b.slope_stderr > a.slope_stderr);
        assert!(b.rms > 0.04);
    }
}
