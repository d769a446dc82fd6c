//! `polarization`: spin expectation of the near-zero mode across the
//! transition.
//!
//! Below critical each sweep point gets the closed-form value and, as an
//! independent check, the numeric value read off the eigenvector nearest
//! zero at a fixed truncation. Above critical the numeric route has no
//! normalizable state to converge to, so only the closed form appears, once
//! per branch: the two rows carry opposite real parts. Points within one
//! grid step of the critical drive are skipped; the expectation is
//! discontinuous there and neither route is meaningful.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic;
use crate::eig::eigenpair_nearest_zero;
use crate::fock::{sigma_minus_expectation, BasisSpec};
use crate::model::{classify_regime, critical_drive, ModelParams, Regime};

use super::config::{ConfigMap, SweepSpec};
use super::spectrum::build_for;
use super::table::{write_output, Cell, Format, OutputSpec, Table};
use super::{thread_pool, Failure};

struct PointRows {
    epsilon: f64,
    rows: Vec<(Complex64, &'static str)>,
}

pub(super) fn run(mut cfg: ConfigMap) -> Result<(), Failure> {
    let out = OutputSpec::take(&mut cfg, Format::Csv)?;
    let lambda = cfg.f64_or("lambda", 1.0)?;
    let eta = cfg.f64_or("eta", 0.0)?;
    let sweep = SweepSpec::take(&mut cfg, "polarization")?;
    let n_max = cfg.usize_or("n_max", 160)?;
    let pool = thread_pool(&mut cfg)?;
    cfg.ensure_consumed("polarization")?;

    let probe = ModelParams::from_scaled(lambda, 0.0, eta)?;
    let eps_c = critical_drive(&probe);
    let step = sweep.step();
    let basis = BasisSpec::new(n_max)?;

    // the slack keeps float-boundary grids symmetric around the transition:
    // without it one of two equidistant neighbors can survive the cut
    let kept: Vec<f64> = sweep
        .grid()
        .into_iter()
        .filter(|eps| (eps - eps_c).abs() > step * (1.0 + 1e-9))
        .collect();

    let points: Vec<Result<PointRows, Failure>> = pool.install(|| {
        kept.par_iter()
            .map(|&epsilon| {
                let params = ModelParams::from_scaled(lambda, epsilon, eta)?;
                let mut rows = Vec::new();
                match classify_regime(&params) {
                    Regime::Discrete => {
                        let pol = analytic::polarization(&params)?;
                        rows.push((pol.sigma_minus_expectation, "analytic"));
                        let op = build_for(&params, basis);
                        let (_, vector) = eigenpair_nearest_zero(&op)?;
                        rows.push((sigma_minus_expectation(&vector), "numeric"));
                    }
                    Regime::Continuous => {
                        let pol = analytic::polarization(&params)?;
                        let s = pol.sigma_minus_expectation;
                        rows.push((s, "analytic"));
                        rows.push((Complex64::new(-s.re, s.im), "analytic"));
                    }
                    Regime::Critical => {}
                }
                Ok(PointRows { epsilon, rows })
            })
            .collect()
    });

    let mut table = Table::new(vec!["epsilon", "re_sigma", "im_sigma", "source"]);
    for point in points {
        let point = point?;
        for (value, source) in point.rows {
            table.push(vec![
                Cell::Float(point.epsilon),
                Cell::Float(value.re),
                Cell::Float(value.im),
                Cell::Text(source.into()),
            ]);
        }
    }
    write_output(&out.path, &table.render(out.format))
}
