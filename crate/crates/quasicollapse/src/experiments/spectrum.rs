//! `spectrum`: quasienergies nearest zero across a drive sweep.
//!
//! Each sweep point runs the doubling truncation ladder and reports the
//! `levels` quasienergies nearest zero in ascending order, each with a flag
//! saying whether that level's drift between the last two truncations beat
//! the tolerance. Above the critical drive the flags go false: the collapsed
//! spectrum has no truncation-stable levels, and that is the finding, not a
//! failure. With `require_convergence = true` a non-converged point instead
//! stops the run with exit code 3.

use rayon::prelude::*;

use crate::eig::{converged_spectrum_capped, k_nearest_zero};
use crate::fock::{build_h0, build_h_eta, BasisSpec, TruncatedOperator};
use crate::model::ModelParams;

use super::config::{ConfigMap, LadderSpec, SweepSpec};
use super::table::{write_output, Cell, Format, OutputSpec, Table};
use super::{thread_pool, Failure};

pub(super) fn build_for(params: &ModelParams, basis: BasisSpec) -> TruncatedOperator {
    if params.eta() == 0.0 {
        build_h0(params, basis)
    } else {
        build_h_eta(params, basis)
    }
}

struct Point {
    epsilon: f64,
    levels: Vec<(f64, bool)>,
    converged: bool,
}

pub(super) fn sweep_point(
    lambda: f64,
    epsilon: f64,
    eta: f64,
    levels: usize,
    ladder: LadderSpec,
) -> Result<(Vec<(f64, bool)>, bool), Failure> {
    let params = ModelParams::from_scaled(lambda, epsilon, eta)?;
    let (spectrum, cert) = converged_spectrum_capped(
        |basis| build_for(&params, basis),
        levels,
        ladder.tol,
        ladder.start,
        ladder.cap,
    )?;
    let tracked = k_nearest_zero(&spectrum.eigenvalues, levels);
    let rows = tracked
        .into_iter()
        .enumerate()
        .map(|(i, q)| (q, cert.drift.get(i).is_some_and(|d| *d < ladder.tol)))
        .collect();
    Ok((rows, cert.converged))
}

pub(super) fn run(mut cfg: ConfigMap) -> Result<(), Failure> {
    let out = OutputSpec::take(&mut cfg, Format::Csv)?;
    let lambda = cfg.f64_or("lambda", 1.0)?;
    let eta = cfg.f64_or("eta", 0.0)?;
    let sweep = SweepSpec::take(&mut cfg, "spectrum")?;
    let levels = cfg.usize_or("levels", 8)?;
    let ladder = LadderSpec::take(&mut cfg)?;
    let require_convergence = cfg.bool_or("require_convergence", false)?;
    let pool = thread_pool(&mut cfg)?;
    cfg.ensure_consumed("spectrum")?;
    if levels == 0 {
        return Err(Failure::config("`levels` must be at least 1"));
    }

    let grid = sweep.grid();
    let points: Vec<Result<Point, Failure>> = pool.install(|| {
        grid.par_iter()
            .map(|&epsilon| {
                sweep_point(lambda, epsilon, eta, levels, ladder)
                    .map(|(levels, converged)| Point { epsilon, levels, converged })
            })
            .collect()
    });

    let mut table = Table::new(vec!["epsilon", "level_index", "quasienergy", "trusted_flag"]);
    for point in points {
        let point = point?;
        if require_convergence && !point.converged {
            return Err(Failure::cap(format!(
                "no convergence at epsilon = {} within the n_max cap {}",
                point.epsilon, ladder.cap
            )));
        }
        for (index, (quasienergy, trusted)) in point.levels.iter().enumerate() {
            table.push(vec![
                Cell::Float(point.epsilon),
                Cell::Int(index),
                Cell::Float(*quasienergy),
                Cell::Bool(*trusted),
            ]);
        }
    }
    write_output(&out.path, &table.render(out.format))
}
