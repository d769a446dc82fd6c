//! `dirac`: relativistic Landau levels of a massless charge in static
//! crossed fields, tabulated per level with both signs.
//!
//! The closed form only exists in the magnetic-dominated regime; for
//! electric-dominated or critical fields the energy cells stay empty while
//! the regime column says why. `require_regime` turns an unexpected regime
//! into a hard error for scripted runs.

use crate::analytic::{dirac_energy_discrete, Sign};
use crate::model::{FieldConfig, Regime};

use super::config::ConfigMap;
use super::table::{write_output, Cell, Format, OutputSpec, Table};
use super::Failure;

fn parse_regime(name: &str) -> Result<Regime, Failure> {
    match name {
        "discrete" => Ok(Regime::Discrete),
        "critical" => Ok(Regime::Critical),
        "continuous" => Ok(Regime::Continuous),
        other => Err(Failure::config(format!(
            "`require_regime` must be discrete, critical, or continuous, got `{other}`"
        ))),
    }
}

pub(super) fn run(mut cfg: ConfigMap) -> Result<(), Failure> {
    let out = OutputSpec::take(&mut cfg, Format::Csv)?;
    let e_field = cfg.require_f64("e_field", "dirac")?;
    let b_field = cfg.require_f64("b_field", "dirac")?;
    let k2 = cfg.f64_or("k2", 0.0)?;
    let k3 = cfg.f64_or("k3", 0.0)?;
    let n_levels = cfg.usize_or("n_levels", 4)?;
    let required = cfg.take_string("require_regime");
    cfg.ensure_consumed("dirac")?;
    if n_levels == 0 {
        return Err(Failure::config("`n_levels` must be at least 1"));
    }

    let fields = FieldConfig::with_wavenumbers(e_field, b_field, k2, k3)?;
    let regime = fields.regime();
    if let Some(name) = required {
        let wanted = parse_regime(name.trim())?;
        if wanted != regime {
            return Err(Failure::config(format!(
                "fields sit in the {regime} regime, but require_regime = {wanted}"
            )));
        }
    }

    let mut table = Table::new(vec![
        "n",
        "k2",
        "k3",
        "E",
        "B",
        "energy_plus",
        "energy_minus",
        "regime",
    ]);
    for n in 0..n_levels {
        let (plus, minus) = if regime == Regime::Discrete {
            (
                Cell::Float(dirac_energy_discrete(n, Sign::Plus, &fields)?),
                Cell::Float(dirac_energy_discrete(n, Sign::Minus, &fields)?),
            )
        } else {
            (Cell::Empty, Cell::Empty)
        };
        table.push(vec![
            Cell::Int(n),
            Cell::Float(k2),
            Cell::Float(k3),
            Cell::Float(e_field),
            Cell::Float(b_field),
            plus,
            minus,
            Cell::Text(regime.to_string()),
        ]);
    }
    write_output(&out.path, &table.render(out.format))
}
