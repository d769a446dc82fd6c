//! Flat key=value run configuration: file parsing, flag overlays, and typed
//! extraction with line/field diagnostics.
//!
//! The format is one `key = value` pair per line; `#` starts a comment
//! (full-line or trailing); blank lines are skipped. A later assignment to
//! the same key wins, and command-line flags of the same names overlay the
//! file. Commands take the values they understand and anything left over is
//! reported as an unknown key, with its source line when it came from a file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;

use super::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    File(usize),
    Flag,
}

impl Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::File(line) => write!(f, "config line {line}"),
            Source::Flag => write!(f, "command line"),
        }
    }
}

/// Parsed configuration: a consumable key-value store. Typed getters remove
/// entries as they read them so that leftovers can be flagged as unknown.
#[derive(Debug, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, (String, Source)>,
}

impl ConfigMap {
    pub fn from_file(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Failure::config(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Failure::config(format!(
                    "config line {line_no}: expected key=value, got `{line}`"
                )));
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(Failure::config(format!("config line {line_no}: empty key")));
            }
            entries.insert(key.to_string(), (value.to_string(), Source::File(line_no)));
        }
        Ok(Self { entries })
    }

    /// Overlay one flag value; flags beat file entries of the same name.
    pub fn set_flag(&mut self, key: &str, value: Option<&str>) {
        if let Some(v) = value {
            self.entries.insert(key.to_string(), (v.to_string(), Source::Flag));
        }
    }

    fn take_raw(&mut self, key: &str) -> Option<(String, Source)> {
        self.entries.remove(key)
    }

    pub fn take_string(&mut self, key: &str) -> Option<String> {
        self.take_raw(key).map(|(v, _)| v)
    }

    pub fn take_f64(&mut self, key: &str) -> Result<Option<f64>, Failure> {
        match self.take_raw(key) {
            None => Ok(None),
            Some((v, src)) => v.parse::<f64>().map(Some).map_err(|_| {
                Failure::config(format!("{src}: `{key}` wants a number, got `{v}`"))
            }),
        }
    }

    pub fn take_usize(&mut self, key: &str) -> Result<Option<usize>, Failure> {
        match self.take_raw(key) {
            None => Ok(None),
            Some((v, src)) => v.parse::<usize>().map(Some).map_err(|_| {
                Failure::config(format!("{src}: `{key}` wants a non-negative integer, got `{v}`"))
            }),
        }
    }

    pub fn take_u64(&mut self, key: &str) -> Result<Option<u64>, Failure> {
        match self.take_raw(key) {
            None => Ok(None),
            Some((v, src)) => v.parse::<u64>().map(Some).map_err(|_| {
                Failure::config(format!("{src}: `{key}` wants a non-negative integer, got `{v}`"))
            }),
        }
    }

    pub fn take_bool(&mut self, key: &str) -> Result<Option<bool>, Failure> {
        match self.take_raw(key) {
            None => Ok(None),
            Some((v, src)) => match v.as_str() {
                "true" | "1" | "yes" => Ok(Some(true)),
                "false" | "0" | "no" => Ok(Some(false)),
                _ => Err(Failure::config(format!(
                    "{src}: `{key}` wants true/false, got `{v}`"
                ))),
            },
        }
    }

    pub fn require_f64(&mut self, key: &str, command: &str) -> Result<f64, Failure> {
        self.take_f64(key)?
            .ok_or_else(|| Failure::config(format!("`{command}` needs `{key}` (config or flag)")))
    }

    pub fn require_usize(&mut self, key: &str, command: &str) -> Result<usize, Failure> {
        self.take_usize(key)?
            .ok_or_else(|| Failure::config(format!("`{command}` needs `{key}` (config or flag)")))
    }

    pub fn f64_or(&mut self, key: &str, default: f64) -> Result<f64, Failure> {
        Ok(self.take_f64(key)?.unwrap_or(default))
    }

    pub fn usize_or(&mut self, key: &str, default: usize) -> Result<usize, Failure> {
        Ok(self.take_usize(key)?.unwrap_or(default))
    }

    pub fn bool_or(&mut self, key: &str, default: bool) -> Result<bool, Failure> {
        Ok(self.take_bool(key)?.unwrap_or(default))
    }

    /// Error out if any keys were never consumed by the command.
    pub fn ensure_consumed(&self, command: &str) -> Result<(), Failure> {
        if let Some((key, (_, src))) = self.entries.iter().next() {
            return Err(Failure::config(format!(
                "{src}: unknown key `{key}` for `{command}`"
            )));
        }
        Ok(())
    }
}

/// Shared sweep-grid spec: `epsilon_start`, `epsilon_stop`, `epsilon_count`.
#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepSpec {
    pub fn take(cfg: &mut ConfigMap, command: &str) -> Result<Self, Failure> {
        let start = cfg.require_f64("epsilon_start", command)?;
        let stop = cfg.require_f64("epsilon_stop", command)?;
        let count = cfg.require_usize("epsilon_count", command)?;
        Self::new(start, stop, count)
    }

    pub fn take_or(
        cfg: &mut ConfigMap,
        defaults: (f64, f64, usize),
    ) -> Result<Self, Failure> {
        let start = cfg.f64_or("epsilon_start", defaults.0)?;
        let stop = cfg.f64_or("epsilon_stop", defaults.1)?;
        let count = cfg.usize_or("epsilon_count", defaults.2)?;
        Self::new(start, stop, count)
    }

    fn new(start: f64, stop: f64, count: usize) -> Result<Self, Failure> {
        if count < 2 {
            return Err(Failure::config(format!(
                "sweep needs epsilon_count >= 2, got {count}"
            )));
        }
        if !(start.is_finite() && stop.is_finite() && start <= stop) {
            return Err(Failure::config(format!(
                "sweep range must be ordered and finite, got [{start}, {stop}]"
            )));
        }
        Ok(Self { start, stop, count })
    }

    pub fn step(&self) -> f64 {
        (self.stop - self.start) / (self.count - 1) as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = self.step();
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

/// Truncation-ladder controls: `tol` (drift tolerance), `start` (first
/// truncation), `n_max` (ladder cap).
#[derive(Debug, Clone, Copy)]
pub struct LadderSpec {
    pub tol: f64,
    pub start: usize,
    pub cap: usize,
}

impl LadderSpec {
    pub fn take(cfg: &mut ConfigMap) -> Result<Self, Failure> {
        let tol = cfg.f64_or("tol", 1e-8)?;
        let cap = cfg.usize_or("n_max", crate::eig::CONVERGENCE_CAP)?;
        let start = cfg.usize_or("start", crate::eig::CONVERGENCE_START)?;
        if !(tol > 0.0) {
            return Err(Failure::config(format!("`tol` must be positive, got {tol}")));
        }
        if cap == 0 || start == 0 {
            return Err(Failure::config("`n_max` and `start` must be at least 1"));
        }
        Ok(Self { tol, start: start.min(cap), cap })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_overrides() {
        let text = "\n# full comment\nlambda = 1.5\neta=0.25  # trailing\n\nlambda = 2.0\n";
        let mut cfg = ConfigMap::parse(text).unwrap();
        assert_eq!(cfg.take_f64("lambda").unwrap(), Some(2.0));
        assert_eq!(cfg.take_f64("eta").unwrap(), Some(0.25));
        cfg.ensure_consumed("test").unwrap();
    }

    #[test]
    fn flags_beat_file_entries() {
        let mut cfg = ConfigMap::parse("levels = 4\n").unwrap();
        cfg.set_flag("levels", Some("9"));
        cfg.set_flag("tol", None);
        assert_eq!(cfg.take_usize("levels").unwrap(), Some(9));
        assert_eq!(cfg.take_f64("tol").unwrap(), None);
    }

    #[test]
    fn diagnostics_name_line_and_key() {
        let err = ConfigMap::parse("a = 1\nnonsense\n").unwrap_err();
        assert!(err.message.contains("line 2"), "{}", err.message);

        let mut cfg = ConfigMap::parse("count = twelve\n").unwrap();
        let err = cfg.take_usize("count").unwrap_err();
        assert!(err.message.contains("config line 1"), "{}", err.message);
        assert!(err.message.contains("count"), "{}", err.message);

        let cfg = ConfigMap::parse("mystery = 3\n").unwrap();
        let err = cfg.ensure_consumed("spectrum").unwrap_err();
        assert!(err.message.contains("mystery"), "{}", err.message);
        assert!(err.message.contains("spectrum"), "{}", err.message);
    }

    #[test]
    fn sweep_invariants() {
        let mut cfg = ConfigMap::parse("epsilon_start=0\nepsilon_stop=1\nepsilon_count=1\n").unwrap();
        assert!(SweepSpec::take(&mut cfg, "spectrum").is_err());

        let mut cfg = ConfigMap::parse("epsilon_start=2\nepsilon_stop=1\nepsilon_count=5\n").unwrap();
        assert!(SweepSpec::take(&mut cfg, "spectrum").is_err());

        let mut cfg =
            ConfigMap::parse("epsilon_start=0\nepsilon_stop=0.4\nepsilon_count=5\n").unwrap();
        let sweep = SweepSpec::take(&mut cfg, "spectrum").unwrap();
        let grid = sweep.grid();
        assert_eq!(grid.len(), 5);
        assert_eq!(grid[0], 0.0);
        assert!((grid[4] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn ladder_validation() {
        let mut cfg = ConfigMap::parse("tol=-1\n").unwrap();
        assert!(LadderSpec::take(&mut cfg).is_err());

        let mut cfg = ConfigMap::parse("n_max=256\nstart=512\n").unwrap();
        let ladder = LadderSpec::take(&mut cfg).unwrap();
        assert_eq!(ladder.cap, 256);
        assert_eq!(ladder.start, 256);
    }
}
