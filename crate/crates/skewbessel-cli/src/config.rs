//! Experiment configuration: defaults, file parsing (flat `key=value` or
//! JSON), and flag overrides. Flags win over file values, file values over
//! defaults.

use serde::Serialize;
use skewbessel::analytic::{Interval, ModelParams};
use skewbessel::pathsim::PathConfig;
use std::fmt::Write as _;
use std::path::Path;

/// Fully resolved configuration, echoed into every output artifact.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub delta: f64,
    pub eta: f64,
    pub gamma: f64,
    pub c: f64,
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub y: f64,
    pub seed: Option<u64>,
    pub replicas: usize,
    pub dt: f64,
    pub t_max: f64,
    pub zero_band: Option<f64>,
    pub record_stride: u64,
    pub t_min: f64,
    pub t_points: usize,
    pub t_log: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            delta: 1.0,
            eta: 0.0,
            gamma: 1.0,
            c: 1.0,
            a: -1.0,
            b: 1.0,
            x: 0.0,
            y: 0.0,
            seed: None,
            replicas: 10_000,
            dt: 1e-4,
            t_max: 1e4,
            zero_band: None,
            record_stride: 100,
            t_min: 1.0,
            t_points: 25,
            t_log: true,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl ExperimentConfig {
    pub fn params(&self) -> Result<ModelParams, ConfigError> {
        ModelParams::new(self.delta, self.eta, self.gamma, self.c)
            .map_err(|e| ConfigError(e.to_string()))
    }

    pub fn interval(&self) -> Result<Interval, ConfigError> {
        Interval::new(self.a, self.b, self.x).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn path_config(&self) -> Result<PathConfig, ConfigError> {
        let cfg = PathConfig {
            dt: self.dt,
            t_max: self.t_max,
            zero_band: self.zero_band.unwrap_or(self.dt.sqrt() / 4.0),
            record_stride: self.record_stride,
        };
        cfg.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(cfg)
    }

    pub fn require_seed(&self) -> Result<u64, ConfigError> {
        self.seed.ok_or_else(|| {
            ConfigError("randomized commands require an explicit seed (--seed or seed=...)".into())
        })
    }

    pub fn t_grid(&self) -> Result<Vec<f64>, ConfigError> {
        if !(self.t_min > 0.0 && self.t_max > self.t_min) {
            return Err(ConfigError(format!(
                "need 0 < t_min < t_max, got t_min = {}, t_max = {}",
                self.t_min, self.t_max
            )));
        }
        if self.t_points < 2 {
            return Err(ConfigError(format!("t_points = {} must be at least 2", self.t_points)));
        }
        Ok(if self.t_log {
            skewbessel::pathsim::log_grid(self.t_min, self.t_max, self.t_points)
        } else {
            let h = (self.t_max - self.t_min) / (self.t_points - 1) as f64;
            (0..self.t_points).map(|i| self.t_min + h * i as f64).collect()
        })
    }

    /// Apply one `key=value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let fl = |v: &str| -> Result<f64, ConfigError> {
            v.parse().map_err(|_| ConfigError(format!("bad float for {key}: '{v}'")))
        };
        match key {
            "delta" => self.delta = fl(value)?,
            "eta" => self.eta = fl(value)?,
            "gamma" => self.gamma = fl(value)?,
            "c" => self.c = fl(value)?,
            "a" => self.a = fl(value)?,
            "b" => self.b = fl(value)?,
            "x" => self.x = fl(value)?,
            "y" => self.y = fl(value)?,
            "seed" => {
                self.seed = Some(
                    value.parse().map_err(|_| ConfigError(format!("bad seed: '{value}'")))?,
                )
            }
            "replicas" => {
                self.replicas = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad replicas: '{value}'")))?
            }
            "dt" => self.dt = fl(value)?,
            "t_max" => self.t_max = fl(value)?,
            "zero_band" => self.zero_band = Some(fl(value)?),
            "record_stride" => {
                self.record_stride = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad record_stride: '{value}'")))?
            }
            "t_min" => self.t_min = fl(value)?,
            "t_points" => {
                self.t_points = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad t_points: '{value}'")))?
            }
            "t_log" => {
                self.t_log = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad bool for t_log: '{value}'")))?
            }
            other => return Err(ConfigError(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Load assignments from a file: JSON object or flat `key=value` lines
    /// (blank lines and `#` comments ignored).
    pub fn load_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let map: serde_json::Map<String, serde_json::Value> = serde_json::from_str(&text)
                .map_err(|e| ConfigError(format!("bad JSON in {}: {e}", path.display())))?;
            for (k, v) in map {
                let s = match v {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                self.set(&k, &s)?;
            }
        } else {
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    ConfigError(format!("{}:{}: expected key=value", path.display(), lineno + 1))
                })?;
                self.set(k.trim(), v.trim())
                    .map_err(|e| ConfigError(format!("{}:{}: {}", path.display(), lineno + 1, e.0)))?;
            }
        }
        Ok(())
    }

    /// `# key=value` header block embedded in CSV outputs; rerunning with
    /// these assignments reproduces the artifact byte-for-byte.
    pub fn echo_lines(&self, command: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# tool=skewbessel {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "# command={command}");
        let _ = writeln!(s, "# delta={}", self.delta);
        let _ = writeln!(s, "# eta={}", self.eta);
        let _ = writeln!(s, "# gamma={}", self.gamma);
        let _ = writeln!(s, "# c={}", self.c);
        let _ = writeln!(s, "# a={}", self.a);
        let _ = writeln!(s, "# b={}", self.b);
        let _ = writeln!(s, "# x={}", self.x);
        let _ = writeln!(s, "# y={}", self.y);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "# seed={seed}");
        }
        let _ = writeln!(s, "# replicas={}", self.replicas);
        let _ = writeln!(s, "# dt={}", self.dt);
        let _ = writeln!(s, "# t_max={}", self.t_max);
        let _ = writeln!(s, "# zero_band={}", self.zero_band.unwrap_or(self.dt.sqrt() / 4.0));
        let _ = writeln!(s, "# record_stride={}", self.record_stride);
        let _ = writeln!(s, "# t_min={}", self.t_min);
        let _ = writeln!(s, "# t_points={}", self.t_points);
        let _ = writeln!(s, "# t_log={}", self.t_log);
        s
    }
}
