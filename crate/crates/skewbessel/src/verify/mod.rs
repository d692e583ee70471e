//! Named invariant checks orchestrated by `verify` runs: each check carries
//! the law it exercises, the computed statistic, its threshold and pass/fail.

mod analytic_suite;
mod pathsim_suite;
mod sampler_suite;

pub use analytic_suite::analytic_suite;
pub use pathsim_suite::pathsim_suite;
pub use sampler_suite::sampler_suite;

use crate::analytic::{Interval, ModelParams};
use crate::error::Result;
use crate::pathsim::PathConfig;
use serde::{Deserialize, Serialize};

/// One verification check result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The law or identity exercised, as a human-readable slug.
    pub law: String,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn below(name: &str, law: &str, statistic: f64, threshold: f64) -> Self {
        Check {
            name: name.to_string(),
            law: law.to_string(),
            statistic,
            threshold,
            pass: statistic.is_finite() && statistic < threshold,
        }
    }
}

/// Shared settings for the verification suites.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub params: ModelParams,
    pub interval: Interval,
    pub start_y: f64,
    pub seed: u64,
    pub replicas: usize,
    pub path: PathConfig,
}

impl VerifyConfig {
    pub fn defaults(seed: u64) -> Self {
        VerifyConfig {
            params: ModelParams { delta: 1.0, eta: 0.0, gamma_exp: 1.0, c_weight: 1.0 },
            interval: Interval { a: -1.0, b: 1.0, x: 0.0 },
            start_y: 0.5,
            seed,
            replicas: 20_000,
            path: PathConfig::with_dt(1e-4, 1e9),
        }
    }
}

/// Run the requested suites in order.
pub fn run_suites(cfg: &VerifyConfig, suites: &[&str]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for s in suites {
        match *s {
            "analytic" => out.extend(analytic_suite(cfg)?),
            "sampler" => out.extend(sampler_suite(cfg)?),
            "pathsim" => out.extend(pathsim_suite(cfg)?),
            other => {
                return Err(crate::error::Error::Config(format!("unknown suite '{other}'")));
            }
        }
    }
    Ok(out)
}
