//! Survival-curve estimation for the first passage of `X`.

use super::sim::{run_replicas, StopKind, StopSpec};
use super::PathConfig;
use crate::analytic::ModelParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct SurvivalPoint {
    pub t: f64,
    pub survival: f64,
    pub std_err: f64,
}

/// Estimate `P(T_b > t)` on a grid by sharing one pass per replica: each path
/// runs to its hit (or the horizon) and the monotone events are read off.
///
/// Censored paths count as survivors at every grid point, which is exact as
/// long as the grid does not exceed the horizon (enforced here).
pub fn survival_curve(
    p: &ModelParams,
    cfg: &PathConfig,
    start: (f64, f64),
    b: f64,
    t_grid: &[f64],
    n_reps: usize,
    seed: u64,
) -> Result<Vec<SurvivalPoint>> {
    if t_grid.is_empty() {
        return Err(Error::Config("empty t grid".to_string()));
    }
    let mut prev = 0.0;
    for &t in t_grid {
        if !(t > prev) {
            return Err(Error::Config(format!("t grid must be strictly increasing at {t}")));
        }
        prev = t;
    }
    if prev > cfg.t_max {
        return Err(Error::Config(format!(
            "grid endpoint {prev} exceeds the horizon t_max = {}",
            cfg.t_max
        )));
    }
    if n_reps == 0 {
        return Err(Error::Config("n_reps must be positive".to_string()));
    }

    let samples = run_replicas(p, cfg, start, &StopSpec::Hit { b }, seed, n_reps)?;
    let mut hit_times: Vec<f64> = samples
        .iter()
        .map(|s| match s.stop_kind {
            StopKind::HitTb => s.stop_time,
            _ => f64::INFINITY,
        })
        .collect();
    hit_times.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let n = n_reps as f64;
    Ok(t_grid
        .iter()
        .map(|&t| {
            let hit_by_t = hit_times.partition_point(|&h| h <= t);
            let surv = (n_reps - hit_by_t) as f64 / n;
            let se = (surv * (1.0 - surv) / n).sqrt();
            SurvivalPoint { t, survival: surv, std_err: se }
        })
        .collect())
}

/// Log-spaced grid over `[t_min, t_max]`.
pub fn log_grid(t_min: f64, t_max: f64, points: usize) -> Vec<f64> {
    assert!(t_min > 0.0 && t_max > t_min && points >= 2);
    let l0 = t_min.ln();
    let l1 = t_max.ln();
    let mut grid: Vec<f64> = (0..points)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (points - 1) as f64).exp())
        .collect();
    // pin the endpoints exactly (exp(ln x) can land one ulp above x)
    grid[0] = t_min;
    grid[points - 1] = t_max;
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> ModelParams {
        ModelParams::new(1.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn survival_is_monotone_and_starts_near_one() {
        let p = sym();
        let cfg = PathConfig::with_dt(1e-3, 100.0);
        let grid = log_grid(1e-2, 100.0, 12);
        let curve = survival_curve(&p, &cfg, (0.0, 0.0), 1.0, &grid, 4000, 37).unwrap();
        assert!(curve[0].survival > 0.95);
        for w in curve.windows(2) {
            assert!(w[1].survival <= w[0].survival);
        }
    }

    #[test]
    fn grid_validation() {
        let p = sym();
        let cfg = PathConfig::with_dt(1e-3, 10.0);
        assert!(survival_curve(&p, &cfg, (0.0, 0.0), 1.0, &[], 10, 0).is_err());
        assert!(survival_curve(&p, &cfg, (0.0, 0.0), 1.0, &[1.0, 1.0], 10, 0).is_err());
        assert!(survival_curve(&p, &cfg, (0.0, 0.0), 1.0, &[1.0, 20.0], 10, 0).is_err());
    }
}
