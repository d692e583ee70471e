//! The path loop: `|Y|` by exact squared-Bessel steps, signs flipped on
//! zero-band entry, `X` by trapezoidal accumulation, stops located by linear
//! interpolation in `X` within the crossing step.

use super::besq::step_bessel_squared;
use super::PathConfig;
use crate::analytic::ModelParams;
use crate::error::{Error, Result};
use crate::sampler::RngStream;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Far-field step lengthening: away from the zero band the step grows to
/// `(FAR_STEP_FRAC * y)^2`, i.e. a fixed fraction of the local diffusive
/// scale. The transition stays exact; the zero-hit probability within one
/// such step is of order `exp(-1/(2 FAR_STEP_FRAC^2))`, far below any sample
/// size in use.
const FAR_STEP_FRAC: f64 = 0.04;

/// What to stop on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StopSpec {
    /// First zero of `Y` (zero-band entry).
    Sigma0,
    /// First time `X` reaches the level `b` (from below).
    Hit { b: f64 },
    /// First exit of `X` from `(a, b)`.
    Exit { a: f64, b: f64 },
    /// First zero of `Y` with `X >= b`.
    ZetaHit { b: f64 },
    /// First zero of `Y` with `X` outside `(a, b)`.
    ZetaExit { a: f64, b: f64 },
    /// No stopping; run to the horizon (the sample is censored).
    Horizon,
}

impl StopSpec {
    fn validate(&self, start: (f64, f64)) -> Result<()> {
        let (x0, _y0) = start;
        match *self {
            StopSpec::Hit { b } | StopSpec::ZetaHit { b } => {
                if !(x0 < b) {
                    return Err(Error::Config(format!("start x = {x0} must lie below b = {b}")));
                }
            }
            StopSpec::Exit { a, b } | StopSpec::ZetaExit { a, b } => {
                if !(a < x0 && x0 < b) {
                    return Err(Error::Config(format!(
                        "start x = {x0} must lie inside ({a}, {b})"
                    )));
                }
            }
            StopSpec::Sigma0 | StopSpec::Horizon => {}
        }
        Ok(())
    }
}

/// Why a path stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopKind {
    HitTb,
    ExitTab,
    HitSigma0,
    HitZetaB,
    HitZetaAb,
    CensoredAtHorizon,
}

/// A stopped trajectory sample.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StoppedSample {
    pub stop_time: f64,
    pub y_at_stop: f64,
    pub x_at_stop: f64,
    pub stop_kind: StopKind,
    /// Steps consumed (bookkeeping).
    pub steps: u64,
    /// Excursion signs drawn: (positive, total).
    pub sign_draws: (u64, u64),
}

/// Simulate from `start = (x, y)` until the stop condition or the horizon.
pub fn simulate_to_stop(
    p: &ModelParams,
    cfg: &PathConfig,
    start: (f64, f64),
    spec: &StopSpec,
    rng: &mut RngStream,
) -> Result<StoppedSample> {
    run(p, cfg, start, spec, rng, &mut |_, _, _| {})
}

/// Same as [`simulate_to_stop`] but feeding every `record_stride`-th state
/// `(t, y, x)` to `sink`.
pub fn simulate_traced(
    p: &ModelParams,
    cfg: &PathConfig,
    start: (f64, f64),
    spec: &StopSpec,
    rng: &mut RngStream,
    sink: &mut dyn FnMut(f64, f64, f64),
) -> Result<StoppedSample> {
    run(p, cfg, start, spec, rng, sink)
}

fn run(
    p: &ModelParams,
    cfg: &PathConfig,
    start: (f64, f64),
    spec: &StopSpec,
    rng: &mut RngStream,
    sink: &mut dyn FnMut(f64, f64, f64),
) -> Result<StoppedSample> {
    p.validate()?;
    cfg.validate()?;
    spec.validate(start)?;

    let (x0, y0) = start;
    let band = cfg.zero_band;
    let delta = p.delta;
    let gamma = p.gamma_exp;
    let c = p.c_weight;
    // common exponent fast paths
    let pow_gamma = |m: f64| -> f64 {
        if gamma == 1.0 {
            m
        } else if gamma == 2.0 {
            m * m
        } else {
            m.powf(gamma)
        }
    };
    let v_of = |sign: f64, abs_y: f64| -> f64 {
        let m = pow_gamma(abs_y);
        if sign >= 0.0 {
            m
        } else {
            -c * m
        }
    };

    let mut t = 0.0f64;
    let mut x = x0;
    let mut abs_y = y0.abs();
    let mut q = abs_y * abs_y;
    let mut pos_signs = 0u64;
    let mut total_signs = 0u64;
    let mut sign = if y0 > 0.0 {
        1.0
    } else if y0 < 0.0 {
        -1.0
    } else {
        total_signs += 1;
        let s = if rng.random::<f64>() < 0.5 * (1.0 + p.eta) { 1.0 } else { -1.0 };
        if s > 0.0 {
            pos_signs += 1;
        }
        s
    };
    let mut in_band = abs_y <= band;
    let mut steps = 0u64;

    // immediate-stop degenerate cases
    if in_band {
        match *spec {
            StopSpec::Sigma0 => {
                return Ok(StoppedSample {
                    stop_time: 0.0,
                    y_at_stop: y0,
                    x_at_stop: x0,
                    stop_kind: StopKind::HitSigma0,
                    steps: 0,
                    sign_draws: (pos_signs, total_signs),
                })
            }
            StopSpec::ZetaHit { b } if x0 >= b => {
                return Ok(StoppedSample {
                    stop_time: 0.0,
                    y_at_stop: y0,
                    x_at_stop: x0,
                    stop_kind: StopKind::HitZetaB,
                    steps: 0,
                    sign_draws: (pos_signs, total_signs),
                })
            }
            _ => {}
        }
    }

    let far_frac2 = FAR_STEP_FRAC * FAR_STEP_FRAC;
    let mut since_record = 0u64;
    sink(t, sign * abs_y, x);

    loop {
        if t >= cfg.t_max {
            return Ok(StoppedSample {
                stop_time: cfg.t_max,
                y_at_stop: sign * abs_y,
                x_at_stop: x,
                stop_kind: StopKind::CensoredAtHorizon,
                steps,
                sign_draws: (pos_signs, total_signs),
            });
        }

        // step size: base near zero, diffusive scale far out, clipped by the
        // horizon and by the approach to any X stop level in the direction of
        // motion
        let mut h = cfg.dt.max(far_frac2 * q);
        h = h.min(cfg.t_max - t).max(cfg.dt.min(cfg.t_max - t));
        let v_now = v_of(sign, abs_y);
        let level_ahead: Option<f64> = match *spec {
            StopSpec::Hit { b } => (sign > 0.0).then_some(b - x),
            StopSpec::Exit { a, b } => {
                if sign > 0.0 {
                    Some(b - x)
                } else {
                    Some(x - a)
                }
            }
            _ => None,
        };
        if let Some(dist) = level_ahead {
            let rate = v_now.abs();
            if rate > 0.0 && dist > 0.0 {
                let cap = 0.25 * dist / rate;
                if cap < h {
                    h = cap.max(cfg.dt.min(cfg.t_max - t));
                }
            }
        }

        let q_next = step_bessel_squared(q, delta, h, rng);
        let abs_next = q_next.sqrt();
        let v_next = v_of(sign, abs_next);
        let x_next = x + 0.5 * h * (v_now + v_next);
        let t_next = t + h;
        steps += 1;

        // X-level crossings (X is monotone within a step: the sign is fixed)
        let crossing = match *spec {
            StopSpec::Hit { b } => cross_level(x, x_next, b).map(|f| (f, StopKind::HitTb)),
            StopSpec::Exit { a, b } => cross_level(x, x_next, b)
                .map(|f| (f, StopKind::ExitTab))
                .or_else(|| cross_level(x, x_next, a).map(|f| (f, StopKind::ExitTab))),
            _ => None,
        };
        if let Some((frac, kind)) = crossing {
            let stop_t = t + frac * h;
            let y_stop = sign * (abs_y + frac * (abs_next - abs_y));
            let x_stop = x + frac * (x_next - x);
            return Ok(StoppedSample {
                stop_time: stop_t,
                y_at_stop: y_stop,
                x_at_stop: x_stop,
                stop_kind: kind,
                steps,
                sign_draws: (pos_signs, total_signs),
            });
        }

        // zero-band bookkeeping: sign is redrawn only on entry from outside
        if abs_next <= band {
            if !in_band {
                in_band = true;
                match *spec {
                    StopSpec::Sigma0 => {
                        return Ok(StoppedSample {
                            stop_time: t_next,
                            y_at_stop: sign * abs_next,
                            x_at_stop: x_next,
                            stop_kind: StopKind::HitSigma0,
                            steps,
                            sign_draws: (pos_signs, total_signs),
                        });
                    }
                    StopSpec::ZetaHit { b } if x_next >= b => {
                        return Ok(StoppedSample {
                            stop_time: t_next,
                            y_at_stop: sign * abs_next,
                            x_at_stop: x_next,
                            stop_kind: StopKind::HitZetaB,
                            steps,
                            sign_draws: (pos_signs, total_signs),
                        });
                    }
                    StopSpec::ZetaExit { a, b } if x_next <= a || x_next >= b => {
                        return Ok(StoppedSample {
                            stop_time: t_next,
                            y_at_stop: sign * abs_next,
                            x_at_stop: x_next,
                            stop_kind: StopKind::HitZetaAb,
                            steps,
                            sign_draws: (pos_signs, total_signs),
                        });
                    }
                    _ => {}
                }
                total_signs += 1;
                sign = if rng.random::<f64>() < 0.5 * (1.0 + p.eta) { 1.0 } else { -1.0 };
                if sign > 0.0 {
                    pos_signs += 1;
                }
            }
        } else {
            in_band = false;
        }

        t = t_next;
        x = x_next;
        q = q_next;
        abs_y = abs_next;

        since_record += 1;
        if since_record >= cfg.record_stride {
            since_record = 0;
            sink(t, sign * abs_y, x);
        }
    }
}

fn cross_level(x0: f64, x1: f64, level: f64) -> Option<f64> {
    if x0 == x1 {
        return None;
    }
    if (x0 < level && x1 >= level) || (x0 > level && x1 <= level) {
        Some((level - x0) / (x1 - x0))
    } else {
        None
    }
}

/// Run `n` independent replicas in parallel, one stream per replica index;
/// results are ordered by replica and bit-identical for any worker count.
pub fn run_replicas(
    p: &ModelParams,
    cfg: &PathConfig,
    start: (f64, f64),
    spec: &StopSpec,
    seed: u64,
    n: usize,
) -> Result<Vec<StoppedSample>> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(seed, i as u64);
            simulate_to_stop(p, cfg, start, spec, &mut rng)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{derive_exponents, inverse_gamma_cdf};
    use crate::stats::{binomial_ci, ks_critical, ks_statistic, ks_two_sample, EmpiricalDist};

    fn sym() -> ModelParams {
        ModelParams::new(1.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn sigma0_stop_from_axis_is_immediate() {
        let p = sym();
        let cfg = PathConfig::with_dt(1e-3, 10.0);
        let mut rng = RngStream::new(1, 0);
        let s = simulate_to_stop(&p, &cfg, (0.3, 0.0), &StopSpec::Sigma0, &mut rng).unwrap();
        assert_eq!(s.stop_kind, StopKind::HitSigma0);
        assert_eq!(s.stop_time, 0.0);
        assert_eq!(s.x_at_stop, 0.3);
    }

    #[test]
    fn horizon_censoring_is_first_class() {
        let p = sym();
        let cfg = PathConfig::with_dt(1e-3, 0.05);
        let mut rng = RngStream::new(2, 0);
        let s = simulate_to_stop(&p, &cfg, (0.0, 3.0), &StopSpec::Sigma0, &mut rng).unwrap();
        assert_eq!(s.stop_kind, StopKind::CensoredAtHorizon);
        assert!((s.stop_time - 0.05).abs() < 1e-12);
    }

    #[test]
    fn sigma0_law_quick_ks() {
        // Coarse-step version of the calibration check (the full-resolution
        // run lives in the acceptance suite).
        let p = sym();
        let e = derive_exponents(&p).unwrap();
        let cfg = PathConfig::with_dt(1e-3, 1e9);
        let n = 20_000;
        let res = run_replicas(&p, &cfg, (0.0, 1.0), &StopSpec::Sigma0, 11, n).unwrap();
        let vals: Vec<f64> = res.iter().map(|s| s.x_at_stop).collect();
        let emp = EmpiricalDist::from_samples(vals).unwrap();
        let scale = 1.0 / e.a_const;
        let ks = ks_statistic(&emp, |z| inverse_gamma_cdf(z, e.nu, scale));
        // dt = 1e-3 is coarser than the calibrated setting; allow 2x critical
        let crit = 2.0 * ks_critical(n, 0.01);
        assert!(ks.d < crit, "KS {} vs {crit}", ks.d);
    }

    #[test]
    fn symmetric_exit_probability_is_half() {
        let p = sym();
        let cfg = PathConfig::with_dt(1e-3, 1e6);
        let n = 20_000;
        let res =
            run_replicas(&p, &cfg, (0.0, 0.0), &StopSpec::Exit { a: -1.0, b: 1.0 }, 13, n)
                .unwrap();
        let ups =
            res.iter().filter(|s| s.stop_kind == StopKind::ExitTab && s.x_at_stop >= 0.0).count();
        let (lo, hi) = binomial_ci(ups as u64, n as u64, 0.997).unwrap();
        assert!(lo <= 0.5 && 0.5 <= hi, "P(up) in [{lo}, {hi}]");
    }

    #[test]
    fn sign_frequency_tracks_eta() {
        let p = ModelParams::new(1.0, 0.4, 1.0, 1.0).unwrap();
        let cfg = PathConfig::with_dt(1e-3, 40.0);
        let res = run_replicas(&p, &cfg, (0.0, 0.0), &StopSpec::Horizon, 17, 24).unwrap();
        let (pos, tot) = res
            .iter()
            .fold((0u64, 0u64), |acc, s| (acc.0 + s.sign_draws.0, acc.1 + s.sign_draws.1));
        assert!(tot > 500, "need many excursions, got {tot}");
        let frac = pos as f64 / tot as f64;
        let se = (0.7f64 * 0.3 / tot as f64).sqrt();
        assert!((frac - 0.7).abs() < 4.0 * se, "frac {frac} (se {se})");
    }

    #[test]
    fn scaling_property_two_sample() {
        // (k^(-1-g/2) X_{kt}, k^(-1/2) Y_{kt}) at fixed t matches (X_t, Y_t).
        let p = sym();
        let k = 4.0;
        let t = 0.5;
        let n = 10_000;
        let cfg1 = PathConfig { t_max: t, ..PathConfig::with_dt(1e-3, 1.0) };
        let cfg2 = PathConfig { t_max: k * t, ..PathConfig::with_dt(1e-3, 1.0) };
        let base = run_replicas(&p, &cfg1, (0.0, 0.0), &StopSpec::Horizon, 19, n).unwrap();
        let scaled = run_replicas(&p, &cfg2, (0.0, 0.0), &StopSpec::Horizon, 23, n).unwrap();
        let x1: Vec<f64> = base.iter().map(|s| s.x_at_stop).collect();
        let y1: Vec<f64> = base.iter().map(|s| s.y_at_stop).collect();
        let kx = k.powf(-1.0 - p.gamma_exp / 2.0);
        let ky = k.powf(-0.5);
        let x2: Vec<f64> = scaled.iter().map(|s| kx * s.x_at_stop).collect();
        let y2: Vec<f64> = scaled.iter().map(|s| ky * s.y_at_stop).collect();
        let crit = 1.6276 * (2.0f64 / n as f64).sqrt();
        let dx = ks_two_sample(
            &EmpiricalDist::from_samples(x1).unwrap(),
            &EmpiricalDist::from_samples(x2).unwrap(),
        );
        let dy = ks_two_sample(
            &EmpiricalDist::from_samples(y1).unwrap(),
            &EmpiricalDist::from_samples(y2).unwrap(),
        );
        assert!(dx < crit, "X coordinate KS {dx} vs {crit}");
        assert!(dy < crit, "Y coordinate KS {dy} vs {crit}");
    }

    #[test]
    fn replicas_are_worker_count_independent() {
        let p = sym();
        let cfg = PathConfig::with_dt(1e-3, 1e4);
        let a = run_replicas(&p, &cfg, (0.0, 1.0), &StopSpec::Sigma0, 29, 64).unwrap();
        // same seed, forced single-thread pool
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool
            .install(|| run_replicas(&p, &cfg, (0.0, 1.0), &StopSpec::Sigma0, 29, 64))
            .unwrap();
        for (s1, s2) in a.iter().zip(&b) {
            assert_eq!(s1.stop_time.to_bits(), s2.stop_time.to_bits());
            assert_eq!(s1.x_at_stop.to_bits(), s2.x_at_stop.to_bits());
        }
    }

    #[test]
    fn trace_respects_stride() {
        let p = sym();
        let cfg = PathConfig { record_stride: 10, ..PathConfig::with_dt(1e-3, 0.1) };
        let mut rng = RngStream::new(31, 0);
        let mut rows = Vec::new();
        let s = simulate_traced(&p, &cfg, (0.0, 1.0), &StopSpec::Horizon, &mut rng, &mut |t, y, x| {
            rows.push((t, y, x))
        })
        .unwrap();
        assert!(rows.len() as u64 >= s.steps / 10);
        assert!((rows.len() as u64) < s.steps / 10 + 3);
        assert_eq!(rows[0], (0.0, 1.0, 0.0));
    }

    #[test]
    fn stop_spec_validation() {
        let p = sym();
        let cfg = PathConfig::with_dt(1e-3, 1.0);
        let mut rng = RngStream::new(0, 0);
        assert!(
            simulate_to_stop(&p, &cfg, (2.0, 0.0), &StopSpec::Hit { b: 1.0 }, &mut rng).is_err()
        );
        assert!(simulate_to_stop(&p, &cfg, (2.0, 0.0), &StopSpec::Exit { a: -1.0, b: 1.0 }, &mut rng)
            .is_err());
    }
}
