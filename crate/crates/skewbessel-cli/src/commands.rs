//! Command implementations. Every writer embeds the resolved config so
//! outputs are reproducible from their own headers.

use crate::config::{ConfigError, ExperimentConfig};
use crate::{DensityKind, SampleKind, StopKindArg, SuiteArg};
use serde::Serialize;
use skewbessel::analytic::{
    self, derive_exponents, harmonic_h, LawSpec, Sigma0Law,
};
use skewbessel::pathsim::{self, StopKind, StopSpec};
use skewbessel::sampler::{self, RngStream};
use skewbessel::stats::tail_exponent_fit;
use skewbessel::verify::{Check, VerifyConfig};
use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

type CmdResult = Result<ExitCode, ConfigError>;

fn emit(out: Option<&Path>, content: &str) -> Result<(), ConfigError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| ConfigError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn exponents(cfg: &ExperimentConfig) -> CmdResult {
    let p = cfg.params()?;
    let e = derive_exponents(&p).map_err(|er| ConfigError(er.to_string()))?;
    println!("{:<14} {:>22}", "quantity", "value");
    println!("{:<14} {:>22.16}", "nu", e.nu);
    println!("{:<14} {:>22.16}", "theta", e.theta);
    println!("{:<14} {:>22.16}", "alpha", e.alpha);
    println!("{:<14} {:>22.16}", "beta", e.beta);
    println!("{:<14} {:>22.16}", "A", e.a_const);
    println!("{:<14} {:>22.16}", "moment_ratio", e.moment_ratio);
    println!("{:<14} {:>22.3e}", "alpha+beta-nu", e.alpha + e.beta - e.nu);
    Ok(ExitCode::SUCCESS)
}

fn law_for_density(cfg: &ExperimentConfig, which: DensityKind) -> Result<LawSpec, ConfigError> {
    let p = cfg.params()?;
    let err = |e: skewbessel::Error| ConfigError(e.to_string());
    match which {
        DensityKind::XSigma0 => match analytic::x_sigma0_law(&p, cfg.x, cfg.y).map_err(err)? {
            Sigma0Law::Law(l) => Ok(l),
            Sigma0Law::PointMass(_) => {
                Err(ConfigError("x-sigma0 with y = 0 is a point mass at x; no density".into()))
            }
        },
        DensityKind::Overshoot => analytic::x_zeta_b_overshoot_law(&p, cfg.x, cfg.b).map_err(err),
        DensityKind::ExitUp => {
            Ok(analytic::exit_system_laws(&p, &cfg.interval()?).map_err(err)?.up)
        }
        DensityKind::ExitDown => {
            Ok(analytic::exit_system_laws(&p, &cfg.interval()?).map_err(err)?.down)
        }
        DensityKind::ExitPositionY0 => {
            analytic::exit_position_law_y0(&p, &cfg.interval()?).map_err(err)
        }
        DensityKind::ExitPositionGeneral => {
            if cfg.y == 0.0 {
                return Err(ConfigError(
                    "exit-position-general needs y != 0 (use exit-position-y0 instead)".into(),
                ));
            }
            analytic::exit_position_law_general(&p, &cfg.interval()?, cfg.y).map_err(err)
        }
    }
}

pub fn density(
    cfg: &ExperimentConfig,
    which: DensityKind,
    z_min: Option<f64>,
    z_max: Option<f64>,
    z_points: usize,
    out: Option<&Path>,
) -> CmdResult {
    if z_points < 2 {
        return Err(ConfigError("z_points must be at least 2".into()));
    }
    let law = law_for_density(cfg, which)?;
    let q = |p: f64| law.quantile(p).map_err(|e| ConfigError(e.to_string()));
    let lo = match z_min {
        Some(v) => v,
        None => q(1e-5)?,
    };
    let hi = match z_max {
        Some(v) => v,
        None => q(1.0 - 1e-5)?,
    };
    if !(hi > lo) {
        return Err(ConfigError(format!("need z_min < z_max, got {lo} and {hi}")));
    }
    let mut s = cfg.echo_lines("density");
    let _ = writeln!(s, "# which={which:?}");
    let _ = writeln!(s, "z,pdf,cdf");
    let h = (hi - lo) / (z_points - 1) as f64;
    for i in 0..z_points {
        let z = lo + h * i as f64;
        let _ = writeln!(s, "{},{},{}", z, law.pdf(z), law.cdf(z));
    }
    emit(out, &s)?;
    Ok(ExitCode::SUCCESS)
}

pub fn sample(
    cfg: &ExperimentConfig,
    which: SampleKind,
    n: Option<usize>,
    out: Option<&Path>,
) -> CmdResult {
    let seed = cfg.require_seed()?;
    let n = n.unwrap_or(cfg.replicas);
    let p = cfg.params()?;
    let e = derive_exponents(&p).map_err(|er| ConfigError(er.to_string()))?;
    let mut s = cfg.echo_lines("sample");
    let err = |er: skewbessel::Error| ConfigError(er.to_string());

    match which {
        SampleKind::XSigma0 => {
            if cfg.y == 0.0 {
                return Err(ConfigError("x-sigma0 sampling needs y != 0".into()));
            }
            let scale = if cfg.y > 0.0 {
                cfg.y.powf(2.0 + p.gamma_exp) / e.a_const
            } else {
                p.c_weight * (-cfg.y).powf(2.0 + p.gamma_exp) / e.a_const
            };
            let (x, up) = (cfg.x, cfg.y > 0.0);
            let draws = sampler::draw_many(seed, n, move |r| {
                let u = sampler::sample_inverse_gamma(e.nu, scale, r).unwrap();
                if up {
                    x + u
                } else {
                    x - u
                }
            });
            let _ = writeln!(s, "x_sigma0");
            for v in draws {
                let _ = writeln!(s, "{v}");
            }
        }
        SampleKind::Overshoot => {
            if !(cfg.x < cfg.b) {
                return Err(ConfigError(format!("need x < b, got x = {}, b = {}", cfg.x, cfg.b)));
            }
            let width = cfg.b - cfg.x;
            let draws =
                sampler::draw_many(seed, n, move |r| sampler::sample_overshoot(&e, width, r).unwrap());
            let _ = writeln!(s, "overshoot");
            for v in draws {
                let _ = writeln!(s, "{v}");
            }
        }
        SampleKind::ExitSystem => {
            let iv = cfg.interval()?;
            let mut sys = sampler::ExitSystemSampler::new(&p, &iv).map_err(err)?;
            let mut rng = RngStream::new(seed, 0);
            let _ = writeln!(s, "side,magnitude");
            for _ in 0..n {
                let (side, z) = sys.sample(&mut rng).map_err(err)?;
                let _ = writeln!(s, "{side},{z}");
            }
        }
        SampleKind::ExitPosition => {
            let iv = cfg.interval()?;
            let law = analytic::exit_position_law_y0(&p, &iv).map_err(err)?;
            let law = std::sync::Arc::new(law);
            let law2 = std::sync::Arc::clone(&law);
            let draws =
                sampler::draw_many(seed, n, move |r| sampler::sample_exit_position(&law2, r));
            let _ = writeln!(s, "y_exit");
            for v in draws {
                let _ = writeln!(s, "{v}");
            }
        }
        SampleKind::XZetaChain => {
            if !(cfg.x < cfg.b || (cfg.x == cfg.b && cfg.y < 0.0)) {
                return Err(ConfigError(format!(
                    "need x < b, or x = b with y < 0; got x = {}, b = {}, y = {}",
                    cfg.x, cfg.b, cfg.y
                )));
            }
            let (x, y, b) = (cfg.x, cfg.y, cfg.b);
            let draws = sampler::draw_many(seed, n, move |r| {
                sampler::sample_x_zeta_from(&p, x, y, b, r).unwrap()
            });
            let _ = writeln!(s, "x_zeta,steps");
            for (v, k) in draws {
                let _ = writeln!(s, "{v},{k}");
            }
        }
    }
    emit(out, &s)?;
    Ok(ExitCode::SUCCESS)
}

fn stop_spec(cfg: &ExperimentConfig, stop: StopKindArg) -> StopSpec {
    match stop {
        StopKindArg::Sigma0 => StopSpec::Sigma0,
        StopKindArg::Hit => StopSpec::Hit { b: cfg.b },
        StopKindArg::Exit => StopSpec::Exit { a: cfg.a, b: cfg.b },
        StopKindArg::ZetaHit => StopSpec::ZetaHit { b: cfg.b },
        StopKindArg::ZetaExit => StopSpec::ZetaExit { a: cfg.a, b: cfg.b },
        StopKindArg::Horizon => StopSpec::Horizon,
    }
}

fn kind_name(kind: StopKind) -> &'static str {
    match kind {
        StopKind::HitTb => "hit_T_b",
        StopKind::ExitTab => "exit_T_ab",
        StopKind::HitSigma0 => "hit_sigma0",
        StopKind::HitZetaB => "hit_zeta_b",
        StopKind::HitZetaAb => "hit_zeta_ab",
        StopKind::CensoredAtHorizon => "censored_at_horizon",
    }
}

pub fn simulate(
    cfg: &ExperimentConfig,
    stop: StopKindArg,
    n: Option<usize>,
    out: Option<&Path>,
    trajectory: Option<&Path>,
) -> CmdResult {
    let seed = cfg.require_seed()?;
    let n = n.unwrap_or(cfg.replicas);
    let p = cfg.params()?;
    let path_cfg = cfg.path_config()?;
    let spec = stop_spec(cfg, stop);
    let err = |er: skewbessel::Error| ConfigError(er.to_string());

    if let Some(traj_path) = trajectory {
        let mut rng = RngStream::new(seed, 0);
        let mut t = cfg.echo_lines("simulate-trajectory");
        let _ = writeln!(t, "t,y,x");
        skewbessel::pathsim::simulate_traced(
            &p,
            &path_cfg,
            (cfg.x, cfg.y),
            &spec,
            &mut rng,
            &mut |ti, yi, xi| {
                let _ = writeln!(t, "{ti},{yi},{xi}");
            },
        )
        .map_err(err)?;
        std::fs::write(traj_path, t)
            .map_err(|e| ConfigError(format!("cannot write {}: {e}", traj_path.display())))?;
    }

    let res = pathsim::run_replicas(&p, &path_cfg, (cfg.x, cfg.y), &spec, seed, n).map_err(err)?;
    let mut s = cfg.echo_lines("simulate");
    let _ = writeln!(s, "stop_time,y_at_stop,x_at_stop,stop_kind,steps");
    for r in &res {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.stop_time,
            r.y_at_stop,
            r.x_at_stop,
            kind_name(r.stop_kind),
            r.steps
        );
    }
    emit(out, &s)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SurvivalSummary {
    theta_hat: f64,
    theta_se: f64,
    kappa_hat: f64,
    theta_analytic: f64,
    prefactor_h: f64,
    fit_points: usize,
}

pub fn survival(cfg: &ExperimentConfig, out: Option<&Path>) -> CmdResult {
    let seed = cfg.require_seed()?;
    let p = cfg.params()?;
    let e = derive_exponents(&p).map_err(|er| ConfigError(er.to_string()))?;
    let path_cfg = cfg.path_config()?;
    let grid = cfg.t_grid()?;
    let curve = pathsim::survival_curve(
        &p,
        &path_cfg,
        (cfg.x, cfg.y),
        cfg.b,
        &grid,
        cfg.replicas,
        seed,
    )
    .map_err(|er| ConfigError(er.to_string()))?;

    let mut s = cfg.echo_lines("survival");
    let _ = writeln!(s, "t,p,se");
    for pt in &curve {
        let _ = writeln!(s, "{},{},{}", pt.t, pt.survival, pt.std_err);
    }

    // fit over the top decade, positive-survival points only
    let t_hi = grid.last().copied().unwrap();
    let fit_pts: Vec<(f64, f64, f64)> = curve
        .iter()
        .filter(|pt| pt.t >= t_hi / 10.0 && pt.survival > 0.0)
        .map(|pt| (pt.t, pt.survival, pt.std_err))
        .collect();
    let fit = tail_exponent_fit(&fit_pts).map_err(|er| ConfigError(er.to_string()))?;
    let summary = SurvivalSummary {
        theta_hat: fit.theta_hat,
        theta_se: fit.theta_se,
        kappa_hat: fit.kappa_hat,
        theta_analytic: e.theta,
        prefactor_h: harmonic_h(&p, cfg.b - cfg.x, cfg.y),
        fit_points: fit_pts.len(),
    };
    let json = serde_json::to_string_pretty(&summary).expect("serializable");
    emit(out, &s)?;
    if out.is_some() {
        println!("{json}");
    } else {
        eprintln!("{json}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a ExperimentConfig,
    suites: Vec<String>,
    checks: Vec<Check>,
    summary: VerifySummary,
}

#[derive(Serialize)]
struct VerifySummary {
    total: usize,
    passed: usize,
    failed: usize,
}

pub fn verify(cfg: &ExperimentConfig, suite: SuiteArg, out: Option<&Path>) -> CmdResult {
    let seed = cfg.require_seed()?;
    let vcfg = VerifyConfig {
        params: cfg.params()?,
        interval: cfg.interval()?,
        start_y: if cfg.y != 0.0 { cfg.y } else { 0.5 },
        seed,
        replicas: cfg.replicas,
        path: cfg.path_config()?,
    };
    let suites: Vec<&str> = match suite {
        SuiteArg::Analytic => vec!["analytic"],
        SuiteArg::Sampler => vec!["sampler"],
        SuiteArg::Pathsim => vec!["pathsim"],
        SuiteArg::All => vec!["analytic", "sampler", "pathsim"],
    };
    let checks = skewbessel::verify::run_suites(&vcfg, &suites)
        .map_err(|er| ConfigError(er.to_string()))?;
    let passed = checks.iter().filter(|c| c.pass).count();
    let summary = VerifySummary { total: checks.len(), passed, failed: checks.len() - passed };
    let report = VerifyReport {
        config: cfg,
        suites: suites.iter().map(|s| s.to_string()).collect(),
        checks,
        summary,
    };
    let json = serde_json::to_string_pretty(&report).expect("serializable");
    emit(out, &format!("{json}\n"))?;
    if report.summary.failed > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
