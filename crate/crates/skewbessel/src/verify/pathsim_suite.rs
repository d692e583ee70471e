//! Path-simulator calibration checks against the closed-form laws.

use super::{Check, VerifyConfig};
use crate::analytic::{derive_exponents, exit_position_law_y0, hitting_prob, inverse_gamma_cdf};
use crate::error::Result;
use crate::pathsim::{run_replicas, step_bessel_squared, PathConfig, StopKind, StopSpec};
use crate::sampler::draw_many;
use crate::stats::{
    binomial_ci, ks_critical, ks_statistic, ks_two_sample, tail_exponent_fit, EmpiricalDist,
};

pub fn pathsim_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let p = cfg.params;
    let iv = cfg.interval;
    let e = derive_exponents(&p)?;
    let n = cfg.replicas.max(1000);
    let crit = ks_critical(n, 0.01);

    // exact transition: drift and the Chapman-Kolmogorov composition
    {
        let (q0, dt) = (0.8, 0.05);
        let m = n.max(200_000);
        let vals = draw_many(cfg.seed ^ 0xbe5, m, |r| step_bessel_squared(q0, p.delta, dt, r));
        let mean: f64 = vals.iter().sum::<f64>() / m as f64;
        let var: f64 = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / m as f64;
        let se = (var / m as f64).sqrt();
        checks.push(Check::below(
            "besq_drift",
            "squared-Bessel mean identity",
            (mean - (q0 + p.delta * dt)).abs() / se,
            3.0,
        ));

        let full = draw_many(cfg.seed ^ 0xcafc, n, |r| step_bessel_squared(q0, p.delta, dt, r));
        let halves = draw_many(cfg.seed ^ 0xcafd, n, |r| {
            let mid = step_bessel_squared(q0, p.delta, dt / 2.0, r);
            step_bessel_squared(mid, p.delta, dt / 2.0, r)
        });
        let d = ks_two_sample(
            &EmpiricalDist::from_samples(full)?,
            &EmpiricalDist::from_samples(halves)?,
        );
        checks.push(Check::below(
            "besq_chapman_kolmogorov",
            "exact transition composes",
            d,
            1.6276 * (2.0 / n as f64).sqrt(),
        ));
    }

    // sigma_0 law calibration at the configured resolution
    {
        let y0 = if cfg.start_y != 0.0 { cfg.start_y.abs() } else { 1.0 };
        let sim_cfg = PathConfig { t_max: 1e10, ..cfg.path };
        let res = run_replicas(&p, &sim_cfg, (iv.x, y0), &StopSpec::Sigma0, cfg.seed ^ 0x50, n)?;
        let vals: Vec<f64> = res.iter().map(|s| s.x_at_stop).collect();
        let emp = EmpiricalDist::from_samples(vals)?;
        let scale = y0.powf(2.0 + p.gamma_exp) / e.a_const;
        let x0 = iv.x;
        let ks = ks_statistic(&emp, |z| inverse_gamma_cdf(z - x0, e.nu, scale));
        checks.push(Check::below(
            "pathsim_sigma0_ks",
            "simulated first-zero displacement law",
            ks.d,
            crit,
        ));
    }

    // exit probability and exit position from the axis
    {
        let sim_cfg = PathConfig { t_max: 1e6, ..cfg.path };
        let res = run_replicas(
            &p,
            &sim_cfg,
            (iv.x, 0.0),
            &StopSpec::Exit { a: iv.a, b: iv.b },
            cfg.seed ^ 0xab,
            n,
        )?;
        let ups = res
            .iter()
            .filter(|s| s.stop_kind == StopKind::ExitTab && s.x_at_stop >= iv.b)
            .count();
        let hp = hitting_prob(&p, &iv, 0.0)?;
        let (lo, hi) = binomial_ci(ups as u64, n as u64, 0.99)?;
        checks.push(Check {
            name: "pathsim_exit_probability".to_string(),
            law: "hitting probability".to_string(),
            statistic: ups as f64 / n as f64,
            threshold: hp,
            pass: lo <= hp && hp <= hi,
        });

        let law = exit_position_law_y0(&p, &iv)?;
        let ys: Vec<f64> = res.iter().map(|s| s.y_at_stop).collect();
        let emp = EmpiricalDist::from_samples(ys)?;
        let ks = ks_statistic(&emp, |z| law.cdf(z));
        checks.push(Check::below(
            "pathsim_exit_position_ks",
            "simulated exit-position law",
            ks.d,
            crit,
        ));
    }

    // sign frequencies track the skewness
    {
        let sim_cfg = PathConfig { t_max: 50.0, ..cfg.path };
        let res = run_replicas(&p, &sim_cfg, (0.0, 0.0), &StopSpec::Horizon, cfg.seed ^ 0x51, 32)?;
        let (pos, tot) = res
            .iter()
            .fold((0u64, 0u64), |acc, s| (acc.0 + s.sign_draws.0, acc.1 + s.sign_draws.1));
        let frac = pos as f64 / tot as f64;
        let want = 0.5 * (1.0 + p.eta);
        let se = (want * (1.0 - want) / tot as f64).sqrt();
        checks.push(Check::below(
            "pathsim_sign_frequency",
            "excursion sign frequencies",
            (frac - want).abs() / se,
            3.0,
        ));
    }

    // zeta_b boundedness: t^theta P(zeta_b > t) stays in a band over the top
    // decade (max/min < 3)
    {
        let sim_cfg = PathConfig { t_max: 1e4, ..cfg.path };
        let m = n.min(30_000);
        let res = run_replicas(
            &p,
            &sim_cfg,
            (iv.x, 0.0),
            &StopSpec::ZetaHit { b: iv.b },
            cfg.seed ^ 0x2e7a,
            m,
        )?;
        let mut hit_times: Vec<f64> = res
            .iter()
            .map(|s| if s.stop_kind == StopKind::HitZetaB { s.stop_time } else { f64::INFINITY })
            .collect();
        hit_times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ratio_max: f64 = 0.0;
        let mut ratio_min = f64::INFINITY;
        for i in 0..10 {
            let t = 1e3 * 10.0f64.powf(i as f64 / 9.0);
            let surv =
                (m - hit_times.partition_point(|&h| h <= t)) as f64 / m as f64;
            let rescaled = t.powf(e.theta) * surv;
            ratio_max = ratio_max.max(rescaled);
            ratio_min = ratio_min.min(rescaled);
        }
        checks.push(Check::below(
            "zeta_b_rescaled_band",
            "polynomial survival bounds for the post-crossing zero",
            ratio_max / ratio_min,
            3.0,
        ));
    }

    // refinement convergence: halving dt moves the sigma_0 KS statistic down
    {
        let y0 = 1.0;
        let scale = 1.0 / e.a_const;
        let mut ks_by_level = Vec::new();
        for &dt in &[1e-2, 1e-3, 1e-4] {
            let sim_cfg = PathConfig::with_dt(dt, 1e9);
            let m = n.min(20_000);
            let res =
                run_replicas(&p, &sim_cfg, (0.0, y0), &StopSpec::Sigma0, cfg.seed ^ 0x3f, m)?;
            let vals: Vec<f64> = res.iter().map(|s| s.x_at_stop).collect();
            let emp = EmpiricalDist::from_samples(vals)?;
            let ks = ks_statistic(&emp, |z| inverse_gamma_cdf(z, e.nu, scale));
            ks_by_level.push(ks.d);
        }
        let monotone = ks_by_level[0] > ks_by_level[1] && ks_by_level[1] > ks_by_level[2];
        checks.push(Check {
            name: "refinement_convergence".to_string(),
            law: "discretisation error decreases with dt".to_string(),
            statistic: ks_by_level[2],
            threshold: ks_by_level[0],
            pass: monotone,
        });
    }

    // persistence slope, quick version (full-budget fits are acceptance work)
    {
        let sim_cfg = PathConfig { t_max: 1e3, ..cfg.path };
        let grid = crate::pathsim::log_grid(1e2, 1e3, 8);
        let m = n.max(20_000);
        let curve =
            crate::pathsim::survival_curve(&p, &sim_cfg, (iv.x, 0.0), iv.b, &grid, m, cfg.seed ^ 7)?;
        let pts: Vec<(f64, f64, f64)> =
            curve.iter().map(|s| (s.t, s.survival, s.std_err)).collect();
        let fit = tail_exponent_fit(&pts)?;
        checks.push(Check::below(
            "pathsim_theta_quick",
            "persistence exponent (short-horizon fit)",
            (fit.theta_hat - e.theta).abs(),
            0.1,
        ));
    }

    Ok(checks)
}
