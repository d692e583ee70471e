//! Sampler fidelity checks: exact samplers against their law CDFs and
//! moments, determinism, rejection acceptance bounds.

use super::{Check, VerifyConfig};
use crate::analytic::{
    derive_exponents, exit_position_law_y0, exit_system_laws, mellin_x_zeta, x_sigma0_law,
    Sigma0Law,
};
use crate::error::Result;
use crate::sampler::{
    draw_many, sample_exit_position, sample_inverse_gamma, sample_overshoot, sample_x_zeta_from,
    ExitSystemSampler, RngStream,
};
use crate::stats::{binomial_ci, ks_critical, ks_statistic, EmpiricalDist};

pub fn sampler_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let p = cfg.params;
    let iv = cfg.interval;
    let e = derive_exponents(&p)?;
    let n = cfg.replicas.max(1000);
    let crit = ks_critical(n, 0.01);

    // inverse-gamma sampler vs the sigma_0 law CDF
    {
        let y = if cfg.start_y != 0.0 { cfg.start_y } else { 1.0 };
        let law = match x_sigma0_law(&p, iv.x, y)? {
            Sigma0Law::Law(l) => l,
            Sigma0Law::PointMass(_) => unreachable!(),
        };
        let scale = if y > 0.0 {
            y.powf(2.0 + p.gamma_exp) / e.a_const
        } else {
            p.c_weight * (-y).powf(2.0 + p.gamma_exp) / e.a_const
        };
        let x0 = iv.x;
        let draws = draw_many(cfg.seed ^ 0x5151, n, |r| {
            let u = sample_inverse_gamma(e.nu, scale, r).unwrap();
            if y > 0.0 {
                x0 + u
            } else {
                x0 - u
            }
        });
        let emp = EmpiricalDist::from_samples(draws)?;
        let ks = ks_statistic(&emp, |z| law.cdf(z));
        checks.push(Check::below("sigma0_sampler_ks", "first-zero displacement law", ks.d, crit));
    }

    // overshoot sampler: KS plus a Mellin moment
    {
        let width = iv.b - iv.x;
        let law = crate::analytic::x_zeta_b_overshoot_law(&p, iv.x, iv.b)?;
        let draws = draw_many(cfg.seed ^ 0x0507, n, |r| sample_overshoot(&e, width, r).unwrap());
        let emp = EmpiricalDist::from_samples(draws.clone())?;
        let ks = ks_statistic(&emp, |z| law.cdf(z));
        checks.push(Check::below("overshoot_sampler_ks", "one-sided overshoot law", ks.d, crit));

        let s = (e.beta * 0.6).min(0.1);
        let vals: Vec<f64> = draws.iter().map(|z| z.powf(s)).collect();
        let mean: f64 = vals.iter().sum::<f64>() / n as f64;
        let var: f64 = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        let se = (var / n as f64).sqrt();
        let pi = std::f64::consts::PI;
        let want = width.powf(s) * (pi * e.beta).sin() / (pi * (e.beta - s)).sin();
        checks.push(Check::below(
            "overshoot_sampler_mellin",
            "overshoot fractional moment",
            (mean - want).abs() / se,
            3.0,
        ));
    }

    // exit-system sampler: side probability, magnitude KS, acceptance bound
    {
        let sys = exit_system_laws(&p, &iv)?;
        let mut sampler = ExitSystemSampler::new(&p, &iv)?;
        let mut rng = RngStream::new(cfg.seed ^ 0xe1, 0);
        let mut ups = Vec::new();
        let mut downs = Vec::new();
        for _ in 0..n {
            let (side, z) = sampler.sample(&mut rng)?;
            if side > 0 {
                ups.push(z);
            } else {
                downs.push(z);
            }
        }
        let (lo, hi) = binomial_ci(ups.len() as u64, n as u64, 0.997)?;
        let inside = lo <= sys.exit_up_prob && sys.exit_up_prob <= hi;
        checks.push(Check {
            name: "exit_system_side_probability".to_string(),
            law: "two-sided exit split".to_string(),
            statistic: ups.len() as f64 / n as f64,
            threshold: sys.exit_up_prob,
            pass: inside,
        });
        let emp_up = EmpiricalDist::from_samples(ups)?;
        let ks_up = ks_statistic(&emp_up, |z| sys.up.cdf(z));
        checks.push(Check::below(
            "exit_system_up_ks",
            "upward exit magnitude law",
            ks_up.d,
            ks_critical(emp_up.n(), 0.01),
        ));
        let emp_down = EmpiricalDist::from_samples(downs)?;
        let ks_down = ks_statistic(&emp_down, |z| sys.down.cdf(z));
        checks.push(Check::below(
            "exit_system_down_ks",
            "downward exit magnitude law",
            ks_down.d,
            ks_critical(emp_down.n(), 0.01),
        ));
        // computable acceptance lower bound from the envelope's 99th centile
        let env = crate::analytic::x_zeta_b_overshoot_law(&p, iv.x, iv.b)?;
        let q99 = env.quantile(0.99)?;
        let bound = 0.99 * (iv.width() / (iv.width() + q99)).powf(e.alpha);
        checks.push(Check {
            name: "exit_system_acceptance".to_string(),
            law: "rejection envelope efficiency".to_string(),
            statistic: sampler.acceptance_rate(),
            threshold: bound,
            pass: sampler.acceptance_rate() >= bound,
        });
    }

    // exit-position inverse-CDF sampler
    {
        let law = exit_position_law_y0(&p, &iv)?;
        let draws = draw_many(cfg.seed ^ 0xe2, n, |r| sample_exit_position(&law, r));
        let emp = EmpiricalDist::from_samples(draws)?;
        let ks = ks_statistic(&emp, |z| law.cdf(z));
        checks.push(Check::below(
            "exit_position_sampler_ks",
            "axis-start exit-position law",
            ks.d,
            crit,
        ));
    }

    // zero-chain Mellin moment vs the transform
    {
        let s = (e.beta * 0.6).min(0.1);
        let y = -cfg.start_y.abs().max(0.5);
        let vals = draw_many(cfg.seed ^ 0xc4a1, n, |r| {
            let (xz, _) = sample_x_zeta_from(&p, iv.x, y, iv.b, r).unwrap();
            (xz - iv.b).powf(s)
        });
        let mean: f64 = vals.iter().sum::<f64>() / n as f64;
        let var: f64 = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        let se = (var / n as f64).sqrt();
        let want = mellin_x_zeta(&p, iv.x, y, iv.b, s)?;
        checks.push(Check::below(
            "zero_chain_mellin",
            "two-stage crossing law transform",
            (mean - want).abs() / se,
            3.0,
        ));
    }

    // bit determinism of a replicated stream
    {
        let a: Vec<f64> = draw_many(cfg.seed, 4096, |r| sample_overshoot(&e, 1.0, r).unwrap());
        let b: Vec<f64> = draw_many(cfg.seed, 4096, |r| sample_overshoot(&e, 1.0, r).unwrap());
        let identical = a
            .iter()
            .zip(&b)
            .all(|(x, y)| x.to_bits() == y.to_bits());
        checks.push(Check {
            name: "sampler_determinism".to_string(),
            law: "stream reproducibility".to_string(),
            statistic: if identical { 0.0 } else { 1.0 },
            threshold: 0.5,
            pass: identical,
        });
    }

    Ok(checks)
}
