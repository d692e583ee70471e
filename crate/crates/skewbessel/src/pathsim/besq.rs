//! Exact squared-Bessel transition.

use crate::sampler::RngStream;
use rand_distr::{Distribution, Gamma, Poisson};

/// One exact transition of the squared Bessel process of dimension `delta`
/// over `dt`, from `q >= 0`.
///
/// The transition law is `dt` times a noncentral chi-square with `delta`
/// degrees of freedom and noncentrality `q/dt`, sampled as a Poisson mixture
/// of central chi-squares: `K ~ Poisson(q/(2 dt))`,
/// `q' ~ Gamma((delta + 2K)/2, scale 2 dt)`.
#[inline]
pub fn step_bessel_squared(q: f64, delta: f64, dt: f64, rng: &mut RngStream) -> f64 {
    debug_assert!(q >= 0.0 && delta > 0.0 && dt > 0.0);
    let lambda = q / (2.0 * dt);
    let k = if lambda > 0.0 {
        Poisson::new(lambda).expect("positive lambda").sample(rng)
    } else {
        0.0
    };
    let shape = 0.5 * delta + k;
    Gamma::new(shape, 2.0 * dt).expect("positive shape").sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::reg_lower_gamma;
    use crate::stats::{ks_critical, ks_statistic, ks_two_sample, EmpiricalDist};

    #[test]
    fn drift_identity() {
        // E[q' | q] = q + delta dt
        let (q, delta, dt) = (1.0, 1.5, 0.01);
        let n = 1_000_000usize;
        let vals = crate::sampler::draw_many(101, n, |r| step_bessel_squared(q, delta, dt, r));
        let mean: f64 = vals.iter().sum::<f64>() / n as f64;
        let var: f64 = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        let se = (var / n as f64).sqrt();
        let want = q + delta * dt;
        assert!((mean - want).abs() < 3.0 * se, "{mean} vs {want} (se {se})");
    }

    #[test]
    fn zero_start_is_central_chi_square() {
        // delta = 1, q = 0: q'/dt ~ chi-square(1)
        let dt = 0.05;
        let vals = crate::sampler::draw_many(103, 100_000, |r| {
            step_bessel_squared(0.0, 1.0, dt, r) / dt
        });
        let e = EmpiricalDist::from_samples(vals).unwrap();
        let ks = ks_statistic(&e, |x| {
            if x <= 0.0 {
                0.0
            } else {
                reg_lower_gamma(0.5, x / 2.0).unwrap()
            }
        });
        assert!(ks.d < ks_critical(e.n(), 0.01), "KS {}", ks.d);
    }

    #[test]
    fn chapman_kolmogorov_half_steps() {
        // Two half-steps compose to the same law as one full step.
        let (q, delta, dt) = (0.7, 1.3, 0.2);
        let full = crate::sampler::draw_many(107, 100_000, |r| {
            step_bessel_squared(q, delta, dt, r)
        });
        let halved = crate::sampler::draw_many(109, 100_000, |r| {
            let mid = step_bessel_squared(q, delta, dt / 2.0, r);
            step_bessel_squared(mid, delta, dt / 2.0, r)
        });
        let d = ks_two_sample(
            &EmpiricalDist::from_samples(full).unwrap(),
            &EmpiricalDist::from_samples(halved).unwrap(),
        );
        let crit = 1.6276 * (2.0f64 / 100_000.0).sqrt();
        assert!(d < crit, "KS {d} vs {crit}");
    }
}
