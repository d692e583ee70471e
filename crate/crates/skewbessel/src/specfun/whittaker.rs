//! Whittaker `W` function via its Laplace-type integral representation.

use super::gamma::log_gamma;
use super::EvalResult;
use crate::error::{Error, Result};
use crate::quad::{integrate_pts, QuadOpts};

/// Whittaker function `W_{lambda,mu}(z)` for `z > 0` and `mu - lambda + 1/2 > 0`,
/// computed from
///
/// `W = e^(-z/2) z^lambda / Gamma(mu - lambda + 1/2)
///      * int_0^inf e^(-t) t^(mu-lambda-1/2) (1 + t/z)^(mu+lambda-1/2) dt`,
///
/// which avoids the cancellation of the Kummer-pair formula when `lambda` is
/// negative. Log-scaled output.
pub fn whittaker_w(lambda: f64, mu: f64, z: f64) -> Result<EvalResult> {
    if z <= 0.0 {
        return Err(Error::domain("whittaker_w", format!("z = {z} must be positive")));
    }
    let p = mu - lambda - 0.5; // t-exponent; p > -1 required
    let q = mu + lambda - 0.5; // (1 + t/z)-exponent
    if p <= -1.0 {
        return Err(Error::domain(
            "whittaker_w",
            format!("integral representation needs mu - lambda + 1/2 > 0, got {}", p + 1.0),
        ));
    }

    // e^(-t) t^p dominates; truncate where the remaining mass is negligible
    // relative to the peak, then map the tail adaptively.
    let integrand = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let ln_v = -t + p * t.ln() + q * (1.0 + t / z).ln();
        ln_v.exp()
    };
    let t_peak = p.max(1.0);
    let t_hi = (t_peak + 60.0 + 10.0 * t_peak.sqrt()).max(80.0);
    let r = integrate_pts(
        integrand,
        &[0.0, t_peak.min(1.0), t_peak, t_hi],
        QuadOpts { abs_tol: 1e-13, rel_tol: 1e-11, ..Default::default() },
    )
    .map_err(|e| match e {
        Error::QuadratureFailure { err, .. } => Error::QuadratureFailure { op: "whittaker_w", err },
        other => other,
    })?;

    let log_scale = -0.5 * z + lambda * z.ln() - log_gamma(p + 1.0)?;
    Ok(EvalResult { value: r.value, log_scale, converged: true, terms_used: r.panels.len() }
        .normalized())
}
