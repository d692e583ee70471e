//! Modified Bessel functions `I_nu` and `K_nu` for the small real orders the
//! laws produce (`nu < 1/2` plus the `nu + 1` orders used by the Wronskian
//! self-check).

use super::gamma::log_gamma_signed;
use super::{EvalResult, SERIES_EPS, SERIES_TERM_CAP};
use crate::error::{Error, Result};
use crate::quad::{integrate_pts, QuadOpts};
use std::f64::consts::PI;

/// Series/asymptotic crossover for `I_nu`; both branches agree to ~1e-13 here.
const I_SEAM: f64 = 15.0;
/// Below this the `K` difference formula is exact to ~1e-14; above
/// [`K_ASYMPTOTIC_SEAM`] the large-z expansion is; the cosh-representation
/// quadrature bridges the gap.
const K_DIFF_SEAM: f64 = 2.0;
const K_ASYMPTOTIC_SEAM: f64 = 15.0;

/// Ascending series of `I_mu(z)` for any non-integer `mu > -2` (negative
/// orders are needed internally by the `K` difference formula).
fn i_series(mu: f64, z: f64) -> Result<EvalResult> {
    let (lg, sign) = log_gamma_signed(mu + 1.0)?;
    let log_scale = mu * (z / 2.0).ln() - lg;
    let q = z * z / 4.0;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..SERIES_TERM_CAP {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (mu + 1.0 + kf));
        sum += term;
        if term.abs() <= SERIES_EPS * sum.abs() {
            return Ok(EvalResult { value: sign * sum, log_scale, converged: true, terms_used: k + 1 }
                .normalized());
        }
    }
    Err(Error::NonConvergence { op: "bessel_i", terms: SERIES_TERM_CAP })
}

/// Shared asymptotic tail `sum_k s^k a_k(mu) / z^k` with
/// `a_k = prod_j (4 mu^2 - (2j-1)^2) / (k! 8^k)`; `s = -1` for `I`, `+1` for `K`.
fn asymptotic_tail(mu: f64, z: f64, s: f64) -> (f64, usize) {
    let mu2 = 4.0 * mu * mu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut best = f64::INFINITY;
    let mut used = 0;
    for k in 1..60 {
        let kf = k as f64;
        term *= s * (mu2 - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * z);
        if term.abs() >= best {
            break;
        }
        best = term.abs();
        sum += term;
        used = k;
        if term.abs() <= 1e-16 * sum.abs() {
            break;
        }
    }
    (sum, used)
}

/// Modified Bessel function of the first kind, log-scaled.
pub fn bessel_i(nu: f64, z: f64) -> Result<EvalResult> {
    if z < 0.0 {
        return Err(Error::domain("bessel_i", format!("z = {z} must be nonnegative")));
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(if nu == 0.0 { 1.0 } else { 0.0 }));
    }
    if z <= I_SEAM {
        i_series(nu, z)
    } else {
        let (sum, used) = asymptotic_tail(nu, z, -1.0);
        let log_scale = z - 0.5 * (2.0 * PI * z).ln();
        Ok(EvalResult { value: sum, log_scale, converged: true, terms_used: used }.normalized())
    }
}

/// `K_nu` on the bridge region via `K = int_0^inf e^(-z cosh t) cosh(nu t) dt`,
/// scaled by `e^z` so the integrand starts at 1.
fn k_cosh_quadrature(nu: f64, z: f64) -> Result<EvalResult> {
    // e^(-z(cosh t - 1)) is negligible once z(cosh t - 1) > 45.
    let t_max = (45.0 / z + 1.0).acosh() + 1.0;
    let g = |t: f64| (-z * (t.cosh() - 1.0)).exp() * (nu * t).cosh();
    let r = integrate_pts(g, &[0.0, 1.0, t_max], QuadOpts { abs_tol: 1e-14, rel_tol: 1e-12, ..Default::default() })?;
    Ok(EvalResult { value: r.value, log_scale: -z, converged: true, terms_used: r.panels.len() }
        .normalized())
}

/// Modified Bessel function of the second kind, log-scaled.
///
/// Small arguments use `K_nu = pi (I_{-nu} - I_nu) / (2 sin(nu pi))`, large
/// arguments the standard expansion `sqrt(pi/2z) e^(-z) (1 + ...)`; both are
/// checked to agree with the bridging quadrature at the seams.
pub fn bessel_k(nu: f64, z: f64) -> Result<EvalResult> {
    if z <= 0.0 {
        return Err(Error::domain("bessel_k", format!("z = {z} must be positive")));
    }
    let nu = nu.abs(); // K is even in the order
    if nu == nu.floor() {
        return Err(Error::domain("bessel_k", "integer order not supported".to_string()));
    }
    if z <= K_DIFF_SEAM {
        let im = i_series(-nu, z)?;
        let ip = i_series(nu, z)?;
        // Both terms are O(1) here so the subtraction is done unscaled.
        let diff = im.to_f64() - ip.to_f64();
        let value = PI * diff / (2.0 * (nu * PI).sin());
        Ok(EvalResult {
            value,
            log_scale: 0.0,
            converged: true,
            terms_used: im.terms_used + ip.terms_used,
        }
        .normalized())
    } else if z < K_ASYMPTOTIC_SEAM {
        k_cosh_quadrature(nu, z)
    } else {
        let (sum, used) = asymptotic_tail(nu, z, 1.0);
        let log_scale = -z + 0.5 * (PI / (2.0 * z)).ln();
        Ok(EvalResult { value: sum, log_scale, converged: true, terms_used: used }.normalized())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i_half_exact(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * z.sinh()
    }

    fn k_half_exact(z: f64) -> f64 {
        (PI / (2.0 * z)).sqrt() * (-z).exp()
    }

    #[test]
    fn i_half_integer_closed_form() {
        for &z in &[0.3, 1.0, 5.0, 14.9, 15.1, 40.0] {
            let v = bessel_i(0.5, z).unwrap().to_f64();
            let want = i_half_exact(z);
            assert!((v - want).abs() < 1e-12 * want, "z={z}: {v} vs {want}");
        }
    }

    #[test]
    fn k_half_integer_closed_form() {
        for &z in &[0.2, 1.0, 1.9, 2.5, 7.0, 14.0, 16.0, 50.0] {
            let v = bessel_k(0.5, z).unwrap().to_f64();
            let want = k_half_exact(z);
            assert!((v - want).abs() < 1e-10 * want, "z={z}: {v} vs {want}");
        }
    }

    #[test]
    fn i_seam_agreement() {
        // Series and asymptotic branches overlap to 1e-10 at the seam.
        for &nu in &[1.0 / 6.0, 1.0 / 3.0, 0.45] {
            let series = i_series(nu, I_SEAM).unwrap();
            let (sum, _) = asymptotic_tail(nu, I_SEAM, -1.0);
            let asym_ln = sum.ln() + I_SEAM - 0.5 * (2.0 * PI * I_SEAM).ln();
            assert!((series.ln_abs() - asym_ln).abs() < 1e-10, "nu={nu}");
        }
    }

    #[test]
    fn k_seam_agreement() {
        for &nu in &[1.0 / 6.0, 1.0 / 3.0, 0.45] {
            // difference formula vs quadrature at z = 2
            let a = {
                let im = i_series(-nu, K_DIFF_SEAM).unwrap();
                let ip = i_series(nu, K_DIFF_SEAM).unwrap();
                PI * (im.to_f64() - ip.to_f64()) / (2.0 * (nu * PI).sin())
            };
            let b = k_cosh_quadrature(nu, K_DIFF_SEAM).unwrap().to_f64();
            assert!((a - b).abs() < 1e-10 * a, "nu={nu}: {a} vs {b}");
            // quadrature vs asymptotic at z = 15
            let c = k_cosh_quadrature(nu, K_ASYMPTOTIC_SEAM).unwrap();
            let (sum, _) = asymptotic_tail(nu, K_ASYMPTOTIC_SEAM, 1.0);
            let d_ln = sum.ln() - K_ASYMPTOTIC_SEAM + 0.5 * (PI / (2.0 * K_ASYMPTOTIC_SEAM)).ln();
            assert!((c.ln_abs() - d_ln).abs() < 1e-10, "nu={nu}");
        }
    }

    #[test]
    fn wronskian_identity() {
        // K_nu(z) I'_nu(z) - I_nu(z) K'_nu(z) = 1/z across all branches.
        for &nu in &[1.0 / 6.0, 0.3, 1.0 / 3.0] {
            for &z in &[0.4, 1.5, 2.5, 6.0, 10.0, 14.5, 15.5, 30.0] {
                let i = bessel_i(nu, z).unwrap().to_f64();
                let ip1 = bessel_i(nu + 1.0, z).unwrap().to_f64();
                let k = bessel_k(nu, z).unwrap().to_f64();
                let kp1 = bessel_k(nu + 1.0, z).unwrap().to_f64();
                let lhs = k * (ip1 + nu / z * i) + i * (kp1 - nu / z * k);
                assert!(
                    (lhs - 1.0 / z).abs() < 1e-8 / z,
                    "nu={nu} z={z}: {} vs {}",
                    lhs,
                    1.0 / z
                );
            }
        }
    }

    #[test]
    fn domains() {
        assert!(bessel_i(0.3, -1.0).is_err());
        assert!(bessel_k(0.3, 0.0).is_err());
        assert!(bessel_k(0.3, -2.0).is_err());
    }

    #[test]
    fn large_argument_log_scaling() {
        // I_nu(800) overflows plain f64; the log-scaled form must not.
        let r = bessel_i(1.0 / 3.0, 800.0).unwrap();
        assert!(r.to_f64().is_infinite());
        assert!((r.ln_abs() - (800.0 - 0.5 * (2.0 * PI * 800.0).ln())).abs() < 0.01);
    }
}
