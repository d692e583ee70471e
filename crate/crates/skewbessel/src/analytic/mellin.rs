//! Mellin transforms of the overshoot `X_{zeta_b} - b` and of `Y_{T_b}`.

use super::sigma0::inverse_gamma_log_pdf;
use super::{derive_exponents, ModelParams};
use crate::error::{Error, Result};
use crate::quad::{self, QuadOpts};
use crate::specfun::log_gamma;
use std::f64::consts::PI;

/// Guard band keeping `s` away from the sine poles at the strip endpoints.
const STRIP_GUARD: f64 = 1e-6;

/// `E_{(x,y)}[(X_{zeta_b} - b)^s]` for `s` in `(beta - 1, beta)`:
/// `sin(pi beta)/sin(pi(beta - s)) E[(b - X_{sigma_0})_+^s] + E[(X_{sigma_0} - b)_+^s]`.
pub fn mellin_x_zeta(p: &ModelParams, x: f64, y: f64, b: f64, s: f64) -> Result<f64> {
    let e = derive_exponents(p)?;
    let (nu, beta, a_c) = (e.nu, e.beta, e.a_const);
    if !(x < b || (x == b && y < 0.0)) {
        return Err(Error::domain(
            "mellin_x_zeta",
            format!("need x < b, or x = b with y < 0; got x = {x}, b = {b}, y = {y}"),
        ));
    }
    if !(s > beta - 1.0 + STRIP_GUARD && s < beta - STRIP_GUARD) {
        return Err(Error::domain(
            "mellin_x_zeta",
            format!("s = {s} outside the strip ({}, {})", beta - 1.0, beta),
        ));
    }
    let sin_ratio = (PI * beta).sin() / (PI * (beta - s)).sin();

    if y == 0.0 {
        // sigma_0 = 0 so X_{sigma_0} = x deterministically.
        return Ok(sin_ratio * (b - x).powf(s));
    }

    let opts = QuadOpts::default();
    if y > 0.0 {
        // X_{sigma_0} = x + U with U ~ InverseGamma(nu, k).
        let k = y.powf(2.0 + p.gamma_exp) / a_c;
        let w = b - x;
        let ig = move |u: f64| inverse_gamma_log_pdf(u, nu, k).exp();
        let mode = k / (nu + 1.0);
        // E[(b - X)_+^s] = int_0^w (w - u)^s ig(u) du; the (w-u)^s end is
        // integrated in offset coordinates
        let inner = move |h: f64| h.powf(s) * ig(w - h);
        let e_in = if mode < w {
            let split = 0.5 * (mode + w);
            quad::integrate_pts(move |u: f64| (w - u).powf(s) * ig(u), &[0.0, mode, split], opts)?
                .value
                + quad::integrate_power_lower(inner, w - split, 1.0 + s, opts)?.value
        } else {
            quad::integrate_power_lower(inner, w, 1.0 + s, opts)?.value
        };
        // E[(X - b)_+^s] = int_w^inf (u - w)^s ig(u) du
        let far = (w.max(mode) + k) * 50.0 + w;
        let e_out = quad::integrate_power_lower(
            move |t: f64| t.powf(s) * ig(w + t),
            far - w,
            1.0 + s,
            opts,
        )?
        .value
            + quad::integrate_tail(move |u: f64| (u - w).powf(s) * ig(u), far, nu - s, opts)?
                .value;
        Ok(sin_ratio * e_in + e_out)
    } else {
        // X_{sigma_0} = x - U, so b - X_{sigma_0} = (b - x) + U > 0 always
        // and the outer expectation vanishes.
        let k = p.c_weight * (-y).powf(2.0 + p.gamma_exp) / a_c;
        let w = b - x;
        let ig = move |u: f64| inverse_gamma_log_pdf(u, nu, k).exp();
        let f = move |u: f64| (w + u).powf(s) * ig(u);
        let mode = k / (nu + 1.0);
        let far = (mode + k + w) * 50.0 + 1.0;
        let e_in = quad::integrate_pts(f, &[0.0, mode, far], opts)?.value
            + quad::integrate_tail(f, far, nu - s, opts)?.value;
        Ok(sin_ratio * e_in)
    }
}

/// `E_{(x,y)}[Y_{T_b}^s]` via the overshoot transform:
/// `A^(s/(2+gamma)) Gamma(nu)/Gamma(nu - s/(2+gamma)) E[(X_{zeta_b}-b)^(s/(2+gamma))]`.
pub fn mellin_y_tb(p: &ModelParams, x: f64, y: f64, b: f64, s: f64) -> Result<f64> {
    let e = derive_exponents(p)?;
    let sp = s / (2.0 + p.gamma_exp);
    if !(sp < e.nu - STRIP_GUARD) {
        return Err(Error::domain(
            "mellin_y_tb",
            format!("s/(2+gamma) = {sp} must lie below nu = {}", e.nu),
        ));
    }
    let m = mellin_x_zeta(p, x, y, b, sp)?;
    let ln_ratio = log_gamma(e.nu)? - log_gamma(e.nu - sp)?;
    Ok(e.a_const.powf(sp) * ln_ratio.exp() * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> ModelParams {
        ModelParams::new(1.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn total_mass_at_s_zero() {
        let p = sym();
        for &y in &[-1.0, -0.2, 0.0, 0.4, 1.5] {
            let v = mellin_x_zeta(&p, 0.0, y, 1.0, 0.0).unwrap();
            assert!((v - 1.0).abs() < 1e-8, "y={y}: {v}");
        }
    }

    #[test]
    fn degenerate_start_closed_form() {
        let p = sym();
        let e = derive_exponents(&p).unwrap();
        for &s in &[-0.5, -0.1, 0.1] {
            let v = mellin_x_zeta(&p, 0.25, 0.0, 1.0, s).unwrap();
            let want = 0.75f64.powf(s) * (PI * e.beta).sin() / (PI * (e.beta - s)).sin();
            assert!((v - want).abs() < 1e-12 * want.abs());
        }
    }

    #[test]
    fn frozen_reference_values() {
        // 40-digit quadratures of the defining expression.
        let p = sym();
        let v = mellin_x_zeta(&p, 0.0, -1.0, 1.0, 0.1).unwrap();
        assert!((v - 3.159_045_733_628_708_6).abs() < 1e-7, "{v}");
        let v = mellin_x_zeta(&p, 0.0, 0.8, 1.0, 0.1).unwrap();
        assert!((v - 1.812_242_956_403_774).abs() < 1e-7, "{v}");
    }

    #[test]
    fn strip_and_position_guards() {
        let p = sym();
        // beta = 1/6: strip is (-5/6, 1/6)
        assert!(mellin_x_zeta(&p, 0.0, 0.0, 1.0, 0.2).is_err());
        assert!(mellin_x_zeta(&p, 0.0, 0.0, 1.0, -0.9).is_err());
        assert!(mellin_x_zeta(&p, 0.0, 0.0, 1.0, 1.0 / 6.0).is_err());
        assert!(mellin_x_zeta(&p, 1.0, 0.0, 1.0, 0.1).is_err());
        assert!(mellin_x_zeta(&p, 1.0, -0.5, 1.0, 0.1).is_ok());
        assert!(mellin_x_zeta(&p, 1.0, 0.5, 1.0, 0.1).is_err());
    }

    #[test]
    fn y_tb_normalisation_and_pole_onset() {
        let p = sym();
        let e = derive_exponents(&p).unwrap();
        assert!((mellin_y_tb(&p, 0.0, 0.0, 1.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
        // as s/(2+gamma) approaches beta, (beta - s') * E[Y^s] stabilises
        let g = 2.0 + p.gamma_exp;
        let mut stabilised = Vec::new();
        for &eps in &[1e-3, 1e-4, 1e-5] {
            let sp = e.beta - eps;
            let v = mellin_y_tb(&p, 0.0, 0.0, 1.0, sp * g).unwrap();
            stabilised.push((e.beta - sp) * v);
        }
        let spread = (stabilised[0] - stabilised[2]).abs() / stabilised[2].abs();
        assert!(spread < 1e-2, "pole residue not stabilising: {stabilised:?}");
        assert!(stabilised[2] > 0.0);
    }

    #[test]
    fn y_tb_strip_guard() {
        let p = sym();
        // nu = 1/3, 2+gamma = 3: s' = nu needs s = 1.0
        assert!(mellin_y_tb(&p, 0.0, 0.0, 1.0, 1.0).is_err());
        assert!(mellin_y_tb(&p, 0.0, 0.0, 1.0, 0.3).is_ok());
    }
}
