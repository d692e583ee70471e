//! Position of `Y` when the functional first exits `(a, b)`: the axis-start
//! density, its general-start extension, the modified Laplace transforms and
//! the hitting probabilities.

use super::law::{CacheBuild, DensityFn, LawSpec, SamplerTag};
use super::{derive_exponents, Exponents, Interval, ModelParams};
use crate::error::{Error, Result};
use crate::quad::{self, QuadOpts};
use crate::specfun::{gauss_2f1, kummer_1f1, log_gamma, reg_lower_gamma, bessel_i};
use std::f64::consts::PI;
use std::sync::Arc;

/// Log of the exit-position density under a start on the axis, `a < x < b`.
///
/// The confluent factor is evaluated on its positive-argument side and
/// combined with the exponential prefactor in log space, so the net decay
/// `exp(-|z|^(gamma+2)/(A(b-a)))` never suffers intermediate overflow. This
/// rewriting (the Kummer transformation applied to the raw display) is what
/// keeps the far tails finite.
fn log_density_y0(p: &ModelParams, e: &Exponents, iv: &Interval, z: f64) -> f64 {
    if z == 0.0 {
        return f64::NEG_INFINITY;
    }
    let (alpha, beta, nu, a_c) = (e.alpha, e.beta, e.nu, e.a_const);
    let (gamma, delta, c) = (p.gamma_exp, p.delta, p.c_weight);
    let (xa, bx, ba) = (iv.x - iv.a, iv.b - iv.x, iv.width());
    if z > 0.0 {
        let ln_d = log_gamma(nu).unwrap() - (1.0 - beta) * a_c.ln()
            + ((PI * beta).sin() / (PI * nu)).ln()
            + (2.0 - delta).ln()
            - log_gamma(1.0 + alpha).unwrap();
        let big_e = z.powf(gamma + 2.0) / (a_c * bx);
        let w = big_e * xa / ba;
        let f = kummer_1f1(alpha, 1.0 + alpha, w).expect("confluent series");
        ln_d + alpha * (xa / ba).ln() + (gamma + alpha * (gamma + 2.0) + delta - 1.0) * z.ln()
            - (1.0 - beta) * bx.ln()
            - big_e
            + f.ln_abs()
    } else {
        let az = -z;
        let ln_d = log_gamma(nu).unwrap() + (1.0 - alpha) * (c / a_c).ln()
            + ((PI * alpha).sin() / (PI * nu)).ln()
            + (2.0 - delta).ln()
            - log_gamma(1.0 + beta).unwrap();
        let big_e = c * az.powf(gamma + 2.0) / (a_c * xa);
        let w = big_e * bx / ba;
        let f = kummer_1f1(beta, 1.0 + beta, w).expect("confluent series");
        ln_d + beta * (bx / ba).ln() + (gamma + beta * (gamma + 2.0) + delta - 1.0) * az.ln()
            - (1.0 - alpha) * xa.ln()
            - big_e
            + f.ln_abs()
    }
}

/// Exit-position density of `Y_{T_ab}` for a start `(x, 0)` with `a < x < b`.
pub fn exit_position_density_y0(p: &ModelParams, iv: &Interval, z: f64) -> Result<f64> {
    iv.validate()?;
    let e = derive_exponents(p)?;
    Ok(log_density_y0(p, &e, iv, z).exp())
}

/// Window outside which the axis-start density is below ~1e-18 of its scale.
fn y0_window(p: &ModelParams, e: &Exponents, iv: &Interval) -> (f64, f64) {
    let pow = 1.0 / (p.gamma_exp + 2.0);
    let hi = (42.0 * e.a_const * iv.width()).powf(pow);
    let lo = -(42.0 * e.a_const * iv.width() / p.c_weight).powf(pow);
    (lo, hi)
}

/// The axis-start exit-position law as a `LawSpec` (cached CDF; sampled by
/// numeric CDF inversion).
pub fn exit_position_law_y0(p: &ModelParams, iv: &Interval) -> Result<LawSpec> {
    iv.validate()?;
    let e = derive_exponents(p)?;
    let (p, iv) = (*p, *iv);
    let pdf: DensityFn = Arc::new(move |z: f64| log_density_y0(&p, &e, &iv, z).exp());
    let log_pdf: DensityFn = Arc::new(move |z: f64| log_density_y0(&p, &e, &iv, z));
    let (lo, hi) = y0_window(&p, &e, &iv);
    // density peaks sit around the scale of ((b-x) A)^(1/(gamma+2)) on each side
    let peak_hi = (e.a_const * (iv.b - iv.x)).powf(1.0 / (p.gamma_exp + 2.0));
    let peak_lo = -(e.a_const * (iv.x - iv.a) / p.c_weight).powf(1.0 / (p.gamma_exp + 2.0));
    LawSpec::with_cached_cdf(
        "exit_position_y0",
        (f64::NEG_INFINITY, f64::INFINITY),
        pdf,
        log_pdf,
        SamplerTag::InverseCdf,
        CacheBuild { lo, hi, breaks: vec![peak_lo, 0.0, peak_hi], upper_tail_exp: None },
        1e-8,
    )
}

/// Hitting probability for a start on the axis, in terms of the exponents.
pub(crate) fn hitting_prob_y0(e: &Exponents, iv: &Interval) -> Result<f64> {
    let w = (iv.x - iv.a) / iv.width();
    let f = gauss_2f1(e.alpha, 1.0 - e.beta, 1.0 + e.alpha, w)?;
    let ln = log_gamma(e.nu)? - log_gamma(1.0 + e.alpha)? - log_gamma(e.beta)?
        + e.alpha * w.ln()
        + f.ln_abs();
    Ok(ln.exp())
}

/// Probability that the functional reaches `b` before `a`.
///
/// Three regimes: the closed Gauss-hypergeometric formula on the axis; for
/// `y < 0` a first-zero average of the axis formula; for `y > 0` the same
/// average plus the mass of direct passages (an incomplete-gamma term).
pub fn hitting_prob(p: &ModelParams, iv: &Interval, y: f64) -> Result<f64> {
    let e = derive_exponents(p)?;
    if y == 0.0 {
        iv.validate()?;
        return hitting_prob_y0(&e, iv);
    }
    if y < 0.0 {
        if !(iv.a < iv.x && iv.x <= iv.b) {
            return Err(Error::domain("hitting_prob", format!("need a < x <= b for y < 0, got {iv:?}")));
        }
        let k = p.c_weight * (-y).powf(2.0 + p.gamma_exp) / e.a_const;
        let ln_pre = e.nu * k.ln() - log_gamma(e.nu)?;
        let xa = iv.x - iv.a;
        let f = |u: f64| {
            if u <= 0.0 || u >= xa {
                return 0.0;
            }
            let shifted = Interval { x: iv.x - u, ..*iv };
            let hp = hitting_prob_y0(&e, &shifted).unwrap_or(0.0);
            hp * (-(e.nu + 1.0) * u.ln() - k / u).exp()
        };
        let mode = (k / (e.nu + 1.0)).min(0.9 * xa);
        let v = quad::integrate_pts(f, &[0.0, mode, xa], QuadOpts::default())?.value;
        Ok(ln_pre.exp() * v)
    } else {
        if !(iv.a <= iv.x && iv.x < iv.b) {
            return Err(Error::domain("hitting_prob", format!("need a <= x < b for y > 0, got {iv:?}")));
        }
        let k = y.powf(2.0 + p.gamma_exp) / e.a_const;
        let ln_pre = e.nu * k.ln() - log_gamma(e.nu)?;
        let bx = iv.b - iv.x;
        let f = |u: f64| {
            if u <= 0.0 || u >= bx {
                return 0.0;
            }
            let shifted = Interval { x: iv.x + u, ..*iv };
            let hp = hitting_prob_y0(&e, &shifted).unwrap_or(0.0);
            hp * (-(e.nu + 1.0) * u.ln() - k / u).exp()
        };
        let mode = (k / (e.nu + 1.0)).min(0.9 * bx);
        let v = quad::integrate_pts(f, &[0.0, mode, bx], QuadOpts::default())?.value;
        // direct-passage mass: P(first-zero displacement >= b - x)
        let escape = reg_lower_gamma(e.nu, k / bx)?;
        Ok(ln_pre.exp() * v + escape)
    }
}

/// Modified Laplace transform of the exit position,
/// `E[|Y|^(2-delta) exp(-lambda |Y|^(2+gamma)/A); sign side]`, axis start.
pub fn modified_laplace_exit(
    p: &ModelParams,
    iv: &Interval,
    lambda: f64,
    side_up: bool,
) -> Result<f64> {
    iv.validate()?;
    if lambda < 0.0 {
        return Err(Error::domain("modified_laplace_exit", format!("lambda = {lambda} < 0")));
    }
    let e = derive_exponents(p)?;
    let (alpha, beta, nu, a_c) = (e.alpha, e.beta, e.nu, e.a_const);
    let (xa, bx, ba) = (iv.x - iv.a, iv.b - iv.x, iv.width());
    let c = p.c_weight;
    let shared = a_c.powf(nu) * log_gamma(nu)?.exp() * xa.powf(alpha) * bx.powf(beta);
    if side_up {
        Ok((PI * beta).sin() / PI * shared
            / ((lambda * ba + 1.0).powf(alpha) * (lambda * bx + 1.0)))
    } else {
        Ok(c.powf(1.0 - alpha) * (PI * alpha).sin() / PI * shared
            / ((lambda * ba + c).powf(beta) * (lambda * xa + c)))
    }
}

/// Exit-position density for a start `(x, y)` with `y != 0`: a first-zero
/// mixture of axis-start densities plus (on the side of `y`) the direct
/// passage kernel with the Bessel `I_nu` term.
pub fn exit_position_density_general(
    p: &ModelParams,
    iv: &Interval,
    y: f64,
    z: f64,
) -> Result<f64> {
    let e = derive_exponents(p)?;
    general_density_with(p, &e, iv, y, z)
}

fn general_density_with(
    p: &ModelParams,
    e: &Exponents,
    iv: &Interval,
    y: f64,
    z: f64,
) -> Result<f64> {
    if y == 0.0 {
        return Err(Error::domain("exit_position_density_general", "y must be nonzero".to_string()));
    }
    let (nu, a_c) = (e.nu, e.a_const);
    let gamma = p.gamma_exp;
    if y > 0.0 {
        if !(iv.a <= iv.x && iv.x < iv.b) {
            return Err(Error::domain(
                "exit_position_density_general",
                format!("need a <= x < b for y > 0, got {iv:?}"),
            ));
        }
        let bx = iv.b - iv.x;
        let k = y.powf(2.0 + gamma) / a_c;
        let ln_pre = nu * k.ln() - log_gamma(nu)?;
        let f = |u: f64| {
            if u <= 0.0 || u >= bx {
                return 0.0;
            }
            let shifted = Interval { x: iv.x + u, ..*iv };
            let ln_kernel = -(nu + 1.0) * u.ln() - k / u;
            (log_density_y0(p, e, &shifted, z) + ln_kernel).exp()
        };
        // kernel peak, clipped into the integration range
        let mode = (k / (nu + 1.0)).min(0.9 * bx);
        let mix = quad::integrate_pts(f, &[0.0, mode, bx], QuadOpts::default())
            .map_err(|err| quad_err("exit_position_density_general", err))?
            .value
            * ln_pre.exp();
        let direct = if z > 0.0 {
            let arg = 2.0 * (z * y).powf(1.0 + gamma / 2.0) / (a_c * bx);
            let besi = bessel_i(nu, arg)?;
            let ln = ((2.0 + gamma) / (a_c * bx)).ln()
                + (1.0 - p.delta / 2.0) * y.ln()
                + (gamma + p.delta / 2.0) * z.ln()
                - (z.powf(2.0 + gamma) + y.powf(2.0 + gamma)) / (a_c * bx)
                + besi.ln_abs();
            ln.exp()
        } else {
            0.0
        };
        Ok(mix + direct)
    } else {
        if !(iv.a < iv.x && iv.x <= iv.b) {
            return Err(Error::domain(
                "exit_position_density_general",
                format!("need a < x <= b for y < 0, got {iv:?}"),
            ));
        }
        let xa = iv.x - iv.a;
        let c = p.c_weight;
        let ay = -y;
        let k = c * ay.powf(2.0 + gamma) / a_c;
        let ln_pre = nu * k.ln() - log_gamma(nu)?;
        let f = |u: f64| {
            if u <= 0.0 || u >= xa {
                return 0.0;
            }
            let shifted = Interval { x: iv.x - u, ..*iv };
            let ln_kernel = -(nu + 1.0) * u.ln() - k / u;
            (log_density_y0(p, e, &shifted, z) + ln_kernel).exp()
        };
        let mode = (k / (nu + 1.0)).min(0.9 * xa);
        let mix = quad::integrate_pts(f, &[0.0, mode, xa], QuadOpts::default())
            .map_err(|err| quad_err("exit_position_density_general", err))?
            .value
            * ln_pre.exp();
        let direct = if z < 0.0 {
            let az = -z;
            let arg = 2.0 * c * (az * ay).powf(1.0 + gamma / 2.0) / (a_c * xa);
            let besi = bessel_i(nu, arg)?;
            let ln = (c * (2.0 + gamma) / (a_c * xa)).ln()
                + (1.0 - p.delta / 2.0) * ay.ln()
                + (gamma + p.delta / 2.0) * az.ln()
                - c * (az.powf(2.0 + gamma) + ay.powf(2.0 + gamma)) / (a_c * xa)
                + besi.ln_abs();
            ln.exp()
        } else {
            0.0
        };
        Ok(mix + direct)
    }
}

fn quad_err(op: &'static str, e: Error) -> Error {
    match e {
        Error::QuadratureFailure { err, .. } => Error::QuadratureFailure { op, err },
        other => other,
    }
}

/// General-start exit-position law (cached CDF; normalisation asserted to the
/// looser 1e-6 because the density itself is a quadrature).
pub fn exit_position_law_general(p: &ModelParams, iv: &Interval, y: f64) -> Result<LawSpec> {
    let e = derive_exponents(p)?;
    // validate by computing one density value
    general_density_with(p, &e, iv, y, 0.1)?;
    let (p, iv) = (*p, *iv);
    let pdf: DensityFn =
        Arc::new(move |z: f64| general_density_with(&p, &e, &iv, y, z).unwrap_or(0.0));
    let pdf_log = Arc::clone(&pdf);
    let log_pdf: DensityFn = Arc::new(move |z: f64| pdf_log(z).ln());
    let (mut lo, mut hi) = y0_window(&p, &e, &iv);
    // widen for the direct-passage kernel, which is centred near y
    if y > 0.0 {
        hi = hi.max(3.0 * y);
    } else {
        lo = lo.min(3.0 * y);
    }
    let peak_hi = (e.a_const * (iv.b - iv.x)).powf(1.0 / (p.gamma_exp + 2.0));
    let peak_lo = -(e.a_const * (iv.x - iv.a) / p.c_weight).powf(1.0 / (p.gamma_exp + 2.0));
    LawSpec::with_cached_cdf(
        "exit_position_general",
        (f64::NEG_INFINITY, f64::INFINITY),
        pdf,
        log_pdf,
        SamplerTag::InverseCdf,
        CacheBuild { lo, hi, breaks: vec![peak_lo, 0.0, peak_hi, y], upper_tail_exp: None },
        1e-6,
    )
}
