//! Laws of the functional at the first zero of `Y` past a level: the one-sided
//! overshoot law and the two-sided exit-system pair.

use super::law::{CacheBuild, DensityFn, LawSpec, SamplerTag};
use super::{derive_exponents, exit_position::hitting_prob_y0, Exponents, Interval, ModelParams};
use crate::error::{Error, Result};
use crate::quad::{self, QuadOpts};
use crate::specfun::inc_beta;
use std::f64::consts::PI;
use std::sync::Arc;

/// Overshoot density `sin(pi b)/pi (b-x)^b z^(-b) / (b-x+z)` at `z > 0`.
#[inline]
pub fn overshoot_pdf(beta: f64, width: f64, z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    (PI * beta).sin() / PI * width.powf(beta) * z.powf(-beta) / (width + z)
}

/// Closed overshoot CDF via the regularized incomplete Beta function.
#[inline]
pub fn overshoot_cdf(beta: f64, width: f64, z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    inc_beta(z / (width + z), 1.0 - beta, beta).expect("beta in (0,1)")
}

/// Law of the overshoot `X_{zeta_b} - b` when starting on the axis at `x < b`.
///
/// The normalized variable `(X_{zeta_b} - b)/(b - x)` is Beta-prime:
/// `B/(1-B)` with `B ~ Beta(1-beta, beta)`.
pub fn x_zeta_b_overshoot_law(p: &ModelParams, x: f64, b: f64) -> Result<LawSpec> {
    if !(x < b) {
        return Err(Error::domain("x_zeta_b_overshoot_law", format!("need x < b, got x = {x}, b = {b}")));
    }
    let e = derive_exponents(p)?;
    let beta = e.beta;
    let width = b - x;

    let pdf: DensityFn = Arc::new(move |z: f64| overshoot_pdf(beta, width, z));
    let log_pdf: DensityFn = Arc::new(move |z: f64| {
        if z <= 0.0 {
            f64::NEG_INFINITY
        } else {
            ((PI * beta).sin() / PI).ln() + beta * width.ln() - beta * z.ln() - (width + z).ln()
        }
    });
    let cdf: DensityFn = Arc::new(move |z: f64| overshoot_cdf(beta, width, z));

    let mass = overshoot_mass(beta, width)?;
    LawSpec::with_closed_cdf(
        "overshoot",
        (0.0, f64::INFINITY),
        pdf,
        log_pdf,
        cdf,
        SamplerTag::Exact,
        mass,
        1e-8,
    )
}

fn overshoot_mass(beta: f64, width: f64) -> Result<f64> {
    let head = quad::integrate_power_lower(
        |z| overshoot_pdf(beta, width, z),
        width,
        1.0 - beta,
        QuadOpts::default(),
    )?
    .value;
    let tail =
        quad::integrate_tail(|z| overshoot_pdf(beta, width, z), width, beta, QuadOpts::default())?
            .value;
    Ok(head + tail)
}

/// Unnormalized exit-system density `rho_+` of `X_{zeta_ab} - b` at `z > 0`.
pub fn rho_plus_density(e: &Exponents, iv: &Interval, z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    let (alpha, beta) = (e.alpha, e.beta);
    let (xa, bx, ba) = (iv.x - iv.a, iv.b - iv.x, iv.width());
    (PI * beta).sin() / PI * xa.powf(alpha) * bx.powf(beta) / (bx + z)
        * z.powf(-beta)
        * (ba + z).powf(-alpha)
}

/// Unnormalized exit-system density `rho_-` of `a - X_{zeta_ab}` at `z > 0`.
pub fn rho_minus_density(e: &Exponents, iv: &Interval, z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    let (alpha, beta) = (e.alpha, e.beta);
    let (xa, bx, ba) = (iv.x - iv.a, iv.b - iv.x, iv.width());
    (PI * alpha).sin() / PI * xa.powf(alpha) * bx.powf(beta) / (xa + z)
        * z.powf(-alpha)
        * (ba + z).powf(-beta)
}

/// The two conditional exit laws plus the probability of exiting upward.
pub struct ExitSystem {
    /// Conditional law of `X_{zeta_ab} - b` given an upward exit.
    pub up: LawSpec,
    /// Conditional law of `a - X_{zeta_ab}` given a downward exit.
    pub down: LawSpec,
    /// `P(exit through b first)`, i.e. the total mass of `rho_+`.
    pub exit_up_prob: f64,
}

/// Build the exit-system laws for a start `(x, 0)` with `a < x < b`.
///
/// Construction integrates both densities, requires their masses to sum to 1,
/// and cross-checks the upward mass against the closed hitting-probability
/// formula; disagreement beyond 1e-7 aborts.
pub fn exit_system_laws(p: &ModelParams, iv: &Interval) -> Result<ExitSystem> {
    iv.validate()?;
    let e = derive_exponents(p)?;
    let iv = *iv;

    let p_up = rho_mass(|z| rho_plus_density(&e, &iv, z), e.beta, e.nu, iv.width())?;
    let p_down = rho_mass(|z| rho_minus_density(&e, &iv, z), e.alpha, e.nu, iv.width())?;

    if (p_up + p_down - 1.0).abs() > 1e-8 {
        return Err(Error::LawConstruction {
            law: "exit_system",
            msg: format!("rho masses sum to {} instead of 1", p_up + p_down),
        });
    }
    let closed = hitting_prob_y0(&e, &iv)?;
    if (p_up - closed).abs() > 1e-7 {
        return Err(Error::LawConstruction {
            law: "exit_system",
            msg: format!("quadrature exit-up mass {p_up} vs closed form {closed}"),
        });
    }

    let up = rho_law("exit_system_up", e, iv, true, p_up)?;
    let down = rho_law("exit_system_down", e, iv, false, p_down)?;
    Ok(ExitSystem { up, down, exit_up_prob: p_up })
}

fn rho_mass<F: Fn(f64) -> f64>(f: F, sing: f64, nu: f64, width: f64) -> Result<f64> {
    // z^(-sing) endpoint singularity, z^(-1-nu) tail.
    let head = quad::integrate_power_lower(&f, width, 1.0 - sing, QuadOpts::default())?.value;
    let mid = quad::integrate(&f, width, 50.0 * width, QuadOpts::default())?.value;
    let tail = quad::integrate_tail(&f, 50.0 * width, nu, QuadOpts::default())?.value;
    Ok(head + mid + tail)
}

fn rho_law(
    name: &'static str,
    e: Exponents,
    iv: Interval,
    upward: bool,
    mass: f64,
) -> Result<LawSpec> {
    let pdf: DensityFn = Arc::new(move |z: f64| {
        let raw = if upward { rho_plus_density(&e, &iv, z) } else { rho_minus_density(&e, &iv, z) };
        raw / mass
    });
    let pdf_for_log = Arc::clone(&pdf);
    let log_pdf: DensityFn = Arc::new(move |z: f64| pdf_for_log(z).ln());
    let width = iv.width();
    LawSpec::with_cached_cdf(
        name,
        (0.0, f64::INFINITY),
        pdf,
        log_pdf,
        SamplerTag::Rejection,
        CacheBuild {
            lo: 0.0,
            hi: 400.0 * width,
            breaks: vec![0.1 * width, width, 10.0 * width],
            upper_tail_exp: Some(e.nu),
        },
        1e-7,
    )
}
