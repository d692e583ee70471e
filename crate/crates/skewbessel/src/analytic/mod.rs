//! Closed-form quantities of the model: derived exponents, densities,
//! Mellin/Laplace transforms, the harmonic function `h` and hitting
//! probabilities.

mod exit_position;
mod exit_system;
mod law;
mod mellin;
mod sigma0;

pub use exit_position::{
    exit_position_density_general, exit_position_density_y0, exit_position_law_general,
    exit_position_law_y0, hitting_prob, modified_laplace_exit,
};
pub use exit_system::{
    exit_system_laws, overshoot_cdf, overshoot_pdf, rho_minus_density, rho_plus_density,
    x_zeta_b_overshoot_law, ExitSystem,
};
pub use law::{CdfCache, LawSpec, SamplerTag};
pub use mellin::{mellin_x_zeta, mellin_y_tb};
pub use sigma0::{
    h_defining_integral, harmonic_h, inverse_gamma_cdf, inverse_gamma_log_pdf, survival_prefactor,
    x_sigma0_law, Sigma0Law,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The quadruple `(delta, eta, gamma, c)` defining the process and the
/// additive functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Dimension `delta` of the Bessel magnitude, in `[1, 2)`.
    pub delta: f64,
    /// Skewness `eta` in `(-1, 1)`; positive excursions carry probability
    /// `(1 + eta)/2`.
    pub eta: f64,
    /// Power `gamma > 0` of the integrand `V(y) = |y|^gamma (...)`.
    pub gamma_exp: f64,
    /// Weight `c > 0` on the negative half-line.
    pub c_weight: f64,
}

impl ModelParams {
    pub fn new(delta: f64, eta: f64, gamma_exp: f64, c_weight: f64) -> Result<Self> {
        let p = ModelParams { delta, eta, gamma_exp, c_weight };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta >= 1.0 && self.delta < 2.0) {
            return Err(Error::domain(
                "ModelParams",
                format!("delta = {} violates delta in [1, 2)", self.delta),
            ));
        }
        if !(self.eta > -1.0 && self.eta < 1.0) {
            return Err(Error::domain(
                "ModelParams",
                format!("eta = {} violates eta in (-1, 1)", self.eta),
            ));
        }
        if !(self.gamma_exp > 0.0) {
            return Err(Error::domain(
                "ModelParams",
                format!("gamma = {} violates gamma > 0", self.gamma_exp),
            ));
        }
        if !(self.c_weight > 0.0) {
            return Err(Error::domain(
                "ModelParams",
                format!("c = {} violates c > 0", self.c_weight),
            ));
        }
        Ok(())
    }

    /// The integrand `V(y) = |y|^gamma (1_{y>=0} - c 1_{y<0})`.
    #[inline]
    pub fn v_gamma(&self, y: f64) -> f64 {
        let m = y.abs().powf(self.gamma_exp);
        if y >= 0.0 {
            m
        } else {
            -self.c_weight * m
        }
    }
}

/// Constants derived from [`ModelParams`]: the self-similarity index `nu`,
/// persistence exponent `theta`, the exit exponents `alpha`, `beta`, the
/// normalisation `A = (2+gamma)^2/2` and the moment ratio `M-/M+`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    pub nu: f64,
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub a_const: f64,
    pub moment_ratio: f64,
}

/// Derive every exponent from the model parameters.
pub fn derive_exponents(p: &ModelParams) -> Result<Exponents> {
    p.validate()?;
    let (delta, eta, gamma, c) = (p.delta, p.eta, p.gamma_exp, p.c_weight);
    let nu = (2.0 - delta) / (2.0 + gamma);
    let pi = std::f64::consts::PI;
    let (snu, cnu) = (nu * pi).sin_cos();
    let skew_plus = c.powf(nu) * (1.0 - eta) / (1.0 + eta);
    let theta = (2.0 + gamma) / (2.0 * pi) * (snu / (skew_plus + cnu)).atan();
    let skew_minus = c.powf(-nu) * (1.0 + eta) / (1.0 - eta);
    let alpha = (snu / (skew_minus + cnu)).atan() / pi;
    let beta = 2.0 * theta / (2.0 + gamma);
    let a_const = (2.0 + gamma) * (2.0 + gamma) / 2.0;
    let moment_ratio =
        (skew_plus * (2.0 * pi / (2.0 + gamma)).sin() + (delta * pi / (2.0 + gamma)).sin()) / snu;
    Ok(Exponents { nu, theta, alpha, beta, a_const, moment_ratio })
}

/// Levels for the exit problem: start `x` of the functional inside `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64, x: f64) -> Result<Self> {
        let iv = Interval { a, b, x };
        iv.validate()?;
        Ok(iv)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a < self.x && self.x < self.b) {
            return Err(Error::domain(
                "Interval",
                format!("need a < x < b, got a = {}, x = {}, b = {}", self.a, self.x, self.b),
            ));
        }
        Ok(())
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}
