//! Exact variate generation for the standard families the laws reduce to.

use super::RngStream;
use crate::analytic::Exponents;
use crate::error::{Error, Result};
use rand_distr::{Distribution, Gamma};

/// Gamma(shape, 1) draw (Marsaglia–Tsang transform-rejection with the
/// `U^(1/shape)` boost below shape 1).
#[inline]
pub fn sample_gamma(shape: f64, rng: &mut RngStream) -> f64 {
    Gamma::new(shape, 1.0).expect("positive shape").sample(rng)
}

/// InverseGamma(shape, scale) draw: `scale / Gamma(shape, 1)`.
pub fn sample_inverse_gamma(shape: f64, scale: f64, rng: &mut RngStream) -> Result<f64> {
    if !(shape > 0.0 && scale > 0.0) {
        return Err(Error::domain(
            "sample_inverse_gamma",
            format!("shape = {shape}, scale = {scale} must be positive"),
        ));
    }
    loop {
        let g = sample_gamma(shape, rng);
        if g > 0.0 {
            return Ok(scale / g);
        }
    }
}

/// Beta(a, b) via two Gamma draws.
pub fn sample_beta(a: f64, b: f64, rng: &mut RngStream) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain("sample_beta", format!("a = {a}, b = {b} must be positive")));
    }
    loop {
        let g1 = sample_gamma(a, rng);
        let g2 = sample_gamma(b, rng);
        if g1 + g2 > 0.0 {
            return Ok(g1 / (g1 + g2));
        }
    }
}

/// Overshoot draw `(b-x) B/(1-B)` with `B ~ Beta(1-beta, beta)`; the two
/// Gamma draws give the Beta-prime ratio directly.
pub fn sample_overshoot(e: &Exponents, b_minus_x: f64, rng: &mut RngStream) -> Result<f64> {
    if !(b_minus_x > 0.0) {
        return Err(Error::domain("sample_overshoot", format!("b - x = {b_minus_x} must be positive")));
    }
    loop {
        let g1 = sample_gamma(1.0 - e.beta, rng);
        let g2 = sample_gamma(e.beta, rng);
        if g1 > 0.0 && g2 > 0.0 {
            return Ok(b_minus_x * g1 / g2);
        }
    }
}
