//! Special-function kernels used by the closed-form laws.
//!
//! Everything here is real-valued and restricted to the parameter ranges the
//! laws actually produce (`nu < 1/2`, arguments on `[0, inf)`), which keeps
//! the implementations small and testable against brute-force series oracles.

mod bessel;
mod gamma;
mod hyp;
mod incomplete;
mod whittaker;

pub use bessel::{bessel_i, bessel_k};
pub use gamma::{beta_fn, gamma_fn, log_gamma, log_gamma_signed};
pub use hyp::{gauss_2f1, kummer_1f1};
pub use incomplete::{inc_beta, lower_inc_gamma, reg_lower_gamma, reg_upper_gamma};
pub use whittaker::whittaker_w;

/// Relative tail size below which a series is declared converged.
pub(crate) const SERIES_EPS: f64 = 1e-14;
/// Hard cap on series terms; exceeding it is reported as non-convergence.
pub(crate) const SERIES_TERM_CAP: usize = 500;

/// A function value stored as `value * exp(log_scale)` so that huge
/// exponential factors can be carried without overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    /// Mantissa part; multiply by `exp(log_scale)` for the actual value.
    pub value: f64,
    /// Deferred exponent.
    pub log_scale: f64,
    /// Whether the defining series/quadrature met its tolerance.
    pub converged: bool,
    /// Series terms (or quadrature panels) consumed.
    pub terms_used: usize,
}

impl EvalResult {
    pub(crate) fn exact(value: f64) -> Self {
        EvalResult { value, log_scale: 0.0, converged: true, terms_used: 0 }
    }

    /// Collapse to a plain `f64`; may overflow to infinity if the deferred
    /// scale is genuinely too large for double precision.
    pub fn to_f64(&self) -> f64 {
        self.value * self.log_scale.exp()
    }

    /// `ln` of the absolute value.
    pub fn ln_abs(&self) -> f64 {
        self.value.abs().ln() + self.log_scale
    }

    pub fn sign(&self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            self.value.signum()
        }
    }

    /// Multiply by `exp(extra_log)` in deferred form.
    pub fn scaled(mut self, extra_log: f64) -> Self {
        self.log_scale += extra_log;
        self
    }

    /// Pull the mantissa back toward `[1, e)` when it grows large, keeping
    /// the represented value unchanged.
    pub(crate) fn normalized(mut self) -> Self {
        if self.value != 0.0 && self.value.is_finite() {
            let k = self.value.abs().ln();
            if k.abs() > 1.0 {
                self.value /= k.exp();
                self.log_scale += k;
            }
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_result_roundtrip() {
        let e = EvalResult { value: 2.5, log_scale: 3.0, converged: true, terms_used: 1 };
        assert!((e.to_f64() - 2.5 * 3.0f64.exp()).abs() < 1e-12);
        let n = e.normalized();
        assert!((n.to_f64() - e.to_f64()).abs() / e.to_f64() < 1e-14);
        assert!((n.ln_abs() - e.ln_abs()).abs() < 1e-12);
    }
}
