//! Samplers for the two-sided exit system and the exit position.

use super::variates::sample_overshoot;
use super::RngStream;
use crate::analytic::{derive_exponents, Exponents, Interval, LawSpec, ModelParams};
use crate::error::{Error, Result};
use rand::Rng;

/// Rejection sampler for the exit-system pair `(side, magnitude)`.
///
/// The side is drawn from the closed hitting probability; the magnitude by
/// rejection of one-sided overshoot proposals with acceptance factor
/// `((b-a)/(b-a+z))^alpha` (resp. `beta` on the downward side).
pub struct ExitSystemSampler {
    exponents: Exponents,
    iv: Interval,
    exit_up_prob: f64,
    accepted: u64,
    proposed: u64,
}

impl ExitSystemSampler {
    pub fn new(p: &ModelParams, iv: &Interval) -> Result<Self> {
        iv.validate()?;
        let exponents = derive_exponents(p)?;
        let exit_up_prob = crate::analytic::hitting_prob(p, iv, 0.0)?;
        Ok(ExitSystemSampler { exponents, iv: *iv, exit_up_prob, accepted: 0, proposed: 0 })
    }

    pub fn exit_up_prob(&self) -> f64 {
        self.exit_up_prob
    }

    /// Mean acceptance rate of the magnitude proposals so far.
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            1.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    /// Draw `(side, magnitude)`: side `+1` means the functional left through
    /// `b` and `magnitude = X - b >= 0`; side `-1` means through `a` with
    /// `magnitude = a - X`.
    pub fn sample(&mut self, rng: &mut RngStream) -> Result<(i8, f64)> {
        let up = rng.random::<f64>() < self.exit_up_prob;
        let (width, power) = if up {
            (self.iv.b - self.iv.x, self.exponents.alpha)
        } else {
            (self.iv.x - self.iv.a, self.exponents.beta)
        };
        // proposals use the overshoot envelope on the chosen side, with the
        // exponent swapped on the downward side
        let proposal_exponents = if up {
            self.exponents
        } else {
            Exponents { beta: self.exponents.alpha, alpha: self.exponents.beta, ..self.exponents }
        };
        let ba = self.iv.width();
        for _ in 0..1_000_000u32 {
            self.proposed += 1;
            let z = sample_overshoot(&proposal_exponents, width, rng)?;
            let accept = (ba / (ba + z)).powf(power);
            if rng.random::<f64>() < accept {
                self.accepted += 1;
                if self.acceptance_rate() < 1e-4 && self.proposed > 10_000 {
                    return Err(Error::RejectionStall {
                        op: "sample_exit_system",
                        rate: self.acceptance_rate(),
                    });
                }
                return Ok((if up { 1 } else { -1 }, z));
            }
        }
        Err(Error::RejectionStall { op: "sample_exit_system", rate: self.acceptance_rate() })
    }
}

/// Exit-position draw by numeric inversion of a cached exit-position CDF
/// (bisection to 1e-12 in probability space).
pub fn sample_exit_position(law: &LawSpec, rng: &mut RngStream) -> f64 {
    let u = rng.uniform_open();
    law.quantile(u).expect("u in (0,1)")
}
