//! Kummer ₁F₁ and Gauss ₂F₁ hypergeometric functions.

use super::gamma::{log_gamma, log_gamma_signed};
use super::{EvalResult, SERIES_EPS, SERIES_TERM_CAP};
use crate::error::{Error, Result};

/// Argument beyond which the confluent series is replaced by the large-`z`
/// expansion (after the Kummer transformation has made the argument positive).
const KUMMER_ASYMPTOTIC_CUT: f64 = 200.0;

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Plain ascending series of ₁F₁(a; c; z); caller guarantees moderate `z`.
fn series_1f1(a: f64, c: f64, z: f64) -> Result<(f64, usize)> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut small_streak = 0;
    for n in 0..SERIES_TERM_CAP {
        let nf = n as f64;
        term *= (a + nf) / (c + nf) * z / (nf + 1.0);
        sum += term;
        if term.abs() <= SERIES_EPS * sum.abs() {
            small_streak += 1;
            // Two consecutive negligible terms guard against alternating-sum
            // false positives.
            if small_streak >= 2 || term == 0.0 {
                return Ok((sum, n + 1));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence { op: "kummer_1f1", terms: SERIES_TERM_CAP })
}

/// Large-argument expansion of ₁F₁ for `z > 0`:
/// `F ~ Gamma(c)/Gamma(a) e^z z^(a-c) sum_k (c-a)_k (1-a)_k / (k! z^k)`.
fn asymptotic_1f1(a: f64, c: f64, z: f64) -> Result<EvalResult> {
    let (lg_c, _) = (log_gamma(c)?, 1.0);
    let (lg_a, sign_a) = log_gamma_signed(a)?;
    let log_scale = lg_c - lg_a + z + (a - c) * z.ln();

    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut best = f64::INFINITY;
    let mut used = 0;
    for k in 0..60 {
        let kf = k as f64;
        term *= (c - a + kf) * (1.0 - a + kf) / ((kf + 1.0) * z);
        if term.abs() >= best {
            break; // divergent tail of the asymptotic series
        }
        best = term.abs();
        sum += term;
        used = k + 1;
        if term.abs() <= 1e-16 * sum.abs() {
            break;
        }
    }
    Ok(EvalResult { value: sign_a * sum, log_scale, converged: true, terms_used: used }.normalized())
}

/// Confluent hypergeometric function ₁F₁(a; c; z).
///
/// For negative arguments the Kummer transformation
/// `₁F₁(a;c;z) = e^z ₁F₁(c-a;c;-z)` is applied so the series is summed with
/// positive terms (the alternating series sheds `~e^(2|z|)` digits, which
/// already exceeds double precision near `z = -20`); the exponential goes
/// into the deferred `log_scale`.
pub fn kummer_1f1(a: f64, c: f64, z: f64) -> Result<EvalResult> {
    if is_non_positive_integer(c) {
        return Err(Error::Pole { op: "kummer_1f1", msg: format!("c = {c} is a non-positive integer") });
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    if is_non_positive_integer(a) {
        // terminating polynomial, exact at any argument
        let (sum, used) = series_1f1(a, c, z)?;
        return Ok(EvalResult { value: sum, log_scale: 0.0, converged: true, terms_used: used });
    }
    if z < 0.0 {
        let flipped = kummer_1f1(c - a, c, -z)?;
        return Ok(flipped.scaled(z));
    }
    if z > KUMMER_ASYMPTOTIC_CUT && !is_non_positive_integer(a) {
        return asymptotic_1f1(a, c, z);
    }
    let (sum, used) = series_1f1(a, c, z)?;
    Ok(EvalResult { value: sum, log_scale: 0.0, converged: true, terms_used: used }.normalized())
}

/// Plain ascending series of ₂F₁(a, b; c; z) for `|z| <= 1/2`.
fn series_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<(f64, usize)> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut small_streak = 0;
    for n in 0..SERIES_TERM_CAP {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.abs() <= SERIES_EPS * sum.abs() {
            small_streak += 1;
            if small_streak >= 2 || term == 0.0 {
                return Ok((sum, n + 1));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence { op: "gauss_2f1", terms: SERIES_TERM_CAP })
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for `z < 1`.
///
/// Arguments in `(1/2, 1)` are mapped to `1 - z` by the standard linear
/// transformation; negative arguments are mapped into `(0, 1)` by the Pfaff
/// transformation.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<EvalResult> {
    if is_non_positive_integer(c) {
        return Err(Error::Pole { op: "gauss_2f1", msg: format!("c = {c} is a non-positive integer") });
    }
    if z >= 1.0 {
        return Err(Error::domain("gauss_2f1", format!("z = {z} outside (-inf, 1)")));
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    if is_non_positive_integer(a) || is_non_positive_integer(b) {
        // terminating polynomial; the series handles any argument
        let (sum, used) = series_2f1(a, b, c, z)?;
        return Ok(EvalResult { value: sum, log_scale: 0.0, converged: true, terms_used: used });
    }
    if z < 0.0 {
        // Pfaff: (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), argument now in (0,1).
        let w = z / (z - 1.0);
        let inner = gauss_2f1(a, c - b, c, w)?;
        return Ok(inner.scaled(-a * (1.0 - z).ln()));
    }
    if z <= 0.5 {
        let (sum, used) = series_2f1(a, b, c, z)?;
        return Ok(EvalResult { value: sum, log_scale: 0.0, converged: true, terms_used: used });
    }

    // Linear transformation toward w = 1 - z in (0, 1/2).
    let w = 1.0 - z;
    let cab = c - a - b;
    if (cab - cab.round()).abs() < 1e-8 {
        // Degenerate transformation; fall back to the (slow) direct series.
        let (sum, used) = series_2f1(a, b, c, z)?;
        return Ok(EvalResult { value: sum, log_scale: 0.0, converged: true, terms_used: used });
    }
    let (f1, n1) = series_2f1(a, b, a + b - c + 1.0, w)?;
    let (f2, n2) = series_2f1(c - a, c - b, cab + 1.0, w)?;
    let lg_c = log_gamma(c)?;
    let (lg_cab, s_cab) = log_gamma_signed(cab)?;
    let (lg_ca, s_ca) = log_gamma_signed(c - a)?;
    let (lg_cb, s_cb) = log_gamma_signed(c - b)?;
    let (lg_abc, s_abc) = log_gamma_signed(-cab)?;
    let (lg_a, s_a) = log_gamma_signed(a)?;
    let (lg_b, s_b) = log_gamma_signed(b)?;
    let t1 = s_cab * s_ca * s_cb * f1 * (lg_c + lg_cab - lg_ca - lg_cb).exp();
    let t2 = s_abc * s_a * s_b * f2 * (lg_c + lg_abc - lg_a - lg_b + cab * w.ln()).exp();
    Ok(EvalResult { value: t1 + t2, log_scale: 0.0, converged: true, terms_used: n1 + n2 })
}
