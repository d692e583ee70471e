//! Estimators used by the verification harness: empirical CDFs, KS
//! statistics, tail-exponent regression and binomial intervals.

use crate::error::{Error, Result};

/// A sorted sample set.
#[derive(Debug, Clone)]
pub struct EmpiricalDist {
    sorted: Vec<f64>,
}

impl EmpiricalDist {
    pub fn from_samples(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InsufficientData { op: "EmpiricalDist", need: 1, got: 0 });
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(Error::domain("EmpiricalDist", "NaN sample".to_string()));
        }
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(EmpiricalDist { sorted: samples })
    }

    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    /// Right-continuous empirical CDF.
    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.sorted.partition_point(|&v| v <= x);
        k as f64 / self.sorted.len() as f64
    }

    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.sorted.len();
        let idx = ((p * n as f64).ceil() as usize).clamp(1, n);
        self.sorted[idx - 1]
    }
}

/// KS distance plus the asymptotic 0.001-level critical value `1.9495/sqrt(n)`.
#[derive(Debug, Clone, Copy)]
pub struct KsResult {
    pub d: f64,
    pub critical_001: f64,
}

/// One-sample Kolmogorov–Smirnov statistic against a reference CDF
/// (both one-sided gaps at every sample point).
pub fn ks_statistic<F: Fn(f64) -> f64>(e: &EmpiricalDist, cdf: F) -> KsResult {
    let n = e.n() as f64;
    let mut d = 0.0f64;
    for (i, &x) in e.samples().iter().enumerate() {
        let f = cdf(x);
        let upper = (i as f64 + 1.0) / n - f;
        let lower = f - i as f64 / n;
        d = d.max(upper).max(lower);
    }
    KsResult { d, critical_001: 1.9495 / n.sqrt() }
}

/// Two-sample KS distance.
pub fn ks_two_sample(a: &EmpiricalDist, b: &EmpiricalDist) -> f64 {
    let mut d = 0.0f64;
    let (xs, ys) = (a.samples(), b.samples());
    let (mut i, mut j) = (0usize, 0usize);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    while i < xs.len() && j < ys.len() {
        if xs[i] <= ys[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// CDF of the Kolmogorov distribution, `P(sup|B(t)| <= x)` for the Brownian
/// bridge sup-norm limit.
pub fn kolmogorov_cdf(x: f64) -> f64 {
    if x <= 0.05 {
        return 0.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * x * x).exp();
        sum += if k % 2 == 1 { -term } else { term };
        if term < 1e-18 {
            break;
        }
    }
    (1.0 + 2.0 * sum).clamp(0.0, 1.0)
}

/// Quantile of the Kolmogorov distribution at level `p` (e.g. 0.99 -> 1.6276).
pub fn kolmogorov_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (0.2, 4.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kolmogorov_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Critical KS distance at significance `alpha` for sample size `n`.
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    kolmogorov_quantile(1.0 - alpha) / (n as f64).sqrt()
}

/// Weighted least-squares power-law fit of a survival curve.
#[derive(Debug, Clone, Copy)]
pub struct TailFit {
    pub theta_hat: f64,
    pub theta_se: f64,
    pub kappa_hat: f64,
}

/// Fit `p ~ kappa t^(-theta)` by weighted least squares of `log p` on
/// `log t`, with weights `(p/se)^2` (the inverse variance of `log p`).
pub fn tail_exponent_fit(curve: &[(f64, f64, f64)]) -> Result<TailFit> {
    if curve.len() < 5 {
        return Err(Error::InsufficientData { op: "tail_exponent_fit", need: 5, got: curve.len() });
    }
    let mut prev_t = 0.0;
    for &(t, p, _) in curve {
        if !(t > prev_t) {
            return Err(Error::domain("tail_exponent_fit", format!("t values must increase, got {t}")));
        }
        if !(p > 0.0) {
            return Err(Error::domain("tail_exponent_fit", format!("p = {p} must be positive")));
        }
        prev_t = t;
    }
    let mut sw = 0.0;
    let mut swx = 0.0;
    let mut swy = 0.0;
    for &(t, p, se) in curve {
        let w = if se > 0.0 { (p / se) * (p / se) } else { 1.0 };
        sw += w;
        swx += w * t.ln();
        swy += w * p.ln();
    }
    let xbar = swx / sw;
    let ybar = swy / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(t, p, se) in curve {
        let w = if se > 0.0 { (p / se) * (p / se) } else { 1.0 };
        let dx = t.ln() - xbar;
        sxx += w * dx * dx;
        sxy += w * dx * (p.ln() - ybar);
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    Ok(TailFit {
        theta_hat: -slope,
        theta_se: (1.0 / sxx).sqrt(),
        kappa_hat: intercept.exp(),
    })
}

/// Wilson score interval for a binomial proportion.
pub fn binomial_ci(k: u64, n: u64, level: f64) -> Result<(f64, f64)> {
    if k > n || n == 0 {
        return Err(Error::domain("binomial_ci", format!("k = {k}, n = {n}")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain("binomial_ci", format!("level = {level} outside (0,1)")));
    }
    let z = normal_quantile(0.5 + level / 2.0);
    let n_f = n as f64;
    let p_hat = k as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let center = (p_hat + z2 / (2.0 * n_f)) / denom;
    let half = z * (p_hat * (1.0 - p_hat) / n_f + z2 / (4.0 * n_f * n_f)).sqrt() / denom;
    Ok(((center - half).max(0.0), (center + half).min(1.0)))
}

/// Standard normal quantile (Acklam's rational approximation, |err| < 1e-9).
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "p = {p} outside (0,1)");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    let p_low = 0.02425;
    if p < p_low {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - p_low {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -normal_quantile(1.0 - p)
    }
}
