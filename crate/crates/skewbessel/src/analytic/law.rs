//! `LawSpec`: a closed-form law bundled with its density, CDF and sampling
//! strategy. Laws without an elementary CDF carry an eagerly built quadrature
//! cache so instances are immutable and freely shareable afterwards.

use crate::error::{Error, Result};
use crate::quad::{self, QuadOpts};
use std::sync::Arc;

pub type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How a law is meant to be sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerTag {
    Exact,
    Rejection,
    InverseCdf,
}

enum CdfImpl {
    Closed(DensityFn),
    Cached(CdfCache),
}

/// A concrete one-dimensional law.
pub struct LawSpec {
    support: (f64, f64),
    pdf: DensityFn,
    log_pdf: DensityFn,
    cdf: CdfImpl,
    tag: SamplerTag,
    mass_defect: f64,
}

impl LawSpec {
    /// Law with a closed-form CDF. `measured_mass` is the caller's quadrature
    /// of its own density (the caller knows the singularity structure);
    /// construction fails if it strays from 1.
    pub(crate) fn with_closed_cdf(
        law: &'static str,
        support: (f64, f64),
        pdf: DensityFn,
        log_pdf: DensityFn,
        cdf: DensityFn,
        tag: SamplerTag,
        measured_mass: f64,
        norm_tol: f64,
    ) -> Result<Self> {
        check_mass(law, measured_mass, norm_tol)?;
        Ok(LawSpec {
            support,
            pdf,
            log_pdf,
            cdf: CdfImpl::Closed(cdf),
            tag,
            mass_defect: (measured_mass - 1.0).abs(),
        })
    }

    /// Law whose CDF is built once by adaptive quadrature over
    /// `[build.lo, build.hi]`, with optional power-law tail handling beyond.
    pub(crate) fn with_cached_cdf(
        law: &'static str,
        support: (f64, f64),
        pdf: DensityFn,
        log_pdf: DensityFn,
        tag: SamplerTag,
        build: CacheBuild,
        norm_tol: f64,
    ) -> Result<Self> {
        let cache = CdfCache::build(law, Arc::clone(&pdf), build)?;
        check_mass(law, cache.total_mass, norm_tol)?;
        let mass_defect = (cache.total_mass - 1.0).abs();
        Ok(LawSpec { support, pdf, log_pdf, cdf: CdfImpl::Cached(cache), tag, mass_defect })
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn sampler_tag(&self) -> SamplerTag {
        self.tag
    }

    /// Absolute deviation of the quadrature mass from 1, recorded at
    /// construction.
    pub fn mass_defect(&self) -> f64 {
        self.mass_defect
    }

    pub fn pdf(&self, z: f64) -> f64 {
        if z <= self.support.0 || z >= self.support.1 {
            return 0.0;
        }
        (self.pdf)(z)
    }

    pub fn log_pdf(&self, z: f64) -> f64 {
        if z <= self.support.0 || z >= self.support.1 {
            return f64::NEG_INFINITY;
        }
        (self.log_pdf)(z)
    }

    pub fn cdf(&self, z: f64) -> f64 {
        if z <= self.support.0 {
            return 0.0;
        }
        if z >= self.support.1 {
            return 1.0;
        }
        match &self.cdf {
            CdfImpl::Closed(f) => f(z).clamp(0.0, 1.0),
            CdfImpl::Cached(c) => c.eval(z),
        }
    }

    /// Numeric inverse CDF by bisection to 1e-12 in probability space.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("quantile", format!("p = {p} outside [0, 1]")));
        }
        let (mut lo, mut hi) = match &self.cdf {
            CdfImpl::Cached(c) => {
                let (lo, mut hi) = c.bracket(p);
                // The quantile can sit beyond the cache window when the law
                // has a power tail; gallop outward until bracketed.
                let mut guard = 0;
                while self.cdf(hi) < p && guard < 400 {
                    hi = if hi > 0.0 { hi * 2.0 } else { hi * 0.5 + 1.0 };
                    guard += 1;
                }
                (lo, hi)
            }
            CdfImpl::Closed(_) => {
                let mut lo = if self.support.0.is_finite() { self.support.0 } else { -1.0 };
                let mut hi = if self.support.1.is_finite() { self.support.1 } else { 1.0 };
                let mut guard = 0;
                while self.cdf(lo) > p && guard < 2100 {
                    lo = if lo <= 0.0 { lo * 2.0 - 1.0 } else { lo / 2.0 };
                    guard += 1;
                }
                while self.cdf(hi) < p && guard < 4200 {
                    hi = if hi >= 0.0 { hi * 2.0 + 1.0 } else { hi / 2.0 };
                    guard += 1;
                }
                (lo, hi)
            }
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if !(mid > lo && mid < hi) {
                break;
            }
            let f = self.cdf(mid);
            if (f - p).abs() < 1e-12 {
                return Ok(mid);
            }
            if f < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

fn check_mass(law: &'static str, mass: f64, tol: f64) -> Result<()> {
    if !((mass - 1.0).abs() <= tol) {
        return Err(Error::LawConstruction {
            law,
            msg: format!("density mass {mass} deviates from 1 beyond {tol}"),
        });
    }
    Ok(())
}

/// Recipe for the quadrature CDF cache.
pub(crate) struct CacheBuild {
    /// Finite window holding all mass except what the tail handlers cover.
    pub lo: f64,
    pub hi: f64,
    /// Interior breakpoints (peaks, kinks, the origin for two-sided laws).
    pub breaks: Vec<f64>,
    /// If the upper tail beyond `hi` decays like `z^(-1-p)`, its exponent;
    /// tail mass is then integrated on demand with the power map. `None`
    /// means the mass beyond `hi` is negligible.
    pub upper_tail_exp: Option<f64>,
}

/// Eagerly built CDF cache: adaptive panels with cumulative masses, queried
/// through cubic Hermite interpolation (panel densities serve as the
/// interpolant's derivatives). Panels whose interpolant misses a mid-panel
/// quadrature check are subdivided at build time.
pub struct CdfCache {
    breaks: Vec<f64>,
    cum: Vec<f64>,
    dens: Vec<f64>,
    total_mass: f64,
    pdf: DensityFn,
    upper_tail_exp: Option<f64>,
    hi: f64,
}

impl CdfCache {
    fn build(law: &'static str, pdf: DensityFn, plan: CacheBuild) -> Result<Self> {
        let mut pts = vec![plan.lo];
        for &b in &plan.breaks {
            if b > plan.lo && b < plan.hi {
                pts.push(b);
            }
        }
        pts.push(plan.hi);
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();

        let opts = QuadOpts { abs_tol: 1e-11, rel_tol: 1e-9, max_panels: 20_000 };
        let run = quad::integrate_pts(|z| pdf(z), &pts, opts).map_err(|e| match e {
            Error::QuadratureFailure { err, .. } => Error::LawConstruction {
                law,
                msg: format!("CDF cache quadrature stalled at error {err:.3e}"),
            },
            other => other,
        })?;

        // Subdivide panels until the Hermite interpolant agrees with a
        // mid-panel quadrature to 1e-9 (skipping panels with a singular edge,
        // which are integrated directly at query time).
        let mut panels: Vec<(f64, f64, f64)> = run.panels;
        let mut i = 0;
        let mut budget = 100_000usize;
        while i < panels.len() {
            let (a, b, mass) = panels[i];
            let mid = 0.5 * (a + b);
            let fa = pdf(a);
            let fb = pdf(b);
            if mid <= a || mid >= b || budget == 0 || !fa.is_finite() || !fb.is_finite() {
                i += 1;
                continue;
            }
            budget -= 1;
            let m1 = small_quad(&pdf, a, mid);
            let interp = hermite(a, b, 0.0, mass, fa, fb, mid);
            if (interp - m1).abs() > 1e-9 {
                let m2 = small_quad(&pdf, mid, b);
                panels[i] = (a, mid, m1);
                panels.insert(i + 1, (mid, b, m2));
            } else {
                i += 1;
            }
        }

        let mut breaks = Vec::with_capacity(panels.len() + 1);
        let mut cum = Vec::with_capacity(panels.len() + 1);
        let mut acc = 0.0;
        breaks.push(panels[0].0);
        cum.push(acc);
        for &(_, b, m) in &panels {
            acc += m;
            breaks.push(b);
            cum.push(acc);
        }
        let tail_mass = match plan.upper_tail_exp {
            Some(p) => quad::integrate_tail(|z| pdf(z), plan.hi, p, QuadOpts::default())
                .map(|r| r.value)
                .unwrap_or(0.0),
            None => 0.0,
        };
        let total_mass = acc + tail_mass;
        let dens: Vec<f64> = breaks.iter().map(|&z| pdf(z)).collect();
        Ok(CdfCache {
            breaks,
            cum,
            dens,
            total_mass,
            pdf,
            upper_tail_exp: plan.upper_tail_exp,
            hi: plan.hi,
        })
    }

    fn eval(&self, z: f64) -> f64 {
        if z <= self.breaks[0] {
            return 0.0;
        }
        if z >= self.hi {
            return match self.upper_tail_exp {
                None => 1.0,
                Some(p) => {
                    let pdf = &self.pdf;
                    let beyond = quad::integrate_tail(|u| pdf(u), z, p, QuadOpts::default())
                        .map(|r| r.value)
                        .unwrap_or(0.0);
                    ((self.total_mass - beyond) / self.total_mass).clamp(0.0, 1.0)
                }
            };
        }
        let k = match self.breaks.partition_point(|&b| b <= z) {
            0 => 0,
            idx => (idx - 1).min(self.breaks.len() - 2),
        };
        let (a, b) = (self.breaks[k], self.breaks[k + 1]);
        let (fa, fb) = (self.dens[k], self.dens[k + 1]);
        let v = if fa.is_finite() && fb.is_finite() {
            hermite(a, b, self.cum[k], self.cum[k + 1], fa, fb, z)
        } else {
            self.cum[k] + small_quad(&self.pdf, a, z)
        };
        (v / self.total_mass).clamp(0.0, 1.0)
    }

    fn bracket(&self, p: f64) -> (f64, f64) {
        let target = p * self.total_mass;
        let idx = self.cum.partition_point(|&c| c < target);
        if idx == 0 {
            (self.breaks[0], self.breaks[1.min(self.breaks.len() - 1)])
        } else if idx >= self.breaks.len() {
            let n = self.breaks.len();
            (self.breaks[n - 2], self.breaks[n - 1])
        } else {
            (self.breaks[idx - 1], self.breaks[idx])
        }
    }
}

/// Cubic Hermite interpolation of the CDF over one panel: values `ca`, `cb`
/// and derivatives (densities) `fa`, `fb` at the ends.
fn hermite(a: f64, b: f64, ca: f64, cb: f64, fa: f64, fb: f64, z: f64) -> f64 {
    let h = b - a;
    let t = (z - a) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * ca + h10 * h * fa + h01 * cb + h11 * h * fb
}

fn small_quad(pdf: &DensityFn, a: f64, b: f64) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    quad::integrate(|z| pdf(z), a, b, QuadOpts { max_panels: 256, ..Default::default() })
        .map(|r| r.value)
        .unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normal_law() -> LawSpec {
        let pdf: DensityFn =
            Arc::new(|z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt());
        let log_pdf: DensityFn =
            Arc::new(|z: f64| -0.5 * z * z - 0.5 * (2.0 * std::f64::consts::PI).ln());
        LawSpec::with_cached_cdf(
            "test-normal",
            (f64::NEG_INFINITY, f64::INFINITY),
            pdf,
            log_pdf,
            SamplerTag::InverseCdf,
            CacheBuild { lo: -9.0, hi: 9.0, breaks: vec![0.0], upper_tail_exp: None },
            1e-8,
        )
        .unwrap()
    }

    #[test]
    fn cached_cdf_matches_erf() {
        let law = normal_law();
        // reference values of Phi(z)
        let cases = [
            (0.0, 0.5),
            (1.0, 0.841_344_746_068_542_9),
            (-1.0, 0.158_655_253_931_457_05),
            (2.5, 0.993_790_334_674_224_1),
        ];
        for (z, want) in cases {
            let got = law.cdf(z);
            assert!((got - want).abs() < 1e-8, "z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        let law = normal_law();
        for &p in &[0.01, 0.3, 0.5, 0.9, 0.999] {
            let z = law.quantile(p).unwrap();
            assert!((law.cdf(z) - p).abs() < 1e-10, "p={p}");
        }
    }

    #[test]
    fn power_tail_cache() {
        // Pareto-like: pdf = p z^(-1-p) on (1, inf) with p = 1/6.
        let p = 1.0 / 6.0;
        let pdf: DensityFn = Arc::new(move |z: f64| if z > 1.0 { p * z.powf(-1.0 - p) } else { 0.0 });
        let log_pdf: DensityFn = Arc::new(move |z: f64| p.ln() - (1.0 + p) * z.ln());
        let law = LawSpec::with_cached_cdf(
            "test-pareto",
            (1.0, f64::INFINITY),
            pdf,
            log_pdf,
            SamplerTag::InverseCdf,
            CacheBuild { lo: 1.0, hi: 1e4, breaks: vec![2.0], upper_tail_exp: Some(p) },
            1e-8,
        )
        .unwrap();
        // exact CDF is 1 - z^(-p), including far beyond the cache window
        for &z in &[1.5f64, 10.0, 9_999.0, 1e7, 1e20] {
            let want = 1.0 - z.powf(-p);
            let got = law.cdf(z);
            assert!((got - want).abs() < 1e-8, "z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn mass_check_rejects_bad_density() {
        let pdf: DensityFn = Arc::new(|_z: f64| 0.9);
        let log_pdf: DensityFn = Arc::new(|_z: f64| 0.9f64.ln());
        let r = LawSpec::with_cached_cdf(
            "test-bad",
            (0.0, 1.0),
            pdf,
            log_pdf,
            SamplerTag::Exact,
            CacheBuild { lo: 0.0, hi: 1.0, breaks: vec![], upper_tail_exp: None },
            1e-8,
        );
        assert!(matches!(r, Err(Error::LawConstruction { .. })));
    }
}
