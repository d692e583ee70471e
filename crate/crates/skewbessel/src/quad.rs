//! Adaptive Gauss–Kronrod quadrature.
//!
//! All densities in this crate carry integrable endpoint singularities of the
//! `z^-beta` type, so the integrators accept explicit breakpoints and refine
//! by global-error bisection from there. Semi-infinite ranges are mapped onto
//! `(0,1)` before refinement.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

/// 15-point Kronrod nodes on `[-1, 1]` (positive half, including 0).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];

/// Weights of the 15-point Kronrod rule, matching [`XGK`].
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Weights of the embedded 7-point Gauss rule (odd Kronrod nodes).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One 15-point Gauss–Kronrod panel; returns `(integral, error_estimate)`.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut res_abs = kronrod.abs();

    let mut fv = [0.0f64; 15];
    fv[7] = f_center;
    for j in 0..7 {
        let abscissa = half * XGK[j];
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv[j] = f1;
        fv[14 - j] = f2;
        let fsum = f1 + f2;
        kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let result = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    // GSL-style error rescaling: sharpens the raw |K15 - G7| difference.
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Tolerances and interval budget for adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOpts {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOpts {
    fn default() -> Self {
        QuadOpts { abs_tol: 1e-10, rel_tol: 1e-8, max_panels: 4096 }
    }
}

/// Outcome of an adaptive run, retaining the final partition so callers can
/// reuse it (the CDF caches are built straight from these panels).
#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    /// Sorted `(a, b, integral_over_panel)` covering the integration range.
    pub panels: Vec<(f64, f64, f64)>,
}

/// Adaptive integral of `f` over the union of `[pts[i], pts[i+1]]`.
///
/// `pts` must be finite and increasing; put a breakpoint at every known
/// integrable singularity or density peak.
pub fn integrate_pts<F: FnMut(f64) -> f64>(
    mut f: F,
    pts: &[f64],
    opts: QuadOpts,
) -> Result<QuadResult> {
    let mut pts: Vec<f64> = pts.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    assert!(pts.len() >= 2, "need at least two distinct breakpoints");
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        assert!(a.is_finite() && b.is_finite(), "non-finite breakpoints {a} {b}");
        let (v, e) = gk15(&mut f, a, b);
        total += v;
        total_err += e;
        heap.push(Panel { a, b, value: v, err: e });
    }

    while total_err > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if heap.len() >= opts.max_panels {
            return Err(Error::QuadratureFailure { op: "integrate", err: total_err });
        }
        let worst = heap.pop().expect("heap cannot be empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; accept its estimate.
            total_err -= worst.err;
            let mut spent = worst;
            spent.err = 0.0;
            heap.push(spent);
            continue;
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
    }

    let mut panels: Vec<(f64, f64, f64)> =
        heap.into_iter().map(|p| (p.a, p.b, p.value)).collect();
    panels.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(QuadResult { value: total, abs_err: total_err, panels })
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOpts) -> Result<QuadResult> {
    integrate_pts(f, &[a, b], opts)
}

/// Adaptive integral of `f(h)` over offsets `h in (0, width)` when
/// `f(h) ~ h^(lam-1) g(h)` with smooth `g`; substitutes `u = h^lam` so the
/// mapped integrand is bounded.
///
/// The argument is the *offset from the singular endpoint*, which keeps the
/// evaluation free of the `z - a` cancellation; callers at a shifted endpoint
/// pass `|h| f(a + h)` (or `|h| f(b - h)` for an upper-endpoint singularity).
/// Bisection alone cannot resolve exponents `lam` near 0 (the singular mass
/// shrinks like `eps^lam`), hence the explicit map.
pub fn integrate_power_lower<F: FnMut(f64) -> f64>(
    mut f: F,
    width: f64,
    lam: f64,
    opts: QuadOpts,
) -> Result<QuadResult> {
    assert!(lam > 0.0 && width > 0.0);
    let g = move |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let h = u.powf(1.0 / lam);
        let jac = u.powf(1.0 / lam - 1.0) / lam;
        let v = f(h) * jac;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let u_hi = width.powf(lam);
    // Start a hair above zero so `h` never underflows; the omitted relative
    // mass is ~1e-12 of the total for any lam of interest.
    integrate_pts(g, &[u_hi * 1e-12, u_hi], opts)
}

/// Adaptive integral of `f` over `[c, +inf)` when `f(z) ~ z^(-1-p) g(z)` with
/// `g` slowly varying and `p > 0`; substitutes `v = (c/z)^p`, under which the
/// integrand is bounded at the far end. The argument here is `z` itself
/// (no cancellation arises on the far tail).
pub fn integrate_tail<F: FnMut(f64) -> f64>(
    mut f: F,
    c: f64,
    p: f64,
    opts: QuadOpts,
) -> Result<QuadResult> {
    assert!(c > 0.0 && p > 0.0);
    let g = move |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let z = c * v.powf(-1.0 / p);
        let jac = (c / p) * v.powf(-1.0 - 1.0 / p);
        let w = f(z) * jac;
        if w.is_finite() {
            w
        } else {
            0.0
        }
    };
    // keep z representable: v >= (c/1e290)^p
    let v_min = (c * 1e-290).powf(p).max(1e-280);
    integrate_pts(g, &[v_min, 1.0], opts)
}
