//! The named verification suites must pass at desk scale on both a symmetric
//! and an asymmetric parameter set.

use skewbessel::analytic::{Interval, ModelParams};
use skewbessel::verify::{analytic_suite, sampler_suite, VerifyConfig};

fn report(checks: &[skewbessel::verify::Check]) -> String {
    checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: {} vs {}", c.name, c.statistic, c.threshold))
        .collect::<Vec<_>>()
        .join("; ")
}

#[test]
fn analytic_suite_passes_symmetric() {
    let cfg = VerifyConfig::defaults(2024);
    let checks = analytic_suite(&cfg).unwrap();
    assert!(checks.len() >= 15);
    assert!(checks.iter().all(|c| c.pass), "failing: {}", report(&checks));
}

#[test]
fn analytic_suite_passes_asymmetric() {
    let mut cfg = VerifyConfig::defaults(2025);
    cfg.params = ModelParams { delta: 1.5, eta: 0.3, gamma_exp: 1.0, c_weight: 2.0 };
    cfg.interval = Interval { a: -0.7, b: 1.2, x: 0.1 };
    let checks = analytic_suite(&cfg).unwrap();
    assert!(checks.iter().all(|c| c.pass), "failing: {}", report(&checks));
}

#[test]
fn sampler_suite_passes() {
    let mut cfg = VerifyConfig::defaults(7);
    cfg.replicas = 30_000;
    let checks = sampler_suite(&cfg).unwrap();
    assert!(checks.iter().all(|c| c.pass), "failing: {}", report(&checks));
}

#[test]
fn pathsim_suite_passes_quickly() {
    let mut cfg = VerifyConfig::defaults(11);
    cfg.replicas = 6_000;
    let checks = skewbessel::verify::pathsim_suite(&cfg).unwrap();
    assert!(checks.iter().all(|c| c.pass), "failing: {}", report(&checks));
}
