use skewbessel::analytic::{exit_position_law_y0, hitting_prob, Interval, ModelParams};
use skewbessel::pathsim::{run_replicas, PathConfig, StopKind, StopSpec};
use skewbessel::stats::{binomial_ci, ks_critical, ks_statistic, EmpiricalDist};
fn main() {
    for (pp, iv) in [
        (ModelParams::new(1.0, 0.0, 1.0, 1.0).unwrap(), Interval::new(-1.0, 1.0, 0.0).unwrap()),
        (ModelParams::new(1.5, 0.3, 1.0, 2.0).unwrap(), Interval::new(-0.7, 1.2, 0.1).unwrap()),
        (ModelParams::new(1.2, -0.4, 2.0, 0.7).unwrap(), Interval::new(-1.0, 1.0, 0.0).unwrap()),
    ] {
        let t0 = std::time::Instant::now();
        let cfg = PathConfig::with_dt(1e-4, 1e6);
        let n = 100_000;
        let res = run_replicas(&pp, &cfg, (iv.x, 0.0), &StopSpec::Exit { a: iv.a, b: iv.b }, 777, n).unwrap();
        let ups = res.iter().filter(|s| s.stop_kind == StopKind::ExitTab && s.x_at_stop >= iv.b).count();
        let hp = hitting_prob(&pp, &iv, 0.0).unwrap();
        let (lo, hi) = binomial_ci(ups as u64, n as u64, 0.99).unwrap();
        let law = exit_position_law_y0(&pp, &iv).unwrap();
        let ys: Vec<f64> = res.iter().map(|s| s.y_at_stop).collect();
        let emp = EmpiricalDist::from_samples(ys).unwrap();
        let ks = ks_statistic(&emp, |z| law.cdf(z));
        let steps: u64 = res.iter().map(|s| s.steps).sum();
        println!(
            "exit {:?}: hp={:.5} wilson=[{:.5},{:.5}] in={} | KS={:.6} crit={:.6} | steps={} t={:?}",
            (pp.delta, pp.eta, pp.gamma_exp, pp.c_weight), hp, lo, hi, lo <= hp && hp <= hi,
            ks.d, ks_critical(n, 0.01), steps, t0.elapsed()
        );
    }
}
