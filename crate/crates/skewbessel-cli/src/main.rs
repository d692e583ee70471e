//! Experiment runner: exponents, densities, samplers, path simulation,
//! survival fits and the verification suites.

mod commands;
mod config;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{ConfigError, ExperimentConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "skewbessel",
    version,
    about = "Closed-form laws and Monte Carlo verification for additive functionals of skew Bessel processes",
    after_help = "Config file keys (flat key=value lines or a JSON object; flags override):\n  \
    delta eta gamma c      model parameters (delta in [1,2), eta in (-1,1), gamma > 0, c > 0)\n  \
    a b x y                levels and start point\n  \
    seed replicas          randomized-run controls (seed is mandatory for them)\n  \
    dt t_max zero_band record_stride   path-simulation controls\n  \
    t_min t_points t_log   time-grid controls for survival curves"
)]
struct Cli {
    /// Config file (flat key=value or JSON); flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads (defaults to the available cores). Results are
    /// independent of this value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Overrides {
    #[arg(long, global = true)]
    delta: Option<f64>,
    #[arg(long, global = true)]
    eta: Option<f64>,
    #[arg(long, global = true)]
    gamma: Option<f64>,
    #[arg(long, global = true)]
    c: Option<f64>,
    #[arg(long, global = true)]
    a: Option<f64>,
    #[arg(long, global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    x: Option<f64>,
    #[arg(long, global = true)]
    y: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    replicas: Option<usize>,
    #[arg(long, global = true)]
    dt: Option<f64>,
    #[arg(long, global = true)]
    t_max: Option<f64>,
    #[arg(long, global = true)]
    zero_band: Option<f64>,
    #[arg(long, global = true)]
    record_stride: Option<u64>,
    #[arg(long, global = true)]
    t_min: Option<f64>,
    #[arg(long, global = true)]
    t_points: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(crate) enum DensityKind {
    XSigma0,
    Overshoot,
    ExitUp,
    ExitDown,
    ExitPositionY0,
    ExitPositionGeneral,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(crate) enum SampleKind {
    XSigma0,
    Overshoot,
    ExitSystem,
    ExitPosition,
    XZetaChain,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(crate) enum StopKindArg {
    Sigma0,
    Hit,
    Exit,
    ZetaHit,
    ZetaExit,
    Horizon,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(crate) enum SuiteArg {
    Analytic,
    Sampler,
    Pathsim,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the derived exponents and their internal consistency residuals.
    Exponents,
    /// Tabulate a closed-form density as CSV rows `z,pdf,cdf`.
    Density {
        #[arg(long, value_enum)]
        which: DensityKind,
        /// Grid bounds; default to the law's 1e-5 and 1-1e-5 quantiles.
        #[arg(long)]
        z_min: Option<f64>,
        #[arg(long)]
        z_max: Option<f64>,
        #[arg(long, default_value_t = 2000)]
        z_points: usize,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw from an exact sampler; CSV output.
    Sample {
        #[arg(long, value_enum)]
        which: SampleKind,
        /// Number of draws (defaults to `replicas`).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run path-simulation replicas to a stopping rule; CSV output.
    Simulate {
        #[arg(long, value_enum)]
        stop: StopKindArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Additionally dump the replica-0 trajectory (`t,y,x` rows thinned
        /// by `record_stride`) to this file.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Estimate the first-passage survival curve and fit its tail exponent.
    Survival {
        /// Output CSV path for the curve (stdout when omitted; the JSON
        /// summary then goes to stderr).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites; JSON report, exit 1 on any failing check.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn resolve_config(cli: &Cli) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    let o = &cli.overrides;
    if let Some(v) = o.delta {
        cfg.delta = v;
    }
    if let Some(v) = o.eta {
        cfg.eta = v;
    }
    if let Some(v) = o.gamma {
        cfg.gamma = v;
    }
    if let Some(v) = o.c {
        cfg.c = v;
    }
    if let Some(v) = o.a {
        cfg.a = v;
    }
    if let Some(v) = o.b {
        cfg.b = v;
    }
    if let Some(v) = o.x {
        cfg.x = v;
    }
    if let Some(v) = o.y {
        cfg.y = v;
    }
    if let Some(v) = o.seed {
        cfg.seed = Some(v);
    }
    if let Some(v) = o.replicas {
        cfg.replicas = v;
    }
    if let Some(v) = o.dt {
        cfg.dt = v;
    }
    if let Some(v) = o.t_max {
        cfg.t_max = v;
    }
    if let Some(v) = o.zero_band {
        cfg.zero_band = Some(v);
    }
    if let Some(v) = o.record_stride {
        cfg.record_stride = v;
    }
    if let Some(v) = o.t_min {
        cfg.t_min = v;
    }
    if let Some(v) = o.t_points {
        cfg.t_points = v;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(threads) = cli.threads {
        if rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().is_err() {
            eprintln!("error: could not configure the thread pool");
            return ExitCode::from(2);
        }
    }

    let cfg = match resolve_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let outcome = match &cli.cmd {
        Cmd::Exponents => commands::exponents(&cfg),
        Cmd::Density { which, z_min, z_max, z_points, out } => {
            commands::density(&cfg, *which, *z_min, *z_max, *z_points, out.as_deref())
        }
        Cmd::Sample { which, n, out } => commands::sample(&cfg, *which, *n, out.as_deref()),
        Cmd::Simulate { stop, n, out, trajectory } => {
            commands::simulate(&cfg, *stop, *n, out.as_deref(), trajectory.as_deref())
        }
        Cmd::Survival { out } => commands::survival(&cfg, out.as_deref()),
        Cmd::Verify { suite, out } => commands::verify(&cfg, *suite, out.as_deref()),
    };

    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
