//! Closed-form persistence and exit-time laws for additive functionals of
//! skew Bessel processes, together with exact samplers and a Monte Carlo
//! verification harness.
//!
//! The process pair under study is `(X, Y)` where `Y` is a skew Bessel
//! process of dimension `delta in [1,2)` with skewness `eta in (-1,1)`, and
//! `X_t = int_0^t V(Y_u) du` with `V(y) = |y|^gamma (1_{y>=0} - c 1_{y<0})`.
//! The crate is organised as:
//!
//! * [`specfun`] — self-contained special-function kernels (gamma family,
//!   Kummer and Gauss hypergeometrics, modified Bessel, Whittaker W).
//! * [`quad`] — adaptive Gauss–Kronrod quadrature with endpoint-singularity
//!   splitting, shared by all analytic formulas.
//! * [`analytic`] — derived exponents, densities, Mellin/Laplace transforms,
//!   the harmonic function `h` and hitting probabilities.
//! * [`sampler`] — exact and rejection samplers for every closed-form law,
//!   driven by reproducible seeded streams.
//! * [`pathsim`] — discretised path simulation of `(X, Y)` via exact
//!   squared-Bessel transitions and excursion-sign flipping.
//! * [`stats`] — empirical distributions, Kolmogorov–Smirnov distances,
//!   tail-exponent fits and binomial intervals.
//! * [`verify`] — the named invariant checks behind `verify` runs.

pub mod analytic;
pub mod error;
pub mod pathsim;
pub mod quad;
pub mod sampler;
pub mod specfun;
pub mod stats;
pub mod verify;

pub use analytic::{derive_exponents, Exponents, Interval, LawSpec, ModelParams};
pub use error::{Error, Result};
pub use sampler::RngStream;
