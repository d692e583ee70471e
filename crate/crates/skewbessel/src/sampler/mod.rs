//! Exact and rejection samplers for the closed-form laws, plus the zero-chain
//! sampler that reaches the post-crossing zeros without path discretisation.

mod chain;
mod exit;
mod rng;
mod variates;

pub use chain::{sample_x_zeta_from, zero_chain_to_zeta};
pub use exit::{sample_exit_position, ExitSystemSampler};
pub use rng::RngStream;
pub use variates::{sample_beta, sample_gamma, sample_inverse_gamma, sample_overshoot};

use rayon::prelude::*;

/// Draw `n` replicas in parallel, one [`RngStream`] per fixed-size block so
/// the output is bit-identical for any worker count.
pub fn draw_many<T, F>(seed: u64, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RngStream) -> T + Sync + Send,
{
    const BLOCK: usize = 1024;
    let blocks = n.div_ceil(BLOCK);
    let f = &f;
    (0..blocks)
        .into_par_iter()
        .flat_map_iter(move |b| {
            let mut rng = RngStream::new(seed, b as u64);
            let take = BLOCK.min(n - b * BLOCK);
            (0..take).map(move |_| f(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}
