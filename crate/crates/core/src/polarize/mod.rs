//! Irregular channel polarization.
//!
//! The transform combines `N = 2^n` possibly different leaf channels with the
//! same butterfly as `G_N = R F^{⊗n}`. Leaf `j` (0-based) carries codeword
//! position `j`. At level `q` (block size `2Q`, `Q = 2^q`) the pair
//! `(slot 2kQ + j, slot 2kQ + Q + j)` becomes `(slot 2kQ + 2j, slot 2kQ + 2j + 1)`
//! through `(⊟, ⊞)`; equivalently, pair `p` of a level lands in slots `2p`
//! and `2p + 1`.

mod construct;
mod kernel;
mod labeled;
mod merge;
mod monte_carlo;
mod sets;

pub use construct::{bec_recursion, construct, ConstructOptions, Method, SynthChannelParams};
pub use kernel::{kernel_minus, kernel_plus};
pub use labeled::{synthesize_labeled, OutputLabel};
pub use merge::{degrading_merge, reduce_lossless};
pub use sets::{delta_threshold, polarized_sets, selected_z_sum, PolarizedSets, DEFAULT_BETA};

use rayon::prelude::*;

use crate::channels::DiscreteChannel;
use crate::error::{Error, Result};

/// `N = 2^n` leaf channels, leaf `j` acting on codeword position `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelArray {
    leaves: Vec<DiscreteChannel>,
}

impl ChannelArray {
    pub fn new(leaves: Vec<DiscreteChannel>) -> Result<Self> {
        check_block_length(leaves.len())?;
        Ok(Self { leaves })
    }

    pub fn leaves(&self) -> &[DiscreteChannel] {
        &self.leaves
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// `log2(N)`.
    pub fn n(&self) -> u32 {
        self.leaves.len().trailing_zeros()
    }

    pub fn capacities(&self) -> Vec<f64> {
        self.leaves.iter().map(|l| l.capacity()).collect()
    }

    pub fn total_capacity(&self) -> f64 {
        self.capacities().iter().sum()
    }

    /// Erasure probabilities if every leaf is erasure-equivalent.
    pub fn erasure_profile(&self) -> Option<Vec<f64>> {
        self.leaves.iter().map(|l| l.erasure_equivalent()).collect()
    }
}

pub(crate) fn check_block_length(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

/// Runs the level-by-level butterfly over arbitrary per-slot values.
/// `kernel(a, b)` returns `(a ⊟ b, a ⊞ b)`.
pub(crate) fn butterfly<T, F>(level0: Vec<T>, kernel: F) -> Result<Vec<T>>
where
    T: Send + Sync,
    F: Fn(&T, &T) -> Result<(T, T)> + Sync,
{
    let n = level0.len();
    check_block_length(n)?;
    let mut cur = level0;
    let mut q = 1;
    while q < n {
        let pairs: Vec<(T, T)> = (0..n / 2)
            .into_par_iter()
            .map(|p| {
                let (k, j) = (p / q, p % q);
                kernel(&cur[2 * k * q + j], &cur[2 * k * q + q + j])
            })
            .collect::<Result<_>>()?;
        cur = pairs.into_iter().flat_map(|(m, p)| [m, p]).collect();
        q *= 2;
    }
    Ok(cur)
}
