use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::kernel::{kernel_minus, kernel_plus};
use super::merge::{degrading_merge, reduce_lossless};
use super::{butterfly, check_block_length, monte_carlo, ChannelArray};
use crate::channels::DiscreteChannel;
use crate::error::{Error, Result};

/// Largest block length accepted by the exact construction.
pub const EXACT_MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Explicit synthesized channels (lossless alphabet reduction only).
    Exact,
    /// Closed-form recursion; all leaves must be erasure-equivalent.
    BecExact,
    /// Kernel recursion with degrading merge to at most `mu` outputs.
    Merge,
    /// Genie-aided SC sampling.
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::BecExact => "bec_exact",
            Method::Merge => "merge",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "bec_exact" | "bec-exact" => Ok(Method::BecExact),
            "merge" => Ok(Method::Merge),
            "monte_carlo" | "monte-carlo" => Ok(Method::MonteCarlo),
            _ => Err(Error::config(format!("unknown construction method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructOptions {
    /// Output cap for [`Method::Merge`].
    pub mu: usize,
    /// Sampled transmissions for [`Method::MonteCarlo`].
    pub trials: usize,
    pub seed: u64,
    /// Per-channel output budget for [`Method::Exact`].
    pub max_symbols: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self {
            mu: 128,
            trials: 10_000,
            seed: 0,
            max_symbols: 1 << 22,
        }
    }
}

/// Reliability data of the `N` synthesized channels.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthChannelParams {
    pub z: Vec<f64>,
    pub i_cap: Vec<f64>,
    pub method: Method,
    /// Only filled by [`Method::Exact`].
    pub exact_channels: Option<Vec<DiscreteChannel>>,
}

impl SynthChannelParams {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn mean_capacity(&self) -> f64 {
        self.i_cap.iter().sum::<f64>() / self.len() as f64
    }

    /// Upper bound on `I(W_N^{(i)})`: the capacity itself for exact methods,
    /// `sqrt(1 - z^2)` otherwise.
    pub fn capacity_bound(&self, i: usize) -> f64 {
        match self.method {
            Method::Exact | Method::BecExact => self.i_cap[i],
            Method::Merge | Method::MonteCarlo => {
                let z = self.z[i];
                (1.0 - z * z).max(0.0).sqrt()
            }
        }
    }
}

/// Closed-form recursion for erasure leaves: `Z- = z1 + z2 - z1 z2`, `Z+ = z1 z2`;
/// `i_cap = 1 - z`.
pub fn bec_recursion(eps: &[f64]) -> Result<SynthChannelParams> {
    check_block_length(eps.len())?;
    if let Some(e) = eps.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return Err(Error::OutOfRange(format!(
            "erasure probability {e} not in [0,1]"
        )));
    }
    let n = eps.len();
    let mut cur = eps.to_vec();
    let mut next = vec![0.0; n];
    let mut q = 1;
    while q < n {
        for p in 0..n / 2 {
            let (k, j) = (p / q, p % q);
            let (a, b) = (cur[2 * k * q + j], cur[2 * k * q + q + j]);
            next[2 * p] = a + b - a * b;
            next[2 * p + 1] = a * b;
        }
        std::mem::swap(&mut cur, &mut next);
        q *= 2;
    }
    let i_cap = cur.iter().map(|z| 1.0 - z).collect();
    Ok(SynthChannelParams {
        z: cur,
        i_cap,
        method: Method::BecExact,
        exact_channels: None,
    })
}

fn params_from_channels(chs: &[DiscreteChannel]) -> (Vec<f64>, Vec<f64>) {
    chs.iter()
        .map(|c| (c.bhattacharyya(), c.capacity()))
        .unzip()
}

pub fn construct(
    leaves: &ChannelArray,
    method: Method,
    opts: &ConstructOptions,
) -> Result<SynthChannelParams> {
    let n = leaves.len();
    match method {
        Method::BecExact => {
            let eps = leaves
                .erasure_profile()
                .ok_or_else(|| Error::MethodMismatch {
                    method: "bec_exact",
                    reason: "some leaves are not erasure channels".into(),
                })?;
            bec_recursion(&eps)
        }
        Method::Exact => {
            if n > EXACT_MAX_N {
                return Err(Error::Budget(format!(
                    "exact construction is limited to N <= {EXACT_MAX_N}, got N = {n}"
                )));
            }
            let budget = opts.max_symbols;
            let level0 = leaves.leaves().iter().map(reduce_lossless).collect();
            let chs = butterfly(level0, |a: &DiscreteChannel, b: &DiscreteChannel| {
                if 2 * a.len() * b.len() > budget {
                    return Err(Error::Budget(format!(
                        "synthesized alphabet of {} symbols exceeds {budget}",
                        2 * a.len() * b.len()
                    )));
                }
                Ok((
                    reduce_lossless(&kernel_minus(a, b)),
                    reduce_lossless(&kernel_plus(a, b)),
                ))
            })?;
            let (z, i_cap) = params_from_channels(&chs);
            Ok(SynthChannelParams {
                z,
                i_cap,
                method,
                exact_channels: Some(chs),
            })
        }
        Method::Merge => {
            if opts.mu < 2 {
                return Err(Error::OutOfRange(format!("merge cap mu = {} < 2", opts.mu)));
            }
            let mu = opts.mu;
            let level0 = leaves
                .leaves()
                .iter()
                .map(|l| degrading_merge(l, mu))
                .collect();
            let chs = butterfly(level0, |a: &DiscreteChannel, b: &DiscreteChannel| {
                Ok((
                    degrading_merge(&kernel_minus(a, b), mu),
                    degrading_merge(&kernel_plus(a, b), mu),
                ))
            })?;
            let (z, i_cap) = params_from_channels(&chs);
            Ok(SynthChannelParams {
                z,
                i_cap,
                method,
                exact_channels: None,
            })
        }
        Method::MonteCarlo => {
            if opts.trials == 0 {
                return Err(Error::OutOfRange(
                    "monte carlo needs at least one trial".into(),
                ));
            }
            let (z, i_cap) = monte_carlo::estimate(leaves, opts.trials, opts.seed);
            Ok(SynthChannelParams {
                z,
                i_cap,
                method,
                exact_channels: None,
            })
        }
    }
}
