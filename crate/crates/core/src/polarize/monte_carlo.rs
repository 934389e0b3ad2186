//! Genie-aided SC estimates of the synthesized-channel parameters.
//!
//! Each trial draws a uniform `u`, sends `x = u G_N` through the leaves and
//! runs SC with the true bits fed back. With `s = +1` when `u_i = 0` and
//! `s = -1` otherwise, `exp(-s L/2)` is an unbiased sample of `Z(W_N^{(i)})`
//! and `1 - log2(1 + exp(-s L))` of `I(W_N^{(i)})`.

use rand::Rng;
use rayon::prelude::*;

use super::ChannelArray;
use crate::rng;
use crate::secure_code::{gn_transform, sc_pass, LLR_CLIP};

const CHUNK: usize = 256;

fn run_trial(leaves: &ChannelArray, seed: u64, trial: usize, z: &mut [f64], i_cap: &mut [f64]) {
    let mut g = rng::stream(seed, trial as u64);
    let n = leaves.len();
    let u: Vec<u8> = (0..n).map(|_| u8::from(g.random::<bool>())).collect();
    let x = gn_transform(&u).expect("block length checked by ChannelArray");
    let llr: Vec<f64> = leaves
        .leaves()
        .iter()
        .zip(&x)
        .map(|(ch, &b)| ch.llr(ch.sample(b, &mut g), LLR_CLIP))
        .collect();
    sc_pass(&llr, |i, l| {
        let sl = if u[i] == 0 { l } else { -l };
        z[i] += (-sl / 2.0).exp();
        i_cap[i] += 1.0 - (-sl).exp().ln_1p() / std::f64::consts::LN_2;
        u[i]
    });
}

/// Returns `(z, i_cap)` averaged over `trials` seeded trials. Trials are
/// grouped in fixed chunks whose partial sums are added in chunk order, so
/// the result does not depend on the thread count.
pub(crate) fn estimate(leaves: &ChannelArray, trials: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let n = leaves.len();
    let trials = trials.max(1);
    let partial: Vec<(Vec<f64>, Vec<f64>)> = (0..trials.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut z = vec![0.0; n];
            let mut i_cap = vec![0.0; n];
            for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                run_trial(leaves, seed, t, &mut z, &mut i_cap);
            }
            (z, i_cap)
        })
        .collect();
    let mut z = vec![0.0; n];
    let mut i_cap = vec![0.0; n];
    for (pz, pi) in partial {
        for k in 0..n {
            z[k] += pz[k];
            i_cap[k] += pi[k];
        }
    }
    let scale = 1.0 / trials as f64;
    (
        z.into_iter().map(|v| (v * scale).clamp(0.0, 1.0)).collect(),
        i_cap
            .into_iter()
            .map(|v| (v * scale).clamp(0.0, 1.0))
            .collect(),
    )
}
