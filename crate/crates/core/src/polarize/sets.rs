use super::SynthChannelParams;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;

/// Default rate exponent for the polarization threshold.
pub const DEFAULT_BETA: f64 = 0.3;

/// High- and low-entropy index sets at threshold `delta = 2^(-N^beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizedSets {
    /// `{ i : z[i] >= 1 - delta }`.
    pub high: IndexSet,
    /// `{ i : z[i] <= delta }`.
    pub low: IndexSet,
    pub beta: f64,
    pub delta: f64,
}

/// `2^(-N^beta)`, requiring `0 < beta < 1/2`.
pub fn delta_threshold(n: usize, beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::OutOfRange(format!(
            "beta = {beta} must lie in (0, 0.5)"
        )));
    }
    Ok((-(n as f64).powf(beta)).exp2())
}

pub fn polarized_sets(params: &SynthChannelParams, beta: f64) -> Result<PolarizedSets> {
    let delta = delta_threshold(params.len(), beta)?;
    let high = (0..params.len())
        .filter(|&i| params.z[i] >= 1.0 - delta)
        .collect();
    let low = (0..params.len())
        .filter(|&i| params.z[i] <= delta)
        .collect();
    Ok(PolarizedSets {
        high,
        low,
        beta,
        delta,
    })
}

/// Sum of `z` over the `max(1, floor(N R))` indices with smallest `z`
/// (ties by lower index), for `0 < R < mean(i_cap)`.
pub fn selected_z_sum(params: &SynthChannelParams, rate: f64) -> Result<f64> {
    let mean = params.mean_capacity();
    if !(rate > 0.0 && rate < mean) {
        return Err(Error::OutOfRange(format!(
            "rate {rate} must lie in (0, {mean}) (mean synthesized capacity)"
        )));
    }
    let k = ((params.len() as f64 * rate).floor() as usize).max(1);
    let mut order: Vec<usize> = (0..params.len()).collect();
    order.sort_by(|a, b| params.z[*a].total_cmp(&params.z[*b]).then(a.cmp(b)));
    Ok(order[..k].iter().map(|&i| params.z[i]).sum())
}
