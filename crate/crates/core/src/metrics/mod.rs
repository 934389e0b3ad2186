//! Session simulation, reliability and leakage measurement, secrecy-rate
//! accounting and brute-force oracles for small blocks.

mod leakage;
mod oracle;
mod simulate;

pub use leakage::{leakage_exact_small, LEAKAGE_ENUM_BUDGET};
pub use oracle::{brute_force_params, brute_force_synth, oracle_index, ORACLE_MAX_N};
pub use simulate::{simulate_session, SimReport};

use crate::polarize::SynthChannelParams;
use crate::secure_code::IndexPartition;

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if successes == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (low, high)
}

/// `Σ_t Σ_{i ∈ I^t ∪ F^t}` of the capacity bound of the wiretap synthesized
/// channels of block `t`.
///
/// A strict bound only when the parameters are exact; merge and Monte Carlo
/// estimates of `Z` make it approximate.
pub fn leakage_upper_bound(
    wiretap_params: &[SynthChannelParams],
    partitions: &[IndexPartition],
) -> f64 {
    wiretap_params
        .iter()
        .zip(partitions)
        .map(|(wp, p)| {
            p.info
                .union(&p.frozen)
                .iter()
                .map(|i| wp.capacity_bound(i))
                .sum::<f64>()
        })
        .sum()
}

/// `Σ_t |I^t \ E^t| / (T N)`.
pub fn secrecy_rate(partitions: &[IndexPartition], n: usize) -> f64 {
    if partitions.is_empty() || n == 0 {
        return 0.0;
    }
    let bits: usize = partitions.iter().map(IndexPartition::message_len).sum();
    bits as f64 / (partitions.len() * n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::awtc::AdversarySpec;
    use crate::channels::{DiscreteChannel, ErasureChannel};
    use crate::indexset::IndexSet;
    use crate::polarize::{ConstructOptions, Method};
    use crate::secure_code::{plan_session, SessionSeeds};

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.03 && hi < 0.04);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
        assert!(((lo + hi) / 2.0 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn secrecy_rate_examples() {
        assert_eq!(secrecy_rate(&vec![IndexPartition::default(); 3], 8), 0.0);
        let p = IndexPartition {
            info: [1, 2, 5].into_iter().collect(),
            ..Default::default()
        };
        assert_eq!(secrecy_rate(&[p], 8), 3.0 / 8.0);
    }

    #[test]
    fn leakage_bound_examples() {
        let nl = DiscreteChannel::noiseless();
        let adv = AdversarySpec::random(64, 2, 0.25, 0.125, 1).unwrap();
        let plan = plan_session(
            &nl,
            &nl,
            &adv,
            0.3,
            Method::BecExact,
            &ConstructOptions::default(),
            SessionSeeds::default(),
        )
        .unwrap();
        assert_eq!(
            leakage_upper_bound(&plan.wiretap_params, plan.config.partitions()),
            0.0
        );

        let empty = IndexPartition {
            random: IndexSet::full(4),
            ..Default::default()
        };
        assert_eq!(
            leakage_upper_bound(&plan.wiretap_params[..1], &[empty]),
            0.0
        );
    }

    #[test]
    fn noiseless_rate_near_half() {
        let nl = DiscreteChannel::noiseless();
        let adv = AdversarySpec::random(1024, 1, 0.25, 0.25, 7).unwrap();
        let plan = plan_session(
            &nl,
            &nl,
            &adv,
            0.3,
            Method::BecExact,
            &ConstructOptions::default(),
            SessionSeeds::default(),
        )
        .unwrap();
        let r = secrecy_rate(plan.config.partitions(), 1024);
        assert!((r - 0.5).abs() < 0.05, "{r}");
    }

    #[test]
    fn bec_wiretap_bound_within_threshold_scale_at_1024() {
        let w = ErasureChannel::new(0.1).unwrap().to_channel();
        let wt = ErasureChannel::new(0.4).unwrap().to_channel();
        let adv = AdversarySpec::random(1024, 1, 0.25, 0.125, 2).unwrap();
        let plan = plan_session(
            &w,
            &wt,
            &adv,
            0.3,
            Method::BecExact,
            &ConstructOptions::default(),
            SessionSeeds::default(),
        )
        .unwrap();
        let bound = leakage_upper_bound(&plan.wiretap_params, plan.config.partitions());
        let scale = 1024.0 * crate::polarize::delta_threshold(1024, 0.3).unwrap();
        assert!(bound > 0.0 && bound <= scale, "{bound}");
    }
}
