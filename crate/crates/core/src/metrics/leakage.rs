//! Exact `I(M; Z)` for single-block sessions by full enumeration.

use crate::awtc::{equivalent_wiretap, AdversarySpec};
use crate::channels::DiscreteChannel;
use crate::error::{Error, Result};
use crate::secure_code::{gn_transform, SessionConfig};

/// Cap on `2^(free bits) * |Z|` enumeration states.
pub const LEAKAGE_ENUM_BUDGET: usize = 1 << 26;

/// `I(M; Z)` in bits for a one-block session with `N <= 8`. Message, random
/// and chained (preshared) bits are uniform; frozen bits are 0.
pub fn leakage_exact_small(
    w_tilde: &DiscreteChannel,
    adversary: &AdversarySpec,
    config: &SessionConfig,
) -> Result<f64> {
    let n = config.n();
    if n > 8 || config.blocks() != 1 {
        return Err(Error::Budget(format!(
            "exact leakage needs N <= 8 and T = 1, got N = {n}, T = {}",
            config.blocks()
        )));
    }
    if adversary.n() != n {
        return Err(Error::LengthMismatch {
            what: "adversary block length",
            expected: n,
            got: adversary.n(),
        });
    }
    let p = config.partition(0)?;
    let msg: Vec<usize> = p.message_set().iter().collect();
    if msg.is_empty() {
        return Ok(0.0);
    }
    let hidden: Vec<usize> = p.random.union(&p.chained).union(&p.relay).iter().collect();
    let eve = equivalent_wiretap(w_tilde, adversary, 0)?;
    let nz = eve
        .leaves()
        .iter()
        .try_fold(1usize, |acc, l| acc.checked_mul(l.len()))
        .unwrap_or(usize::MAX);
    let states = (1usize << (msg.len() + hidden.len())).saturating_mul(nz);
    if states > LEAKAGE_ENUM_BUDGET {
        return Err(Error::Budget(format!(
            "enumeration needs {states} states, budget {LEAKAGE_ENUM_BUDGET}"
        )));
    }

    let n_msg = 1usize << msg.len();
    let n_hidden = 1usize << hidden.len();
    let mut pz_m = vec![vec![0.0; nz]; n_msg];
    let mut pz = vec![0.0; nz];
    let mut next = Vec::with_capacity(nz);
    for (m, row) in pz_m.iter_mut().enumerate() {
        for h in 0..n_hidden {
            let mut u = vec![0u8; n];
            for (k, &i) in msg.iter().enumerate() {
                u[i] = ((m >> k) & 1) as u8;
            }
            for (k, &i) in hidden.iter().enumerate() {
                u[i] = ((h >> k) & 1) as u8;
            }
            let x = gn_transform(&u)?;
            let mut prob = vec![1.0 / n_hidden as f64];
            for (leaf, &xj) in eve.leaves().iter().zip(&x) {
                let r = if xj == 0 { leaf.p0() } else { leaf.p1() };
                next.clear();
                for q in &prob {
                    next.extend(r.iter().map(|v| q * v));
                }
                std::mem::swap(&mut prob, &mut next);
            }
            for (acc, q) in row.iter_mut().zip(&prob) {
                *acc += q;
            }
        }
        for (acc, q) in pz.iter_mut().zip(row.iter()) {
            *acc += q / n_msg as f64;
        }
    }
    let mut info = 0.0;
    for row in &pz_m {
        for (a, b) in row.iter().zip(&pz) {
            if *a > 0.0 && a != b {
                info += a * (a / b).log2();
            }
        }
    }
    Ok((info / n_msg as f64).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::ErasureChannel;
    use crate::indexset::IndexSet;
    use crate::metrics::leakage_upper_bound;
    use crate::polarize::{ConstructOptions, Method};
    use crate::secure_code::{partition, plan_session, IndexPartition, SessionSeeds};

    #[test]
    fn no_message_no_leakage() {
        let p = partition(&IndexSet::new(), &IndexSet::full(4), 4).unwrap();
        let cfg = SessionConfig::new(4, vec![p], 0, 0).unwrap();
        let adv = AdversarySpec::random(4, 1, 0.5, 0.0, 0).unwrap();
        assert_eq!(
            leakage_exact_small(&DiscreteChannel::noiseless(), &adv, &cfg).unwrap(),
            0.0
        );
    }

    #[test]
    fn noiseless_wiretap_leaks_nothing() {
        let nl = DiscreteChannel::noiseless();
        let adv = AdversarySpec::random(4, 1, 0.5, 0.0, 3).unwrap();
        let plan = plan_session(
            &nl,
            &nl,
            &adv,
            0.3,
            Method::Exact,
            &ConstructOptions::default(),
            SessionSeeds::default(),
        )
        .unwrap();
        assert!(!plan.config.partitions()[0].info.is_empty());
        assert_eq!(leakage_exact_small(&nl, &adv, &plan.config).unwrap(), 0.0);
    }

    #[test]
    fn unprotected_message_leaks() {
        // every position is information and Eve reads half the block
        let nl = DiscreteChannel::noiseless();
        let p = IndexPartition {
            info: IndexSet::full(4),
            ..Default::default()
        };
        let cfg = SessionConfig::new(4, vec![p], 0, 0).unwrap();
        let adv = AdversarySpec::random(4, 1, 0.5, 0.0, 3).unwrap();
        assert!((leakage_exact_small(&nl, &adv, &cfg).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bec_wiretap_below_bound() {
        let w = DiscreteChannel::noiseless();
        let wt = ErasureChannel::new(0.5).unwrap().to_channel();
        let adv = AdversarySpec::random(4, 1, 0.5, 0.0, 1).unwrap();
        let plan = plan_session(
            &w,
            &wt,
            &adv,
            0.3,
            Method::Exact,
            &ConstructOptions::default(),
            SessionSeeds::default(),
        )
        .unwrap();
        let exact = leakage_exact_small(&wt, &adv, &plan.config).unwrap();
        let bound = leakage_upper_bound(&plan.wiretap_params, plan.config.partitions());
        assert!(exact <= bound + 1e-9, "{exact} > {bound}");
    }

    #[test]
    fn refuses_large_instances() {
        let p = IndexPartition {
            info: IndexSet::full(16),
            ..Default::default()
        };
        let cfg = SessionConfig::new(16, vec![p], 0, 0).unwrap();
        let adv = AdversarySpec::random(16, 1, 0.5, 0.0, 1).unwrap();
        assert!(leakage_exact_small(&DiscreteChannel::noiseless(), &adv, &cfg).is_err());
    }
}
