use super::codec::SessionConfig;
use super::partition::{chain_plan, partition, IndexPartition};
use crate::awtc::{AdversarySpec, EquivalentChannels};
use crate::channels::DiscreteChannel;
use crate::error::Result;
use crate::polarize::{
    construct, polarized_sets, ChannelArray, ConstructOptions, Method, SynthChannelParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SessionSeeds {
    pub master: u64,
    pub preshared: u64,
}

/// A fully planned session: the shared configuration plus, per block, the
/// equivalent main leaves and both synthesized-parameter vectors.
#[derive(Debug, Clone)]
pub struct SessionPlan {
    pub config: SessionConfig,
    pub main_leaves: Vec<ChannelArray>,
    pub main_params: Vec<SynthChannelParams>,
    pub wiretap_params: Vec<SynthChannelParams>,
}

/// Builds the equivalent channels of every block, constructs both codes,
/// partitions each block and plans the relay chain.
pub fn plan_session(
    w: &DiscreteChannel,
    w_tilde: &DiscreteChannel,
    adversary: &AdversarySpec,
    beta: f64,
    method: Method,
    opts: &ConstructOptions,
    seeds: SessionSeeds,
) -> Result<SessionPlan> {
    let n = adversary.n();
    let mut partitions = Vec::with_capacity(adversary.blocks());
    let mut main_leaves = Vec::with_capacity(adversary.blocks());
    let mut main_params = Vec::with_capacity(adversary.blocks());
    let mut wiretap_params = Vec::with_capacity(adversary.blocks());
    for t in 0..adversary.blocks() {
        let eq = EquivalentChannels::build(w, w_tilde, adversary, t)?;
        let mp = construct(&eq.main_eq, method, opts)?;
        let wp = construct(&eq.wiretap_eq, method, opts)?;
        let low = polarized_sets(&mp, beta)?.low;
        let high = polarized_sets(&wp, beta)?.high;
        partitions.push(partition(&low, &high, n)?);
        main_leaves.push(eq.main_eq);
        main_params.push(mp);
        wiretap_params.push(wp);
    }
    let z: Vec<Vec<f64>> = main_params.iter().map(|p| p.z.clone()).collect();
    let relays = chain_plan(&partitions, &z)?;
    let partitions: Vec<IndexPartition> = partitions
        .into_iter()
        .zip(relays)
        .map(|(p, relay)| IndexPartition { relay, ..p })
        .collect();
    Ok(SessionPlan {
        config: SessionConfig::new(n, partitions, seeds.master, seeds.preshared)?,
        main_leaves,
        main_params,
        wiretap_params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_plan_counts() {
        let nl = DiscreteChannel::noiseless();
        let adv = AdversarySpec::random(64, 2, 0.25, 0.25, 3).unwrap();
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
        for p in plan.config.partitions() {
            assert_eq!(p.info.len() + p.random.len(), 48);
            assert_eq!(p.info.len() + p.frozen.len(), 48);
        }
        let last = plan.config.partitions().last().unwrap();
        assert!(last.relay.is_empty());
        assert_eq!(
            plan.config.partitions()[0].relay.len(),
            plan.config.partitions()[1].chained.len()
        );
    }
}
