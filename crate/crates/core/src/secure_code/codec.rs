use rand::Rng;

use super::partition::IndexPartition;
use super::sc::{hard_decision, sc_pass, LLR_CLIP};
use super::transform::gn_transform;
use crate::channels::Symbol;
use crate::error::{Error, Result};
use crate::polarize::{check_block_length, ChannelArray};
use crate::rng;

/// Block length, per-block partitions (with relay sets filled in) and the
/// seeds shared by the session. Frozen positions always carry 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionConfig {
    n: usize,
    partitions: Vec<IndexPartition>,
    pub master_seed: u64,
    pub preshared_seed: u64,
}

impl SessionConfig {
    pub fn new(
        n: usize,
        partitions: Vec<IndexPartition>,
        master_seed: u64,
        preshared_seed: u64,
    ) -> Result<Self> {
        check_block_length(n)?;
        if partitions.is_empty() {
            return Err(Error::config("a session needs at least one block"));
        }
        for (t, p) in partitions.iter().enumerate() {
            p.check(n)
                .map_err(|e| Error::config(format!("block {t}: {e}")))?;
            let needed = partitions.get(t + 1).map_or(0, |next| next.chained.len());
            if p.relay.len() != needed {
                return Err(Error::config(format!(
                    "block {t}: relay set has {} indices, next block chains {needed}",
                    p.relay.len()
                )));
            }
        }
        Ok(Self {
            n,
            partitions,
            master_seed,
            preshared_seed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> usize {
        self.partitions.len()
    }

    pub fn partitions(&self) -> &[IndexPartition] {
        &self.partitions
    }

    pub fn partition(&self, t: usize) -> Result<&IndexPartition> {
        self.partitions.get(t).ok_or(Error::BlockOutOfRange {
            block: t,
            blocks: self.blocks(),
        })
    }

    /// Total message bits per session.
    pub fn message_len(&self) -> usize {
        self.partitions
            .iter()
            .map(IndexPartition::message_len)
            .sum()
    }

    /// The `|B^1|` preshared bits of session number `session`.
    pub fn preshared_bits(&self, session: u64) -> Vec<u8> {
        let mut g = rng::stream(self.preshared_seed, session);
        (0..self.partitions[0].chained.len())
            .map(|_| u8::from(g.random::<bool>()))
            .collect()
    }
}

/// One side's view of a session: `u` and `x` per block and the bits each
/// block's `B` positions must carry.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionState {
    pub u: Vec<Vec<u8>>,
    pub x: Vec<Vec<u8>>,
    /// `relay[t]` holds the bits for `B^t`; `relay[0]` is the preshared key.
    pub relay: Vec<Option<Vec<u8>>>,
}

impl SessionState {
    pub fn new(config: &SessionConfig, preshared: Vec<u8>) -> Result<Self> {
        let need = config.partitions[0].chained.len();
        if preshared.len() != need {
            return Err(Error::LengthMismatch {
                what: "preshared bits",
                expected: need,
                got: preshared.len(),
            });
        }
        let blocks = config.blocks();
        let mut relay = vec![None; blocks];
        relay[0] = Some(preshared);
        Ok(Self {
            u: vec![vec![0; config.n]; blocks],
            x: vec![vec![0; config.n]; blocks],
            relay,
        })
    }

    fn relay_for(&self, t: usize, len: usize) -> Result<&[u8]> {
        match self.relay.get(t) {
            Some(Some(bits)) if bits.len() == len => Ok(bits),
            Some(Some(bits)) => Err(Error::LengthMismatch {
                what: "relay bits",
                expected: len,
                got: bits.len(),
            }),
            _ => Err(Error::MissingRelay(t)),
        }
    }

    fn store_relay(&mut self, t: usize, p: &IndexPartition, u: &[u8]) {
        if t + 1 < self.relay.len() {
            self.relay[t + 1] = Some(p.relay.iter().map(|i| u[i]).collect());
        }
    }
}

/// Builds `u` for block `t` and returns `x = u G_N`. `rng` supplies the bits
/// on `R` and `E`.
pub fn encode_block<G: Rng + ?Sized>(
    message: &[u8],
    config: &SessionConfig,
    state: &mut SessionState,
    t: usize,
    rng: &mut G,
) -> Result<Vec<u8>> {
    let p = config.partition(t)?;
    let msg_set = p.message_set();
    if message.len() != msg_set.len() {
        return Err(Error::LengthMismatch {
            what: "message bits",
            expected: msg_set.len(),
            got: message.len(),
        });
    }
    let chained = state.relay_for(t, p.chained.len())?.to_vec();
    let mut u = vec![0u8; config.n];
    for (i, b) in msg_set.iter().zip(message) {
        u[i] = b & 1;
    }
    for i in p.random.union(&p.relay).iter() {
        u[i] = u8::from(rng.random::<bool>());
    }
    for (i, b) in p.chained.iter().zip(&chained) {
        u[i] = *b;
    }
    let x = gn_transform(&u)?;
    state.store_relay(t, p, &u);
    state.u[t] = u;
    state.x[t] = x.clone();
    Ok(x)
}

/// Leaf LLRs of a received block; erasures outside a leaf's alphabet give 0.
pub(crate) fn leaf_llrs(y: &[Symbol], leaves: &ChannelArray) -> Result<Vec<f64>> {
    if y.len() != leaves.len() {
        return Err(Error::LengthMismatch {
            what: "received block",
            expected: leaves.len(),
            got: y.len(),
        });
    }
    y.iter()
        .zip(leaves.leaves())
        .enumerate()
        .map(|(j, (s, ch))| match ch.position(*s) {
            Some(k) => Ok(ch.llr(k, LLR_CLIP)),
            None if *s == Symbol::Erasure => Ok(0.0),
            None => Err(Error::AlphabetMismatch(format!(
                "symbol `{s}` at position {j} is not an output of its leaf channel"
            ))),
        })
        .collect()
}

pub(crate) fn decode_llrs(
    llr: &[f64],
    config: &SessionConfig,
    state: &mut SessionState,
    t: usize,
) -> Result<Vec<u8>> {
    let p = config.partition(t)?;
    if llr.len() != config.n {
        return Err(Error::LengthMismatch {
            what: "leaf LLRs",
            expected: config.n,
            got: llr.len(),
        });
    }
    let mut known: Vec<Option<u8>> = vec![None; config.n];
    for i in p.frozen.iter() {
        known[i] = Some(0);
    }
    let chained = state.relay_for(t, p.chained.len())?;
    for (i, b) in p.chained.iter().zip(chained) {
        known[i] = Some(*b);
    }
    let u = sc_pass(llr, |i, l| known[i].unwrap_or_else(|| hard_decision(l)));
    state.store_relay(t, p, &u);
    state.x[t] = gn_transform(&u)?;
    state.u[t] = u.clone();
    Ok(u)
}

/// SC-decodes block `t` against the equivalent main channels `leaves`.
/// `F` decodes to 0 and `B` to the relay (or preshared) bits in `state`;
/// the decoded `E` bits are stored for block `t + 1`.
pub fn sc_decode_block(
    y: &[Symbol],
    config: &SessionConfig,
    leaves: &ChannelArray,
    state: &mut SessionState,
    t: usize,
) -> Result<Vec<u8>> {
    if leaves.len() != config.n {
        return Err(Error::LengthMismatch {
            what: "leaf channels",
            expected: config.n,
            got: leaves.len(),
        });
    }
    let llr = leaf_llrs(y, leaves)?;
    decode_llrs(&llr, config, state, t)
}

/// Message bits `u[I \ E]` in ascending index order.
pub fn extract_message(u: &[u8], partition: &IndexPartition) -> Vec<u8> {
    partition.message_set().iter().map(|i| u[i]).collect()
}
