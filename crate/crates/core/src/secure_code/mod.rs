//! Secure polar coding over the static adversarial wiretap channel: index
//! partition, multi-block chaining, encoding and SC decoding.

mod codec;
mod partition;
mod sc;
mod session;
mod transform;

pub use codec::{encode_block, extract_message, sc_decode_block, SessionConfig, SessionState};
pub use partition::{chain_plan, partition, IndexPartition};
pub use sc::{hard_decision, sc_pass, LLR_CLIP};
pub use session::{plan_session, SessionPlan, SessionSeeds};
pub use transform::{bit_reverse, gn_transform};

use crate::channels::Symbol;
use crate::error::Result;

/// Space-separated tokens `0`, `1`, `?`.
pub fn format_symbols(v: &[Symbol]) -> String {
    v.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_symbols(s: &str) -> Result<Vec<Symbol>> {
    s.split_whitespace().map(str::parse).collect()
}

pub fn bits_to_symbols(bits: &[u8]) -> Vec<Symbol> {
    bits.iter().map(|b| Symbol::bit(*b)).collect()
}
