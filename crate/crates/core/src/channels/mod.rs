//! Binary-input discrete memoryless channels.
//!
//! A [`DiscreteChannel`] is stored as two probability rows over an ordered
//! output alphabet. Everything downstream (synthesized bit-channels,
//! adversarial equivalent channels, decoder likelihoods) is expressed in this
//! one representation.

mod profile;

pub use profile::{line_of_offset, ChannelKind, ChannelProfile};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance on row sums for channels built through [`DiscreteChannel::new`].
pub const ROW_SUM_TOL: f64 = 1e-12;

/// An abstract output symbol.
///
/// `Zero`, `One` and `Erasure` have fixed meaning (they can be fed into a
/// binary-input channel or stand for the dump letter `?`); `Id` tokens are
/// opaque and are what synthesized channels use for their product alphabets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Erasure,
    Id(u32),
}

impl Symbol {
    pub fn bit(b: u8) -> Symbol {
        if b & 1 == 0 {
            Symbol::Zero
        } else {
            Symbol::One
        }
    }

    /// The bit value of a `Zero`/`One` symbol.
    pub fn as_bit(self) -> Option<u8> {
        match self {
            Symbol::Zero => Some(0),
            Symbol::One => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Zero => f.write_str("0"),
            Symbol::One => f.write_str("1"),
            Symbol::Erasure => f.write_str("?"),
            Symbol::Id(k) => write!(f, "y{k}"),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(Symbol::Zero),
            "1" => Ok(Symbol::One),
            "?" => Ok(Symbol::Erasure),
            _ => s
                .strip_prefix('y')
                .and_then(|k| k.parse::<u32>().ok())
                .map(Symbol::Id)
                .ok_or_else(|| Error::config(format!("unknown output symbol `{s}`"))),
        }
    }
}

/// A binary-input channel given by explicit transition probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteChannel {
    outputs: Vec<Symbol>,
    p0: Vec<f64>,
    p1: Vec<f64>,
}

impl DiscreteChannel {
    /// Builds a channel, checking that both rows are distributions and that
    /// the output list has no duplicates.
    pub fn new(outputs: Vec<Symbol>, p0: Vec<f64>, p1: Vec<f64>) -> Result<Self> {
        if outputs.is_empty() {
            return Err(Error::InvalidChannel("empty output alphabet".into()));
        }
        if p0.len() != outputs.len() || p1.len() != outputs.len() {
            return Err(Error::InvalidChannel(format!(
                "{} outputs but rows of length {} and {}",
                outputs.len(),
                p0.len(),
                p1.len()
            )));
        }
        let mut seen = HashSet::with_capacity(outputs.len());
        for s in &outputs {
            if !seen.insert(*s) {
                return Err(Error::InvalidChannel(format!(
                    "duplicate output symbol {s}"
                )));
            }
        }
        for (x, row) in [&p0, &p1].into_iter().enumerate() {
            if let Some(bad) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::InvalidChannel(format!(
                    "row {x} has invalid entry {bad}"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidChannel(format!(
                    "row {x} sums to {sum}, not 1"
                )));
            }
        }
        Ok(Self { outputs, p0, p1 })
    }

    /// Channel with outputs `Id(0..len)`.
    pub fn from_rows(p0: Vec<f64>, p1: Vec<f64>) -> Result<Self> {
        let outputs = (0..p0.len() as u32).map(Symbol::Id).collect();
        Self::new(outputs, p0, p1)
    }

    /// Rows are trusted to be distributions (kernel products, merges).
    pub(crate) fn from_parts_unchecked(outputs: Vec<Symbol>, p0: Vec<f64>, p1: Vec<f64>) -> Self {
        debug_assert_eq!(outputs.len(), p0.len());
        debug_assert_eq!(outputs.len(), p1.len());
        debug_assert!((p0.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        debug_assert!((p1.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        Self { outputs, p0, p1 }
    }

    pub(crate) fn from_rows_unchecked(p0: Vec<f64>, p1: Vec<f64>) -> Self {
        let outputs = (0..p0.len() as u32).map(Symbol::Id).collect();
        Self::from_parts_unchecked(outputs, p0, p1)
    }

    pub fn bsc(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange(format!("BSC crossover {p} not in [0,1]")));
        }
        Self::new(
            vec![Symbol::Zero, Symbol::One],
            vec![1.0 - p, p],
            vec![p, 1.0 - p],
        )
    }

    /// The identity channel on {0,1}.
    pub fn noiseless() -> Self {
        Self::bsc(0.0).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    pub fn outputs(&self) -> &[Symbol] {
        &self.outputs
    }

    pub fn p0(&self) -> &[f64] {
        &self.p0
    }

    pub fn p1(&self) -> &[f64] {
        &self.p1
    }

    /// `W(y|x)` for output index `y`.
    pub fn prob(&self, y: usize, x: u8) -> f64 {
        if x & 1 == 0 {
            self.p0[y]
        } else {
            self.p1[y]
        }
    }

    pub fn position(&self, s: Symbol) -> Option<usize> {
        self.outputs.iter().position(|o| *o == s)
    }

    pub fn bhattacharyya(&self) -> f64 {
        bhattacharyya(self)
    }

    pub fn capacity(&self) -> f64 {
        capacity(self)
    }

    pub fn stats(&self) -> ChannelStats {
        ChannelStats {
            capacity: self.capacity(),
            bhatta: self.bhattacharyya(),
        }
    }

    /// Log-likelihood ratio `ln W(y|0)/W(y|1)` of output index `y`,
    /// saturated to `±clip`.
    pub fn llr(&self, y: usize, clip: f64) -> f64 {
        let (a, b) = (self.p0[y], self.p1[y]);
        if a == b {
            return 0.0;
        }
        if b == 0.0 {
            return clip;
        }
        if a == 0.0 {
            return -clip;
        }
        (a.ln() - b.ln()).clamp(-clip, clip)
    }

    /// Draws an output index for input `x`.
    pub fn sample<R: Rng + ?Sized>(&self, x: u8, rng: &mut R) -> usize {
        let row = if x & 1 == 0 { &self.p0 } else { &self.p1 };
        let r: f64 = rng.random();
        let mut acc = 0.0;
        let mut last = 0;
        for (k, p) in row.iter().enumerate() {
            if *p > 0.0 {
                acc += p;
                last = k;
                if r < acc {
                    return k;
                }
            }
        }
        last
    }

    /// If every output is either perfectly informative (one of `W(y|0)`,
    /// `W(y|1)` is zero) or useless (`W(y|0) = W(y|1)`), the channel is
    /// equivalent to an erasure channel; returns its erasure probability.
    pub fn erasure_equivalent(&self) -> Option<f64> {
        let mut eps = 0.0;
        for (a, b) in self.p0.iter().zip(&self.p1) {
            if *a == 0.0 || *b == 0.0 {
                continue;
            }
            if (a - b).abs() <= 1e-12 * a.max(*b) {
                eps += 0.5 * (a + b);
            } else {
                return None;
            }
        }
        Some(eps.clamp(0.0, 1.0))
    }

    /// Drops outputs that have zero probability under both inputs.
    pub(crate) fn prune_unreachable(self) -> Self {
        if self
            .p0
            .iter()
            .zip(&self.p1)
            .all(|(a, b)| *a > 0.0 || *b > 0.0)
        {
            return self;
        }
        let mut outputs = Vec::new();
        let mut p0 = Vec::new();
        let mut p1 = Vec::new();
        for k in 0..self.outputs.len() {
            if self.p0[k] > 0.0 || self.p1[k] > 0.0 {
                outputs.push(self.outputs[k]);
                p0.push(self.p0[k]);
                p1.push(self.p1[k]);
            }
        }
        Self::from_parts_unchecked(outputs, p0, p1)
    }
}

/// Binary erasure channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErasureChannel {
    eps: f64,
}

impl ErasureChannel {
    pub fn new(eps: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::OutOfRange(format!(
                "erasure probability {eps} not in [0,1]"
            )));
        }
        Ok(Self { eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Expansion over outputs `{0, 1, ?}`.
    pub fn to_channel(&self) -> DiscreteChannel {
        let e = self.eps;
        DiscreteChannel::from_parts_unchecked(
            vec![Symbol::Zero, Symbol::One, Symbol::Erasure],
            vec![1.0 - e, 0.0, e],
            vec![0.0, 1.0 - e, e],
        )
    }
}

impl From<ErasureChannel> for DiscreteChannel {
    fn from(e: ErasureChannel) -> Self {
        e.to_channel()
    }
}

/// The two degenerate erasure channels used to model reading and rewriting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateKind {
    /// Noiseless, `eps = 0`.
    Eps0,
    /// Full erasure, `eps = 1`.
    Eps1,
}

pub fn degenerate_bec(kind: DegenerateKind) -> ErasureChannel {
    match kind {
        DegenerateKind::Eps0 => ErasureChannel { eps: 0.0 },
        DegenerateKind::Eps1 => ErasureChannel { eps: 1.0 },
    }
}

/// Capacity and Bhattacharyya value of a channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelStats {
    pub capacity: f64,
    pub bhatta: f64,
}

impl ChannelStats {
    /// Checks `log2(2/(1+Z)) <= I <= sqrt(1-Z^2)` within `tol`.
    pub fn satisfies_bounds(&self, tol: f64) -> bool {
        let z = self.bhatta;
        let lower = (2.0 / (1.0 + z)).log2();
        let upper = (1.0 - z * z).max(0.0).sqrt();
        self.capacity >= lower - tol && self.capacity <= upper + tol
    }
}

/// Contribution of one output `(a, b) = (W(y|0), W(y|1))` to the
/// uniform-input mutual information, in bits.
#[inline]
pub(crate) fn mi_term(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s <= 0.0 {
        return 0.0;
    }
    let mut t = 0.0;
    if a > 0.0 {
        t += a * (2.0 * a / s).log2();
    }
    if b > 0.0 {
        t += b * (2.0 * b / s).log2();
    }
    0.5 * t
}

/// `Σ_y sqrt(W(y|0) W(y|1))`.
pub fn bhattacharyya(ch: &DiscreteChannel) -> f64 {
    let z: f64 = ch.p0.iter().zip(&ch.p1).map(|(a, b)| (a * b).sqrt()).sum();
    z.clamp(0.0, 1.0)
}

/// Mutual information with uniform input, in bits; `0 log 0 = 0`.
pub fn capacity(ch: &DiscreteChannel) -> f64 {
    let i: f64 = ch.p0.iter().zip(&ch.p1).map(|(a, b)| mi_term(*a, *b)).sum();
    i.clamp(0.0, 1.0)
}

/// Serial composition: `P(z|x) = Σ_v P_a(v|x) P_b(z|v)`.
///
/// Defined when `a` has a binary output alphabet (its outputs feed `b`), or
/// when `b` is an erasure channel, which then acts symbol-wise on `a`'s
/// outputs: each symbol passes unchanged with probability `1-eps` and becomes
/// `?` otherwise. Outputs unreachable under both inputs are dropped.
pub fn cascade(a: &DiscreteChannel, b: &DiscreteChannel) -> Result<DiscreteChannel> {
    let binary_outputs = a.outputs.iter().all(|s| s.as_bit().is_some());
    if binary_outputs {
        let mut p0 = vec![0.0; b.len()];
        let mut p1 = vec![0.0; b.len()];
        for (v, s) in a.outputs.iter().enumerate() {
            let bit = s.as_bit().expect("checked");
            for z in 0..b.len() {
                let pb = b.prob(z, bit);
                p0[z] += a.p0[v] * pb;
                p1[z] += a.p1[v] * pb;
            }
        }
        return Ok(
            DiscreteChannel::from_parts_unchecked(b.outputs.clone(), p0, p1).prune_unreachable(),
        );
    }
    let eps = erasure_expansion_eps(b).ok_or_else(|| {
        Error::AlphabetMismatch(format!(
            "first channel has non-binary outputs ({} symbols) and second channel is not an erasure channel",
            a.len()
        ))
    })?;
    let mut outputs = a.outputs.clone();
    let mut p0: Vec<f64> = a.p0.iter().map(|p| p * (1.0 - eps)).collect();
    let mut p1: Vec<f64> = a.p1.iter().map(|p| p * (1.0 - eps)).collect();
    match a.position(Symbol::Erasure) {
        Some(k) => {
            p0[k] = a.p0[k] + (1.0 - a.p0[k]) * eps;
            p1[k] = a.p1[k] + (1.0 - a.p1[k]) * eps;
        }
        None => {
            outputs.push(Symbol::Erasure);
            p0.push(eps);
            p1.push(eps);
        }
    }
    Ok(DiscreteChannel::from_parts_unchecked(outputs, p0, p1).prune_unreachable())
}

/// Recognises the `{0,1,?}` erasure expansion (in any output order).
fn erasure_expansion_eps(ch: &DiscreteChannel) -> Option<f64> {
    if ch.len() != 3 {
        return None;
    }
    let z = ch.position(Symbol::Zero)?;
    let o = ch.position(Symbol::One)?;
    let q = ch.position(Symbol::Erasure)?;
    let eps = ch.p0[q];
    let ok = ch.p1[q] == eps && ch.p0[o] == 0.0 && ch.p1[z] == 0.0;
    ok.then_some(eps)
}
