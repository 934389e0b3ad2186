//! The static adversarial wiretap channel.
//!
//! Eve reads a fraction `rho_r` of the wiretap outputs and rewrites a fraction
//! `rho_w` of the main-channel outputs to `?`. Under the static assumption the
//! per-block index sets are known to both legitimate parties, so each effect
//! is folded into a per-position equivalent channel.

use rand::seq::index::sample;

use crate::channels::{cascade, degenerate_bec, DegenerateKind, DiscreteChannel, Symbol};
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::polarize::{check_block_length, ChannelArray};
use crate::rng;

/// `round-half-up(N rho)`.
pub fn set_size(n: usize, rho: f64) -> usize {
    (n as f64 * rho + 0.5).floor() as usize
}

fn check_fraction(name: &str, rho: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::OutOfRange(format!("{name} = {rho} not in [0,1]")));
    }
    Ok(())
}

/// Read/rewrite fractions and the per-block index sets (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct AdversarySpec {
    n: usize,
    rho_r: f64,
    rho_w: f64,
    read_sets: Vec<IndexSet>,
    write_sets: Vec<IndexSet>,
}

impl AdversarySpec {
    /// Validates that every set has size `round(N rho)` and lies in `[0, N)`.
    pub fn explicit(
        n: usize,
        rho_r: f64,
        rho_w: f64,
        read_sets: Vec<IndexSet>,
        write_sets: Vec<IndexSet>,
    ) -> Result<Self> {
        check_block_length(n)?;
        check_fraction("rho_r", rho_r)?;
        check_fraction("rho_w", rho_w)?;
        if read_sets.is_empty() || read_sets.len() != write_sets.len() {
            return Err(Error::config(format!(
                "need one read and one write set per block, got {} and {}",
                read_sets.len(),
                write_sets.len()
            )));
        }
        let (kr, kw) = (set_size(n, rho_r), set_size(n, rho_w));
        for (t, (r, w)) in read_sets.iter().zip(&write_sets).enumerate() {
            for (set, k, what) in [(r, kr, "read"), (w, kw, "write")] {
                if set.len() != k {
                    return Err(Error::config(format!(
                        "block {t}: {what} set has {} indices, expected {k}",
                        set.len()
                    )));
                }
                if set.max().is_some_and(|m| m >= n) {
                    return Err(Error::config(format!(
                        "block {t}: {what} set has an index outside [0, {n})"
                    )));
                }
            }
        }
        Ok(Self {
            n,
            rho_r,
            rho_w,
            read_sets,
            write_sets,
        })
    }

    /// Uniformly random sets per block, drawn from `seed`.
    pub fn random(n: usize, blocks: usize, rho_r: f64, rho_w: f64, seed: u64) -> Result<Self> {
        check_block_length(n)?;
        check_fraction("rho_r", rho_r)?;
        check_fraction("rho_w", rho_w)?;
        if blocks == 0 {
            return Err(Error::OutOfRange("block count must be at least 1".into()));
        }
        let (kr, kw) = (set_size(n, rho_r), set_size(n, rho_w));
        let draw = |stream_id: u64, k: usize| -> IndexSet {
            let mut g = rng::stream(seed, stream_id);
            sample(&mut g, n, k).into_iter().collect()
        };
        let read_sets = (0..blocks).map(|t| draw(2 * t as u64, kr)).collect();
        let write_sets = (0..blocks).map(|t| draw(2 * t as u64 + 1, kw)).collect();
        Self::explicit(n, rho_r, rho_w, read_sets, write_sets)
    }

    /// Same sets for every block.
    pub fn fixed(
        n: usize,
        blocks: usize,
        rho_r: f64,
        rho_w: f64,
        read: IndexSet,
        write: IndexSet,
    ) -> Result<Self> {
        Self::explicit(n, rho_r, rho_w, vec![read; blocks], vec![write; blocks])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> usize {
        self.read_sets.len()
    }

    pub fn rho_r(&self) -> f64 {
        self.rho_r
    }

    pub fn rho_w(&self) -> f64 {
        self.rho_w
    }

    pub fn read_set(&self, t: usize) -> Result<&IndexSet> {
        self.read_sets.get(t).ok_or(Error::BlockOutOfRange {
            block: t,
            blocks: self.blocks(),
        })
    }

    pub fn write_set(&self, t: usize) -> Result<&IndexSet> {
        self.write_sets.get(t).ok_or(Error::BlockOutOfRange {
            block: t,
            blocks: self.blocks(),
        })
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.n {
            return Err(Error::LengthMismatch {
                what: "observation vector",
                expected: self.n,
                got,
            });
        }
        Ok(())
    }
}

/// Bob's view: positions in `S_w^t` become `?`.
pub fn apply_rewrite(v: &[Symbol], spec: &AdversarySpec, t: usize) -> Result<Vec<Symbol>> {
    let set = spec.write_set(t)?;
    spec.check_len(v.len())?;
    Ok(v.iter()
        .enumerate()
        .map(|(i, s)| if set.contains(i) { Symbol::Erasure } else { *s })
        .collect())
}

/// Eve's view: only positions in `S_r^t` are kept, the rest become `?`.
pub fn apply_read(v_tilde: &[Symbol], spec: &AdversarySpec, t: usize) -> Result<Vec<Symbol>> {
    let set = spec.read_set(t)?;
    spec.check_len(v_tilde.len())?;
    Ok(v_tilde
        .iter()
        .enumerate()
        .map(|(i, s)| if set.contains(i) { *s } else { Symbol::Erasure })
        .collect())
}

fn cascaded(w: &DiscreteChannel, kind: DegenerateKind) -> Result<DiscreteChannel> {
    cascade(w, &degenerate_bec(kind).to_channel())
}

/// `W_w^i = W ⊠ W_ε1` on rewritten positions, `W ⊠ W_ε0` elsewhere.
pub fn equivalent_main(
    w: &DiscreteChannel,
    spec: &AdversarySpec,
    t: usize,
) -> Result<ChannelArray> {
    let set = spec.write_set(t)?;
    let kept = cascaded(w, DegenerateKind::Eps0)?;
    let erased = cascaded(w, DegenerateKind::Eps1)?;
    ChannelArray::new(
        (0..spec.n)
            .map(|i| {
                if set.contains(i) {
                    erased.clone()
                } else {
                    kept.clone()
                }
            })
            .collect(),
    )
}

/// `W_r^i = W̃ ⊠ W_ε0` on read positions, `W̃ ⊠ W_ε1` elsewhere.
pub fn equivalent_wiretap(
    w_tilde: &DiscreteChannel,
    spec: &AdversarySpec,
    t: usize,
) -> Result<ChannelArray> {
    let set = spec.read_set(t)?;
    let seen = cascaded(w_tilde, DegenerateKind::Eps0)?;
    let hidden = cascaded(w_tilde, DegenerateKind::Eps1)?;
    ChannelArray::new(
        (0..spec.n)
            .map(|i| {
                if set.contains(i) {
                    seen.clone()
                } else {
                    hidden.clone()
                }
            })
            .collect(),
    )
}

/// Main and wiretap equivalent channel arrays for one block.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalentChannels {
    pub main_eq: ChannelArray,
    pub wiretap_eq: ChannelArray,
}

impl EquivalentChannels {
    pub fn build(
        w: &DiscreteChannel,
        w_tilde: &DiscreteChannel,
        spec: &AdversarySpec,
        t: usize,
    ) -> Result<Self> {
        Ok(Self {
            main_eq: equivalent_main(w, spec, t)?,
            wiretap_eq: equivalent_wiretap(w_tilde, spec, t)?,
        })
    }
}

/// `max(0, (1 - rho_w) I(W) - rho_r I(W̃))` with uniform input.
pub fn secrecy_capacity(
    w: &DiscreteChannel,
    w_tilde: &DiscreteChannel,
    rho_r: f64,
    rho_w: f64,
) -> f64 {
    ((1.0 - rho_w) * w.capacity() - rho_r * w_tilde.capacity()).max(0.0)
}

/// Named special cases of the model that a parameter set falls into.
pub fn special_cases(
    w: &DiscreteChannel,
    w_tilde: &DiscreteChannel,
    rho_r: f64,
    rho_w: f64,
) -> Vec<&'static str> {
    let noiseless = |c: &DiscreteChannel| (c.capacity() - 1.0).abs() < 1e-12;
    let mut out = Vec::new();
    if rho_w == 0.0 && rho_r == 0.0 {
        out.push("non-degraded WTC");
    }
    if rho_w == 0.0 && noiseless(w) && noiseless(w_tilde) {
        out.push("WTC-II");
    }
    if rho_w == 0.0 && noiseless(w_tilde) {
        out.push("extended WTC-II (noiseless wiretap)");
    }
    if rho_w == 0.0 && w == w_tilde {
        out.push("extended WTC-II (identical channels)");
    }
    if noiseless(w) && noiseless(w_tilde) {
        out.push("A-WTC (noiseless)");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::ErasureChannel;

    fn bec(e: f64) -> DiscreteChannel {
        ErasureChannel::new(e).unwrap().to_channel()
    }

    fn bits(v: &[u8]) -> Vec<Symbol> {
        v.iter().map(|b| Symbol::bit(*b)).collect()
    }

    fn spec4(read: Vec<usize>, write: Vec<usize>) -> AdversarySpec {
        let (r, w) = (read.len() as f64 / 4.0, write.len() as f64 / 4.0);
        AdversarySpec::fixed(4, 1, r, w, read.into(), write.into()).unwrap()
    }

    #[test]
    fn rewrite_examples() {
        let v = bits(&[0, 1, 1, 0]);
        assert_eq!(apply_rewrite(&v, &spec4(vec![], vec![]), 0).unwrap(), v);
        assert_eq!(
            apply_rewrite(&v, &spec4(vec![], vec![0, 1, 2, 3]), 0).unwrap(),
            vec![Symbol::Erasure; 4]
        );
        // S_w = {2} in 1-based terms
        let y = apply_rewrite(&v, &spec4(vec![], vec![1]), 0).unwrap();
        assert_eq!(
            y,
            vec![Symbol::Zero, Symbol::Erasure, Symbol::One, Symbol::Zero]
        );
        assert!(matches!(
            apply_rewrite(&v, &spec4(vec![], vec![1]), 1),
            Err(Error::BlockOutOfRange { .. })
        ));
    }

    #[test]
    fn read_examples() {
        let v = bits(&[1, 0, 0, 1]);
        assert_eq!(
            apply_read(&v, &spec4(vec![0, 1, 2, 3], vec![]), 0).unwrap(),
            v
        );
        assert_eq!(
            apply_read(&v, &spec4(vec![], vec![]), 0).unwrap(),
            vec![Symbol::Erasure; 4]
        );
        // S_r = {1,3} in 1-based terms
        let z = apply_read(&v, &spec4(vec![0, 2], vec![]), 0).unwrap();
        assert_eq!(
            z,
            vec![Symbol::One, Symbol::Erasure, Symbol::Zero, Symbol::Erasure]
        );
    }

    #[test]
    fn equivalent_main_examples() {
        let w = DiscreteChannel::bsc(0.1).unwrap();
        let s = AdversarySpec::random(8, 1, 0.0, 0.0, 1).unwrap();
        assert!(equivalent_main(&w, &s, 0)
            .unwrap()
            .leaves()
            .iter()
            .all(|l| *l == w));

        let s = AdversarySpec::fixed(8, 1, 0.0, 0.125, IndexSet::new(), vec![3].into()).unwrap();
        let caps = equivalent_main(&DiscreteChannel::noiseless(), &s, 0)
            .unwrap()
            .capacities();
        for (i, c) in caps.iter().enumerate() {
            assert_eq!(*c, if i == 3 { 0.0 } else { 1.0 });
        }

        let s = AdversarySpec::random(8, 1, 0.0, 0.25, 5).unwrap();
        let total = equivalent_main(&bec(0.2), &s, 0).unwrap().total_capacity();
        assert!((total - 4.8).abs() < 1e-12);
    }

    #[test]
    fn equivalent_wiretap_examples() {
        let wt = DiscreteChannel::bsc(0.1).unwrap();
        let s = AdversarySpec::random(8, 1, 1.0, 0.0, 1).unwrap();
        assert!(equivalent_wiretap(&wt, &s, 0)
            .unwrap()
            .leaves()
            .iter()
            .all(|l| *l == wt));

        let s = AdversarySpec::fixed(8, 1, 0.125, 0.0, vec![6].into(), IndexSet::new()).unwrap();
        let caps = equivalent_wiretap(&DiscreteChannel::noiseless(), &s, 0)
            .unwrap()
            .capacities();
        for (i, c) in caps.iter().enumerate() {
            assert_eq!(*c, if i == 6 { 1.0 } else { 0.0 });
        }

        let s = AdversarySpec::random(8, 1, 0.5, 0.0, 9).unwrap();
        let total = equivalent_wiretap(&wt, &s, 0).unwrap().total_capacity();
        assert!((total - 4.0 * wt.capacity()).abs() < 1e-12);
    }

    #[test]
    fn secrecy_capacity_examples() {
        let n = DiscreteChannel::noiseless();
        assert!((secrecy_capacity(&n, &n, 0.3, 0.2) - 0.5).abs() < 1e-12);
        let w = DiscreteChannel::bsc(0.05).unwrap();
        assert!((secrecy_capacity(&w, &w, 0.4, 0.0) - 0.6 * w.capacity()).abs() < 1e-12);
        assert!((secrecy_capacity(&bec(0.1), &bec(0.4), 0.3, 0.2) - 0.54).abs() < 1e-12);
        assert_eq!(secrecy_capacity(&bec(0.9), &n, 1.0, 0.0), 0.0);
    }

    #[test]
    fn special_case_labels() {
        let n = DiscreteChannel::noiseless();
        assert_eq!(special_cases(&n, &n, 0.3, 0.2), vec!["A-WTC (noiseless)"]);
        assert!(special_cases(&bec(0.1), &bec(0.3), 0.0, 0.0).contains(&"non-degraded WTC"));
    }

    #[test]
    fn set_sizes_round_half_up() {
        assert_eq!(set_size(8, 0.1875), 2); // 1.5 -> 2
        assert_eq!(set_size(8, 0.125), 1);
        assert_eq!(set_size(10, 0.25), 3); // 2.5 -> 3
        let bad =
            AdversarySpec::explicit(8, 0.25, 0.0, vec![vec![1].into()], vec![IndexSet::new()]);
        assert!(bad.is_err());
        let out_of_range =
            AdversarySpec::explicit(4, 0.25, 0.0, vec![vec![4].into()], vec![IndexSet::new()]);
        assert!(out_of_range.is_err());
    }
}
