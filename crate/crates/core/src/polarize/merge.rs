//! Output-alphabet reduction.
//!
//! [`reduce_lossless`] merges outputs with equal posterior `W(y|0)/(W(y|0)+W(y|1))`,
//! which leaves both `Z` and `I` unchanged. [`degrading_merge`] then merges
//! neighbouring outputs (in posterior order) greedily by smallest capacity loss
//! until at most `mu` remain. Merging never decreases `Z` (Cauchy–Schwarz), so
//! the reduced `Z` is an upper bound and the reduced `I` a lower bound.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::channels::{mi_term, DiscreteChannel};

/// Posteriors closer than this are treated as equal.
const POSTERIOR_QUANTUM: f64 = (1u64 << 40) as f64;

/// Outputs sorted by posterior, zero-mass outputs removed, equal posteriors merged.
fn sorted_reduced(ch: &DiscreteChannel) -> (Vec<f64>, Vec<f64>) {
    let mut items: Vec<(i64, usize)> = (0..ch.len())
        .filter(|&k| ch.p0()[k] + ch.p1()[k] > 0.0)
        .map(|k| {
            let (a, b) = (ch.p0()[k], ch.p1()[k]);
            ((a / (a + b) * POSTERIOR_QUANTUM).round() as i64, k)
        })
        .collect();
    items.sort_unstable();
    let mut p0 = Vec::with_capacity(items.len());
    let mut p1 = Vec::with_capacity(items.len());
    let mut last_key = None;
    for (key, k) in items {
        if last_key == Some(key) {
            *p0.last_mut().expect("nonempty") += ch.p0()[k];
            *p1.last_mut().expect("nonempty") += ch.p1()[k];
        } else {
            p0.push(ch.p0()[k]);
            p1.push(ch.p1()[k]);
            last_key = Some(key);
        }
    }
    (p0, p1)
}

pub fn reduce_lossless(ch: &DiscreteChannel) -> DiscreteChannel {
    let (p0, p1) = sorted_reduced(ch);
    DiscreteChannel::from_rows_unchecked(p0, p1)
}

#[derive(PartialEq)]
struct Candidate {
    loss: f64,
    left: usize,
    right: usize,
    gen_left: u32,
    gen_right: u32,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.loss
            .total_cmp(&other.loss)
            .then(self.left.cmp(&other.left))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn merge_loss(a0: f64, a1: f64, b0: f64, b1: f64) -> f64 {
    (mi_term(a0, a1) + mi_term(b0, b1) - mi_term(a0 + b0, a1 + b1)).max(0.0)
}

/// Reduces `ch` to at most `mu` outputs (`mu >= 2`).
pub fn degrading_merge(ch: &DiscreteChannel, mu: usize) -> DiscreteChannel {
    assert!(mu >= 2, "merge cap must be at least 2");
    let (mut p0, mut p1) = sorted_reduced(ch);
    let n = p0.len();
    if n <= mu {
        return DiscreteChannel::from_rows_unchecked(p0, p1);
    }
    let mut prev: Vec<Option<usize>> = (0..n).map(|k| k.checked_sub(1)).collect();
    let mut next: Vec<Option<usize>> = (0..n).map(|k| (k + 1 < n).then_some(k + 1)).collect();
    let mut alive = vec![true; n];
    let mut gen = vec![0u32; n];
    let mut heap = BinaryHeap::with_capacity(n);
    let candidate = |l: usize, r: usize, p0: &[f64], p1: &[f64], gen: &[u32]| Candidate {
        loss: merge_loss(p0[l], p1[l], p0[r], p1[r]),
        left: l,
        right: r,
        gen_left: gen[l],
        gen_right: gen[r],
    };
    for l in 0..n - 1 {
        heap.push(Reverse(candidate(l, l + 1, &p0, &p1, &gen)));
    }
    let mut remaining = n;
    while remaining > mu {
        let Reverse(c) = heap
            .pop()
            .expect("candidates remain while more than mu outputs");
        if !alive[c.left]
            || !alive[c.right]
            || gen[c.left] != c.gen_left
            || gen[c.right] != c.gen_right
        {
            continue;
        }
        let (l, r) = (c.left, c.right);
        p0[l] += p0[r];
        p1[l] += p1[r];
        alive[r] = false;
        gen[l] += 1;
        next[l] = next[r];
        if let Some(nr) = next[r] {
            prev[nr] = Some(l);
            heap.push(Reverse(candidate(l, nr, &p0, &p1, &gen)));
        }
        if let Some(pl) = prev[l] {
            heap.push(Reverse(candidate(pl, l, &p0, &p1, &gen)));
        }
        remaining -= 1;
    }
    let mut q0 = Vec::with_capacity(remaining);
    let mut q1 = Vec::with_capacity(remaining);
    for k in 0..n {
        if alive[k] {
            q0.push(p0[k]);
            q1.push(p1[k]);
        }
    }
    DiscreteChannel::from_rows_unchecked(q0, q1)
}
