//! Raw kernel recursion that keeps track of what every synthesized output
//! symbol means, so the result can be compared entry by entry with a channel
//! computed directly from `W_N(y|u) = Π_j W^j(y_j | (u G_N)_j)`.

use super::kernel::{kernel_minus, kernel_plus};
use super::{butterfly, ChannelArray};
use crate::channels::DiscreteChannel;
use crate::error::{Error, Result};

/// Meaning of one output of `W_N^{(i)}`: the leaf output indices `y` of the
/// whole block and the already-decided prefix `u^{1:i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutputLabel {
    pub y: Vec<usize>,
    pub u: Vec<u8>,
}

type Labeled = (DiscreteChannel, Vec<OutputLabel>);

/// Interleaves the prefixes of the two halves: the first half saw
/// `u_odd ⊕ u_even`, the second half `u_even`.
fn merge_prefix(first: &[u8], second: &[u8]) -> Vec<u8> {
    let mut u = Vec::with_capacity(2 * first.len() + 1);
    for (v, e) in first.iter().zip(second) {
        u.push(v ^ e);
        u.push(*e);
    }
    u
}

fn labeled_kernel(a: &Labeled, b: &Labeled, budget: usize) -> Result<(Labeled, Labeled)> {
    let size = 2 * a.1.len() * b.1.len();
    if size > budget {
        return Err(Error::Budget(format!(
            "labeled synthesis needs {size} symbols, budget {budget}"
        )));
    }
    let mut minus = Vec::with_capacity(a.1.len() * b.1.len());
    let mut plus = Vec::with_capacity(size);
    for la in &a.1 {
        for lb in &b.1 {
            let mut y = la.y.clone();
            y.extend_from_slice(&lb.y);
            let u = merge_prefix(&la.u, &lb.u);
            for u1 in 0..2u8 {
                let mut up = u.clone();
                up.push(u1);
                plus.push(OutputLabel {
                    y: y.clone(),
                    u: up,
                });
            }
            minus.push(OutputLabel { y, u });
        }
    }
    Ok((
        (kernel_minus(&a.0, &b.0), minus),
        (kernel_plus(&a.0, &b.0), plus),
    ))
}

/// The raw synthesized channel `W_N^{(i)}` (0-based `i`) and its output labels.
pub fn synthesize_labeled(
    leaves: &ChannelArray,
    i: usize,
    budget: usize,
) -> Result<(DiscreteChannel, Vec<OutputLabel>)> {
    if i >= leaves.len() {
        return Err(Error::OutOfRange(format!(
            "index {i} outside block of length {}",
            leaves.len()
        )));
    }
    let level0 = leaves
        .leaves()
        .iter()
        .map(|l| {
            let labels = (0..l.len())
                .map(|k| OutputLabel {
                    y: vec![k],
                    u: Vec::new(),
                })
                .collect();
            (l.clone(), labels)
        })
        .collect();
    let mut all = butterfly(level0, |a: &Labeled, b: &Labeled| {
        labeled_kernel(a, b, budget)
    })?;
    Ok(all.swap_remove(i))
}
