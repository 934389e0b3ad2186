//! Direct evaluation of `W_N^{(i)}(y, u^{<i} | u_i)` from the leaf channels
//! and an explicit `G_N`, independent of the kernel recursion.

use crate::channels::DiscreteChannel;
use crate::error::{Error, Result};
use crate::polarize::{ChannelArray, OutputLabel};
use crate::secure_code::gn_transform;

pub const ORACLE_MAX_N: usize = 8;
const MAX_Y: usize = 1 << 20;
const MAX_OUTPUTS: usize = 1 << 23;

fn y_total(leaves: &ChannelArray) -> Result<usize> {
    leaves.leaves().iter().try_fold(1usize, |acc, l| {
        acc.checked_mul(l.len())
            .filter(|&t| t <= MAX_Y)
            .ok_or_else(|| Error::Budget(format!("joint output alphabet exceeds {MAX_Y}")))
    })
}

/// Output index of a label: `y` in mixed radix with `y_0` most significant,
/// then the prefix bits with `u_0` most significant.
pub fn oracle_index(leaves: &ChannelArray, label: &OutputLabel) -> usize {
    let y = label
        .y
        .iter()
        .zip(leaves.leaves())
        .fold(0usize, |acc, (yj, l)| acc * l.len() + yj);
    label.u.iter().fold(y, |acc, b| 2 * acc + *b as usize)
}

/// `W_N^{(i)}` (0-based `i`) over the `(y, u^{<i})` alphabet.
pub fn brute_force_synth(leaves: &ChannelArray, i: usize) -> Result<DiscreteChannel> {
    let n = leaves.len();
    if n > ORACLE_MAX_N {
        return Err(Error::Budget(format!(
            "oracle limited to N <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    if i >= n {
        return Err(Error::OutOfRange(format!(
            "index {i} outside block of length {n}"
        )));
    }
    let ny = y_total(leaves)?;
    let outputs = ny << i;
    if outputs > MAX_OUTPUTS {
        return Err(Error::Budget(format!(
            "synthesized alphabet of {outputs} symbols exceeds {MAX_OUTPUTS}"
        )));
    }
    let mut rows = [vec![0.0; outputs], vec![0.0; outputs]];
    let weight = 0.5f64.powi(n as i32 - 1);
    let mut py = Vec::with_capacity(ny);
    let mut next = Vec::with_capacity(ny);
    for code in 0..1usize << n {
        let u: Vec<u8> = (0..n).map(|k| ((code >> (n - 1 - k)) & 1) as u8).collect();
        let x = gn_transform(&u)?;
        py.clear();
        py.push(weight);
        for (leaf, &xj) in leaves.leaves().iter().zip(&x) {
            let row = if xj == 0 { leaf.p0() } else { leaf.p1() };
            next.clear();
            for p in &py {
                next.extend(row.iter().map(|r| p * r));
            }
            std::mem::swap(&mut py, &mut next);
        }
        let prefix = code >> (n - i);
        let target = &mut rows[u[i] as usize];
        for (y, p) in py.iter().enumerate() {
            target[(y << i) + prefix] += p;
        }
    }
    let [p0, p1] = rows;
    DiscreteChannel::from_rows(p0, p1)
}

/// `(z, i_cap)` of every synthesized channel, by brute force.
pub fn brute_force_params(leaves: &ChannelArray) -> Result<(Vec<f64>, Vec<f64>)> {
    (0..leaves.len())
        .map(|i| brute_force_synth(leaves, i).map(|c| (c.bhattacharyya(), c.capacity())))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().unzip())
}
