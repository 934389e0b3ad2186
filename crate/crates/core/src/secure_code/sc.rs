//! Successive-cancellation likelihood recursion.
//!
//! Works on leaf LLRs `ln W^j(y_j|0)/W^j(y_j|1)`, one per codeword position,
//! so heterogeneous leaves need no special handling: the check-node and
//! variable-node updates are exact for any pair of binary-input channels.

use super::transform::bit_reverse;

/// LLR saturation.
pub const LLR_CLIP: f64 = 40.0;

/// Exact check-node update `2 atanh(tanh(a/2) tanh(b/2))`.
#[inline]
pub(crate) fn check_node(a: f64, b: f64) -> f64 {
    let s = a.signum() * b.signum();
    let m = a.abs().min(b.abs());
    let v = s * m + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p();
    v.clamp(-LLR_CLIP, LLR_CLIP)
}

#[inline]
pub(crate) fn bit_node(a: f64, b: f64, bit: u8) -> f64 {
    let v = if bit == 0 { b + a } else { b - a };
    v.clamp(-LLR_CLIP, LLR_CLIP)
}

/// Hard decision, ties to 0.
#[inline]
pub fn hard_decision(llr: f64) -> u8 {
    u8::from(llr < 0.0)
}

/// Runs SC over codeword-position LLRs (`x = u G_N` ordering).
///
/// `decide(i, llr)` is called for `i = 0..N` in order with the LLR of
/// `W_N^{(i)}` given the previous decisions, and returns the bit to commit.
/// Returns the committed `u`.
pub fn sc_pass<D>(leaf_llr: &[f64], mut decide: D) -> Vec<u8>
where
    D: FnMut(usize, f64) -> u8,
{
    let n = leaf_llr.len();
    debug_assert!(n.is_power_of_two());
    let bits = n.trailing_zeros();
    let natural: Vec<f64> = (0..n)
        .map(|k| leaf_llr[bit_reverse(k, bits)].clamp(-LLR_CLIP, LLR_CLIP))
        .collect();
    let mut u = vec![0u8; n];
    node(&natural, 0, &mut u, &mut decide);
    u
}

fn node<D>(llr: &[f64], offset: usize, u: &mut [u8], decide: &mut D) -> Vec<u8>
where
    D: FnMut(usize, f64) -> u8,
{
    let n = llr.len();
    if n == 1 {
        let b = decide(offset, llr[0]) & 1;
        u[offset] = b;
        return vec![b];
    }
    let half = n / 2;
    let (first, second) = llr.split_at(half);
    let left: Vec<f64> = first
        .iter()
        .zip(second)
        .map(|(a, b)| check_node(*a, *b))
        .collect();
    let xl = node(&left, offset, u, decide);
    let right: Vec<f64> = first
        .iter()
        .zip(second)
        .zip(&xl)
        .map(|((a, b), x)| bit_node(*a, *b, *x))
        .collect();
    let xr = node(&right, offset + half, u, decide);
    let mut x: Vec<u8> = xl.iter().zip(&xr).map(|(a, b)| a ^ b).collect();
    x.extend_from_slice(&xr);
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_node_matches_tanh_rule() {
        for (a, b) in [(1.3, -0.4), (5.0, 7.0), (-2.0, -0.1), (0.0, 3.0)] {
            let exact = 2.0 * ((a / 2.0_f64).tanh() * (b / 2.0_f64).tanh()).atanh();
            assert!((check_node(a, b) - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn noiseless_leaves_recover_u() {
        let u = vec![1, 0, 1, 1, 0, 0, 1, 0];
        let x = super::super::gn_transform(&u).unwrap();
        let llr: Vec<f64> = x
            .iter()
            .map(|b| if *b == 0 { LLR_CLIP } else { -LLR_CLIP })
            .collect();
        assert_eq!(sc_pass(&llr, |_, l| hard_decision(l)), u);
    }

    #[test]
    fn ties_resolve_to_zero() {
        assert_eq!(sc_pass(&[0.0; 4], |_, l| hard_decision(l)), vec![0; 4]);
    }
}
