use crate::error::Result;
use crate::polarize::check_block_length;

pub fn bit_reverse(i: usize, bits: u32) -> usize {
    if bits == 0 {
        return 0;
    }
    i.reverse_bits() >> (usize::BITS - bits)
}

/// In place `v <- v F^{⊗n}` with `F = [[1,0],[1,1]]`.
fn kronecker_in_place(v: &mut [u8]) {
    let n = v.len();
    let mut half = 1;
    while half < n {
        for base in (0..n).step_by(2 * half) {
            for a in base..base + half {
                v[a] ^= v[a + half];
            }
        }
        half *= 2;
    }
}

/// `x = u G_N` over GF(2) with `G_N = R F^{⊗n}`. An involution.
pub fn gn_transform(u: &[u8]) -> Result<Vec<u8>> {
    check_block_length(u.len())?;
    let mut v: Vec<u8> = u.iter().map(|b| b & 1).collect();
    kronecker_in_place(&mut v);
    let bits = u.len().trailing_zeros();
    Ok((0..u.len()).map(|j| v[bit_reverse(j, bits)]).collect())
}
