//! The SC decoder on homogeneous leaves against a direct likelihood-ratio
//! recursion over the bit-reversed generator `B_N F^{⊗n}`.

use irpolar::channels::DiscreteChannel;
use irpolar::rng;
use irpolar::secure_code::{gn_transform, hard_decision, sc_pass};
use rand::Rng;

/// `L_N^{(i)}(y, u^{<i})` by the two-branch recursion; `i` is 0-based.
fn lr(y_lr: &[f64], u: &[u8], i: usize) -> f64 {
    let n = y_lr.len();
    if n == 1 {
        return y_lr[0];
    }
    let half = n / 2;
    let k = i / 2;
    let prefix = &u[..2 * k];
    let odd_xor_even: Vec<u8> = (0..k).map(|j| prefix[2 * j] ^ prefix[2 * j + 1]).collect();
    let even: Vec<u8> = (0..k).map(|j| prefix[2 * j + 1]).collect();
    let l1 = lr(&y_lr[..half], &odd_xor_even, k);
    let l2 = lr(&y_lr[half..], &even, k);
    if i.is_multiple_of(2) {
        (l1 * l2 + 1.0) / (l1 + l2)
    } else if u[i - 1] == 0 {
        l2 * l1
    } else {
        l2 / l1
    }
}

/// Leaf LRs in the order seen by the `B_N F^{⊗n}` recursion, built from the
/// codeword-position LRs of `x = u R F^{⊗n}`.
fn textbook_decode(pos_lr: &[f64], genie: Option<&[u8]>) -> (Vec<u8>, Vec<f64>) {
    let n = pos_lr.len();
    let mut u = vec![0u8; n];
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let l = lr(pos_lr, &u, i);
        values.push(l);
        u[i] = match genie {
            Some(g) => g[i],
            None => u8::from(l < 1.0),
        };
    }
    (u, values)
}

#[test]
fn textbook_recursion_matches_sc_pass() {
    let w = DiscreteChannel::bsc(0.137).unwrap();
    for n in [2usize, 4, 8, 16, 32] {
        for trial in 0..200u64 {
            let mut g = rng::stream(41, trial + 1000 * n as u64);
            let u: Vec<u8> = (0..n).map(|_| u8::from(g.random::<bool>())).collect();
            let x = gn_transform(&u).unwrap();
            let ys: Vec<usize> = x.iter().map(|b| w.sample(*b, &mut g)).collect();
            let llr: Vec<f64> = ys.iter().map(|y| w.llr(*y, 40.0)).collect();
            let pos_lr: Vec<f64> = ys.iter().map(|y| w.p0()[*y] / w.p1()[*y]).collect();

            let mut sc_vals = Vec::new();
            sc_pass(&llr, |i, l| {
                sc_vals.push(l);
                u[i]
            });
            let (_, tb_vals) = textbook_decode(&pos_lr, Some(&u));
            for (i, (a, b)) in sc_vals.iter().zip(&tb_vals).enumerate() {
                let b = b.ln();
                if b.abs() < 30.0 {
                    assert!(
                        (a - b).abs() < 1e-9 * (1.0 + a.abs()),
                        "n={n} i={i}: {a} vs {b}"
                    );
                } else {
                    // saturated
                    assert!(
                        a.signum() == b.signum() && a.abs() >= 30.0,
                        "n={n} i={i}: {a} vs {b}"
                    );
                }
            }

            let decided = sc_pass(&llr, |_, l| hard_decision(l));
            let (tb_decided, _) = textbook_decode(&pos_lr, None);
            assert_eq!(decided, tb_decided, "n={n} trial={trial}");
        }
    }
}
