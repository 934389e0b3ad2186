//! Kernel recursion against the direct `W_N(y|u) = Π_j W^j(y_j|(u G_N)_j)`
//! evaluation.

use irpolar::channels::{DiscreteChannel, ErasureChannel};
use irpolar::metrics::{brute_force_params, brute_force_synth, oracle_index};
use irpolar::polarize::{construct, synthesize_labeled, ChannelArray, ConstructOptions, Method};

fn mixed(n: usize) -> ChannelArray {
    let pool = [
        ErasureChannel::new(0.3).unwrap().to_channel(),
        DiscreteChannel::bsc(0.11).unwrap(),
        ErasureChannel::new(0.65).unwrap().to_channel(),
        DiscreteChannel::from_rows(vec![0.6, 0.3, 0.1], vec![0.2, 0.1, 0.7]).unwrap(),
    ];
    ChannelArray::new(
        (0..n)
            .map(|j| pool[(3 * j + 1) % pool.len()].clone())
            .collect(),
    )
    .unwrap()
}

#[test]
fn n4_entrywise() {
    let leaves = mixed(4);
    for i in 0..4 {
        let (raw, labels) = synthesize_labeled(&leaves, i, 1 << 20).unwrap();
        let oracle = brute_force_synth(&leaves, i).unwrap();
        assert_eq!(raw.len(), oracle.len(), "alphabet size at index {i}");
        for (k, label) in labels.iter().enumerate() {
            let o = oracle_index(&leaves, label);
            assert!(
                (raw.p0()[k] - oracle.p0()[o]).abs() < 1e-9,
                "i={i} label={label:?}"
            );
            assert!(
                (raw.p1()[k] - oracle.p1()[o]).abs() < 1e-9,
                "i={i} label={label:?}"
            );
        }
    }
}

#[test]
fn parameters_agree_up_to_n8() {
    for n in [2, 4, 8] {
        let leaves = mixed(n);
        let (z, i_cap) = brute_force_params(&leaves).unwrap();
        let exact = construct(&leaves, Method::Exact, &ConstructOptions::default()).unwrap();
        for i in 0..n {
            assert!((z[i] - exact.z[i]).abs() < 1e-9);
            assert!((i_cap[i] - exact.i_cap[i]).abs() < 1e-9);
        }
    }
}

#[test]
fn noiseless_pair_stays_noiseless() {
    let leaves = ChannelArray::new(vec![DiscreteChannel::noiseless(); 2]).unwrap();
    for i in 0..2 {
        let c = brute_force_synth(&leaves, i).unwrap();
        assert_eq!(c.bhattacharyya(), 0.0);
    }
}
