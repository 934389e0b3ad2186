use irpolar::awtc::{apply_rewrite, secrecy_capacity, AdversarySpec};
use irpolar::channels::{DiscreteChannel, ErasureChannel};
use irpolar::metrics::{secrecy_rate, simulate_session, wilson_interval};
use irpolar::polarize::{ConstructOptions, Method};
use irpolar::rng;
use irpolar::secure_code::{
    encode_block, extract_message, plan_session, sc_decode_block, SessionSeeds, SessionState,
};
use rand::Rng;

fn bec(e: f64) -> DiscreteChannel {
    ErasureChannel::new(e).unwrap().to_channel()
}

#[test]
fn relay_bits_survive_correct_blocks() {
    let (w, wt) = (bec(0.01), DiscreteChannel::noiseless());
    let adv = AdversarySpec::random(128, 4, 0.45, 0.45, 3).unwrap();
    let seeds = SessionSeeds {
        master: 1,
        preshared: 2,
    };
    let plan = plan_session(
        &w,
        &wt,
        &adv,
        0.3,
        Method::BecExact,
        &ConstructOptions::default(),
        seeds,
    )
    .unwrap();
    let cfg = &plan.config;
    assert!(cfg
        .partitions()
        .iter()
        .skip(1)
        .any(|p| !p.chained.is_empty()));
    let mut checked = 0;
    for trial in 0..300u64 {
        let mut g = rng::stream(10, trial);
        let key = cfg.preshared_bits(trial);
        let mut tx = SessionState::new(cfg, key.clone()).unwrap();
        let mut rx = SessionState::new(cfg, key).unwrap();
        for t in 0..cfg.blocks() {
            let p = cfg.partition(t).unwrap();
            let msg: Vec<u8> = (0..p.message_len())
                .map(|_| u8::from(g.random::<bool>()))
                .collect();
            let x = encode_block(&msg, cfg, &mut tx, t, &mut g).unwrap();
            let v: Vec<_> = x
                .iter()
                .map(|b| w.outputs()[w.sample(*b, &mut g)])
                .collect();
            let y = apply_rewrite(&v, &adv, t).unwrap();
            let u = sc_decode_block(&y, cfg, &plan.main_leaves[t], &mut rx, t).unwrap();
            if u == tx.u[t] {
                if t + 1 < cfg.blocks() {
                    assert_eq!(rx.relay[t + 1], tx.relay[t + 1]);
                    checked += 1;
                }
                assert_eq!(extract_message(&u, p), msg);
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn error_rate_is_self_consistent() {
    let (w, wt) = (bec(0.1), bec(0.4));
    let adv = AdversarySpec::random(64, 2, 0.25, 0.125, 6).unwrap();
    let seeds = SessionSeeds {
        master: 21,
        preshared: 22,
    };
    let plan = plan_session(
        &w,
        &wt,
        &adv,
        0.3,
        Method::BecExact,
        &ConstructOptions::default(),
        seeds,
    )
    .unwrap();
    let full = simulate_session(&plan, &adv, &w, 10_000).unwrap();
    let half = simulate_session(&plan, &adv, &w, 5_000).unwrap();
    let (lo, hi) = wilson_interval(half.session_errors, half.trials);
    assert!(
        full.p_e >= lo && full.p_e <= hi,
        "{} not in [{lo}, {hi}]",
        full.p_e
    );
}

#[test]
fn rate_never_far_above_capacity() {
    let cases = [
        (bec(0.1), bec(0.4), 0.25, 0.125),
        (DiscreteChannel::bsc(0.02).unwrap(), bec(0.5), 0.5, 0.0),
        (
            DiscreteChannel::noiseless(),
            DiscreteChannel::noiseless(),
            0.3,
            0.2,
        ),
    ];
    for (w, wt, rr, rw) in cases {
        let adv = AdversarySpec::random(256, 2, rr, rw, 1).unwrap();
        let method = if w.erasure_equivalent().is_some() {
            Method::BecExact
        } else {
            Method::Merge
        };
        let plan = plan_session(
            &w,
            &wt,
            &adv,
            0.3,
            method,
            &ConstructOptions::default(),
            SessionSeeds::default(),
        )
        .unwrap();
        let r = secrecy_rate(plan.config.partitions(), 256);
        assert!(r <= secrecy_capacity(&w, &wt, rr, rw) + 0.05, "{r}");
    }
}
