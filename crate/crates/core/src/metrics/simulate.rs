use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::{leakage_upper_bound, secrecy_rate, wilson_interval};
use crate::awtc::{apply_rewrite, AdversarySpec};
use crate::channels::DiscreteChannel;
use crate::error::{Error, Result};
use crate::rng;
use crate::secure_code::{
    encode_block, extract_message, sc_decode_block, SessionPlan, SessionState,
};

/// Outcome of a batch of simulated sessions.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub n: usize,
    pub blocks: usize,
    pub trials: usize,
    pub block_errors: usize,
    pub session_errors: usize,
    pub p_e: f64,
    pub p_e_low: f64,
    pub p_e_high: f64,
    pub leakage_bound: f64,
    pub leakage_exact: Option<f64>,
    pub secrecy_rate: f64,
    pub master_seed: u64,
    pub runtime_secs: f64,
}

/// `(block errors, session error)` of one trial.
fn run_trial(
    plan: &SessionPlan,
    adversary: &AdversarySpec,
    w: &DiscreteChannel,
    trial: u64,
) -> Result<(usize, bool)> {
    let cfg = &plan.config;
    let mut g = rng::stream(cfg.master_seed, trial);
    let key = cfg.preshared_bits(trial);
    let mut tx = SessionState::new(cfg, key.clone())?;
    let mut rx = SessionState::new(cfg, key)?;
    let mut block_errors = 0;
    for t in 0..cfg.blocks() {
        let p = cfg.partition(t)?;
        let msg: Vec<u8> = (0..p.message_len())
            .map(|_| u8::from(g.random::<bool>()))
            .collect();
        let x = encode_block(&msg, cfg, &mut tx, t, &mut g)?;
        let v: Vec<_> = x
            .iter()
            .map(|b| w.outputs()[w.sample(*b, &mut g)])
            .collect();
        let y = apply_rewrite(&v, adversary, t)?;
        let u_hat = sc_decode_block(&y, cfg, &plan.main_leaves[t], &mut rx, t)?;
        if extract_message(&u_hat, p) != msg {
            block_errors += 1;
        }
    }
    Ok((block_errors, block_errors > 0))
}

/// Runs `trials` independent sessions of `plan` over `W` with Bob's
/// outputs rewritten by `adversary`. Trial `k` draws everything from stream
/// `k` of the master seed, so the report does not depend on scheduling.
pub fn simulate_session(
    plan: &SessionPlan,
    adversary: &AdversarySpec,
    w: &DiscreteChannel,
    trials: usize,
) -> Result<SimReport> {
    let cfg = &plan.config;
    if trials == 0 {
        return Err(Error::OutOfRange("trials must be at least 1".into()));
    }
    if adversary.n() != cfg.n() || adversary.blocks() != cfg.blocks() {
        return Err(Error::config(format!(
            "adversary covers {} blocks of length {}, session has {} of length {}",
            adversary.blocks(),
            adversary.n(),
            cfg.blocks(),
            cfg.n()
        )));
    }
    if plan.main_leaves.len() != cfg.blocks() || plan.main_leaves.iter().any(|l| l.len() != cfg.n())
    {
        return Err(Error::config("main leaves do not match the session shape"));
    }
    let start = Instant::now();
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|k| run_trial(plan, adversary, w, k))
        .collect::<Result<Vec<_>>>()?;
    let block_errors = outcomes.iter().map(|o| o.0).sum();
    let session_errors = outcomes.iter().filter(|o| o.1).count();
    let (p_e_low, p_e_high) = wilson_interval(session_errors, trials);
    Ok(SimReport {
        n: cfg.n(),
        blocks: cfg.blocks(),
        trials,
        block_errors,
        session_errors,
        p_e: session_errors as f64 / trials as f64,
        p_e_low,
        p_e_high,
        leakage_bound: leakage_upper_bound(&plan.wiretap_params, cfg.partitions()),
        leakage_exact: None,
        secrecy_rate: secrecy_rate(cfg.partitions(), cfg.n()),
        master_seed: cfg.master_seed,
        runtime_secs: start.elapsed().as_secs_f64(),
    })
}
