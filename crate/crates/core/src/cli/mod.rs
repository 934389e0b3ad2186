//! Command-line experiment runner.

mod config;
mod output;

pub use config::{
    CapacitySection, ExperimentConfig, OracleSection, PolarizeSection, SimulateSection,
};
pub use output::{fmt_f64, render_csv, write_all_atomic};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::Rng;

use crate::awtc::{secrecy_capacity, special_cases, AdversarySpec};
use crate::channels::{ChannelKind, ChannelProfile, DiscreteChannel};
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::metrics::{brute_force_params, leakage_exact_small, simulate_session};
use crate::polarize::{construct, ChannelArray, ConstructOptions, Method, DEFAULT_BETA};
use crate::rng;
use crate::secure_code::{plan_session, SessionSeeds};

/// Largest allowed `|z_oracle - z_construct|` before `oracle` fails.
pub const ORACLE_TOL: f64 = 1e-9;
pub const HIST_BINS: usize = 100;

#[derive(Debug, Parser)]
#[command(
    name = "irpolar",
    version,
    about = "Irregular polarization and secure polar coding experiments",
    after_help = "Exit codes: 0 success, 1 usage or config error, 2 budget/infeasibility/IO error, 3 oracle mismatch."
)]
pub struct Cli {
    /// TOML experiment config; command-line flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads [default: machine parallelism].
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Directory for CSV output [default: config `out_dir`, else the current directory].
    #[arg(long, global = true, env = "IRPOLAR_OUT_DIR", value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct synthesized channels for a leaf profile; writes
    /// polarize_index.csv and polarize_hist.csv.
    Polarize(PolarizeArgs),
    /// Secrecy capacity of a parameter set; writes capacity.csv.
    Capacity(CapacityArgs),
    /// Simulate secure-coding sessions; writes simulate.csv.
    Simulate(SimulateArgs),
    /// Compare brute-force synthesized channels with the exact construction
    /// (N <= 8); writes oracle.csv.
    Oracle(OracleArgs),
}

/// Channel syntax: `bec:EPS`, `bsc:P` or `noiseless`. Tables are config-only.
fn parse_channel(s: &str) -> std::result::Result<ChannelProfile, String> {
    if s == "noiseless" {
        return Ok(ChannelProfile::bsc(0.0));
    }
    let (kind, value) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `bec:EPS`, `bsc:P` or `noiseless`, got `{s}`"))?;
    let v: f64 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    match kind {
        "bec" => Ok(ChannelProfile::bec(v)),
        "bsc" => Ok(ChannelProfile::bsc(v)),
        _ => Err(format!("unknown channel kind `{kind}`")),
    }
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct PolarizeArgs {
    /// N leaves with erasure probabilities drawn uniformly from [0,1] with SEED.
    #[arg(long, num_args = 2, value_names = ["N", "SEED"])]
    pub random_bec: Option<Vec<u64>>,
    /// Comma-separated erasure probability of each leaf.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub eps: Option<Vec<f64>>,
    /// Homogeneous leaf channel (`bec:EPS`, `bsc:P`, `noiseless`) [default: config `[main]`].
    #[arg(long, value_parser = parse_channel, value_name = "CHANNEL")]
    pub main: Option<ChannelProfile>,
    /// Block length for a homogeneous profile.
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// exact | bec_exact | merge | monte_carlo [default: bec_exact for erasure leaves, else merge].
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    /// Output-alphabet cap of the merge method [default: 128].
    #[arg(long)]
    pub mu: Option<usize>,
    /// Trials of the monte_carlo method [default: 10000].
    #[arg(long)]
    pub mc_trials: Option<usize>,
    /// Seed of the monte_carlo method [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct CapacityArgs {
    /// Main channel W [default: config `[main]`].
    #[arg(long, value_parser = parse_channel, value_name = "CHANNEL")]
    pub main: Option<ChannelProfile>,
    /// Wiretap channel W~ [default: config `[wiretap]`].
    #[arg(long, value_parser = parse_channel, value_name = "CHANNEL")]
    pub wiretap: Option<ChannelProfile>,
    /// Fraction of wiretap outputs Eve reads [default: 0].
    #[arg(long)]
    pub rho_r: Option<f64>,
    /// Fraction of main outputs Eve rewrites [default: 0].
    #[arg(long)]
    pub rho_w: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// Main channel W [default: config `[main]`].
    #[arg(long, value_parser = parse_channel, value_name = "CHANNEL")]
    pub main: Option<ChannelProfile>,
    /// Wiretap channel W~ [default: config `[wiretap]`].
    #[arg(long, value_parser = parse_channel, value_name = "CHANNEL")]
    pub wiretap: Option<ChannelProfile>,
    /// Block length N, a power of two [default: 256].
    #[arg(long)]
    pub n: Option<usize>,
    /// Blocks per session T [default: 1].
    #[arg(long)]
    pub blocks: Option<usize>,
    /// Fraction of wiretap outputs Eve reads [default: 0].
    #[arg(long)]
    pub rho_r: Option<f64>,
    /// Fraction of main outputs Eve rewrites [default: 0].
    #[arg(long)]
    pub rho_w: Option<f64>,
    /// Threshold exponent, delta = 2^(-N^beta), 0 < beta < 0.5 [default: 0.3].
    #[arg(long)]
    pub beta: Option<f64>,
    /// exact | bec_exact | merge | monte_carlo [default: bec_exact for erasure channels, else merge].
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    /// Output-alphabet cap of the merge method [default: 128].
    #[arg(long)]
    pub mu: Option<usize>,
    /// Trials of the monte_carlo construction [default: 10000].
    #[arg(long)]
    pub mc_trials: Option<usize>,
    /// Simulated sessions [default: 1000].
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed for messages, random bits and channel noise [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Seed of the preshared key bits [default: 1].
    #[arg(long)]
    pub preshared_seed: Option<u64>,
    /// Seed of the random read/rewrite sets [default: 2].
    #[arg(long)]
    pub adversary_seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Comma-separated leaf channels, e.g. `bec:0.3,bsc:0.1` [default: config `[oracle].leaves`].
    #[arg(long, value_delimiter = ',', value_parser = parse_channel, value_name = "LIST")]
    pub leaves: Option<Vec<ChannelProfile>>,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OracleMismatch(_) => 3,
        Error::Budget(_)
        | Error::InfeasibleChain { .. }
        | Error::Io(_)
        | Error::Csv(_)
        | Error::MissingRelay(_) => 2,
        _ => 1,
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| cfg.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Error::config("--threads must be at least 1"));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::config(format!("cannot start thread pool: {e}")))?;
    let files = pool.install(|| match &cli.command {
        Command::Polarize(a) => cmd_polarize(a, &cfg),
        Command::Capacity(a) => cmd_capacity(a, &cfg),
        Command::Simulate(a) => cmd_simulate(a, &cfg),
        Command::Oracle(a) => cmd_oracle(a, &cfg),
    })?;
    let refs: Vec<(&str, String)> = files.outputs.iter().map(|(n, c)| (*n, c.clone())).collect();
    write_all_atomic(&out_dir, &refs)?;
    if !files.summary.is_empty() {
        print!("{}", files.summary);
    }
    match files.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// What a command produced: files to write, text for stdout, and an error
/// to report after the files are written.
#[derive(Debug, Default)]
pub struct CommandOutput {
    pub outputs: Vec<(&'static str, String)>,
    pub summary: String,
    pub failure: Option<Error>,
}

fn describe(p: &ChannelProfile) -> String {
    match p.kind {
        ChannelKind::Bec => format!("bec:{}", p.eps.map(fmt_f64).unwrap_or_default()),
        ChannelKind::Bsc => format!("bsc:{}", p.p.map(fmt_f64).unwrap_or_default()),
        ChannelKind::Table => {
            let row = |r: &Option<toml::Spanned<Vec<f64>>>| {
                r.as_ref()
                    .map(|v| {
                        v.get_ref()
                            .iter()
                            .map(|x| fmt_f64(*x))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default()
            };
            format!("table:p0={};p1={}", row(&p.p0), row(&p.p1))
        }
    }
}

fn profile<'a>(
    flag: &'a Option<ChannelProfile>,
    cfg: &'a Option<ChannelProfile>,
    what: &str,
) -> Result<&'a ChannelProfile> {
    flag.as_ref().or(cfg.as_ref()).ok_or_else(|| {
        Error::config(format!(
            "no {what} channel: pass --{what} or set [{what}] in the config"
        ))
    })
}

fn auto_method(leaves: &[&DiscreteChannel]) -> Method {
    if leaves.iter().all(|l| l.erasure_equivalent().is_some()) {
        Method::BecExact
    } else {
        Method::Merge
    }
}

fn fraction(name: &str, v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::config(format!("{name} = {v} must lie in [0, 1]")));
    }
    Ok(v)
}

pub fn cmd_polarize(a: &PolarizeArgs, cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let c = &cfg.polarize;
    let random = |n: u64, seed: u64| -> Vec<f64> {
        let mut g = rng::stream(seed, 0);
        (0..n).map(|_| g.random::<f64>()).collect()
    };
    let homogeneous = |p: &ChannelProfile, n: Option<usize>| -> Result<Vec<DiscreteChannel>> {
        let n = n.ok_or_else(|| Error::config("a homogeneous profile needs --n"))?;
        Ok(vec![p.build(cfg.src())?; n])
    };
    let bec = |eps: &[f64]| -> Result<Vec<DiscreteChannel>> {
        eps.iter()
            .map(|e| Ok(crate::channels::ErasureChannel::new(*e)?.to_channel()))
            .collect()
    };
    let leaves = if let Some(r) = &a.random_bec {
        bec(&random(r[0], r[1]))?
    } else if let Some(eps) = &a.eps {
        bec(eps)?
    } else if let Some(p) = &a.main {
        homogeneous(p, a.n.or(c.n))?
    } else if let Some(seed) = c.random_bec_seed {
        let n =
            a.n.or(c.n)
                .ok_or_else(|| Error::config("random_bec_seed needs `n`"))?;
        bec(&random(n as u64, seed))?
    } else if let Some(eps) = &c.eps {
        bec(eps)?
    } else if let Some(p) = &cfg.main {
        homogeneous(p, a.n.or(c.n))?
    } else {
        return Err(Error::config(
            "no leaf profile: pass --random-bec, --eps or --main, or set [polarize] in the config",
        ));
    };
    let method = a
        .method
        .or(c.method)
        .unwrap_or_else(|| auto_method(&leaves.iter().collect::<Vec<_>>()));
    let opts = ConstructOptions {
        mu: a.mu.or(c.mu).unwrap_or(ConstructOptions::default().mu),
        trials: a
            .mc_trials
            .or(c.mc_trials)
            .unwrap_or(ConstructOptions::default().trials),
        seed: a.seed.or(c.seed).unwrap_or(0),
        ..ConstructOptions::default()
    };
    let params = construct(&ChannelArray::new(leaves)?, method, &opts)?;

    let rows: Vec<Vec<String>> = (0..params.len())
        .map(|i| {
            vec![
                (i + 1).to_string(),
                fmt_f64(params.z[i]),
                fmt_f64(params.i_cap[i]),
                method.name().to_string(),
            ]
        })
        .collect();
    let index = render_csv(&["index", "z", "i_cap", "method"], &rows)?;

    let mut counts = [0usize; HIST_BINS];
    for c in &params.i_cap {
        counts[((c * HIST_BINS as f64) as usize).min(HIST_BINS - 1)] += 1;
    }
    let total = params.len() as f64;
    let rows: Vec<Vec<String>> = counts
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            vec![
                fmt_f64(k as f64 / HIST_BINS as f64),
                fmt_f64((k + 1) as f64 / HIST_BINS as f64),
                n.to_string(),
                fmt_f64(n as f64 / total),
            ]
        })
        .collect();
    let hist = render_csv(&["bin_low", "bin_high", "count", "fraction"], &rows)?;
    let summary = format!(
        "polarize: N = {}, method = {}, mean i_cap = {}, i_cap > 0.99: {}, i_cap < 0.01: {}\n",
        params.len(),
        method,
        fmt_f64(params.mean_capacity()),
        params.i_cap.iter().filter(|c| **c > 0.99).count(),
        params.i_cap.iter().filter(|c| **c < 0.01).count(),
    );
    Ok(CommandOutput {
        outputs: vec![("polarize_index.csv", index), ("polarize_hist.csv", hist)],
        summary,
        failure: None,
    })
}

pub fn cmd_capacity(a: &CapacityArgs, cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let mp = profile(&a.main, &cfg.main, "main")?;
    let wp = profile(&a.wiretap, &cfg.wiretap, "wiretap")?;
    let w = mp.build(cfg.src())?;
    let wt = wp.build(cfg.src())?;
    let rho_r = fraction("rho_r", a.rho_r.or(cfg.capacity.rho_r).unwrap_or(0.0))?;
    let rho_w = fraction("rho_w", a.rho_w.or(cfg.capacity.rho_w).unwrap_or(0.0))?;
    let cs = secrecy_capacity(&w, &wt, rho_r, rho_w);
    let labels = special_cases(&w, &wt, rho_r, rho_w).join("; ");
    let csv = render_csv(
        &[
            "main",
            "wiretap",
            "rho_r",
            "rho_w",
            "i_main",
            "i_wiretap",
            "secrecy_capacity",
            "special_cases",
        ],
        &[vec![
            describe(mp),
            describe(wp),
            fmt_f64(rho_r),
            fmt_f64(rho_w),
            fmt_f64(w.capacity()),
            fmt_f64(wt.capacity()),
            fmt_f64(cs),
            labels.clone(),
        ]],
    )?;
    let mut summary = format!("secrecy capacity: {}\n", fmt_f64(cs));
    if !labels.is_empty() {
        summary.push_str(&format!("special case: {labels}\n"));
    }
    Ok(CommandOutput {
        outputs: vec![("capacity.csv", csv)],
        summary,
        failure: None,
    })
}

fn explicit_sets(sets: &[Vec<usize>], n: usize, what: &str) -> Result<Vec<IndexSet>> {
    sets.iter()
        .enumerate()
        .map(|(t, s)| {
            s.iter()
                .map(|&i| {
                    if i == 0 || i > n {
                        Err(Error::config(format!(
                            "{what} set of block {}: index {i} outside [1, {n}]",
                            t + 1
                        )))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn cmd_simulate(a: &SimulateArgs, cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let c = &cfg.simulate;
    let mp = profile(&a.main, &cfg.main, "main")?;
    let wp = profile(&a.wiretap, &cfg.wiretap, "wiretap")?;
    let w = mp.build(cfg.src())?;
    let wt = wp.build(cfg.src())?;
    let n = a.n.or(c.n).unwrap_or(256);
    crate::polarize::check_block_length(n).map_err(|e| Error::config(e.to_string()))?;
    let trials = a.trials.or(c.trials).unwrap_or(1000);
    if trials == 0 {
        return Err(Error::config("trials must be at least 1"));
    }
    let beta = a.beta.or(c.beta).unwrap_or(DEFAULT_BETA);
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::config(format!("beta = {beta} must lie in (0, 0.5)")));
    }
    let seed = a.seed.or(c.seed).unwrap_or(0);
    let preshared_seed = a.preshared_seed.or(c.preshared_seed).unwrap_or(1);
    let adversary_seed = a.adversary_seed.or(c.adversary_seed).unwrap_or(2);
    let method = a
        .method
        .or(c.method)
        .unwrap_or_else(|| auto_method(&[&w, &wt]));
    let opts = ConstructOptions {
        mu: a.mu.or(c.mu).unwrap_or(ConstructOptions::default().mu),
        trials: a
            .mc_trials
            .or(c.mc_trials)
            .unwrap_or(ConstructOptions::default().trials),
        seed,
        ..ConstructOptions::default()
    };

    let explicit = c.read_sets.is_some() || c.write_sets.is_some();
    let adversary = if explicit {
        let (Some(r), Some(wr)) = (&c.read_sets, &c.write_sets) else {
            return Err(Error::config(
                "explicit adversary needs both read_sets and write_sets",
            ));
        };
        let read = explicit_sets(r, n, "read")?;
        let write = explicit_sets(wr, n, "write")?;
        let blocks = a.blocks.or(c.blocks).unwrap_or(read.len());
        if blocks != read.len() {
            return Err(Error::config(format!(
                "{} read sets for {blocks} blocks",
                read.len()
            )));
        }
        let rho_r = a
            .rho_r
            .or(c.rho_r)
            .unwrap_or(read[0].len() as f64 / n as f64);
        let rho_w = a
            .rho_w
            .or(c.rho_w)
            .unwrap_or(write[0].len() as f64 / n as f64);
        AdversarySpec::explicit(
            n,
            fraction("rho_r", rho_r)?,
            fraction("rho_w", rho_w)?,
            read,
            write,
        )?
    } else {
        let blocks = a.blocks.or(c.blocks).unwrap_or(1);
        if blocks == 0 {
            return Err(Error::config("blocks must be at least 1"));
        }
        let rho_r = fraction("rho_r", a.rho_r.or(c.rho_r).unwrap_or(0.0))?;
        let rho_w = fraction("rho_w", a.rho_w.or(c.rho_w).unwrap_or(0.0))?;
        AdversarySpec::random(n, blocks, rho_r, rho_w, adversary_seed)?
    };

    let seeds = SessionSeeds {
        master: seed,
        preshared: preshared_seed,
    };
    let plan = plan_session(&w, &wt, &adversary, beta, method, &opts, seeds)?;
    let mut report = simulate_session(&plan, &adversary, &w, trials)?;
    if n <= 8 && adversary.blocks() == 1 {
        report.leakage_exact = Some(leakage_exact_small(&wt, &adversary, &plan.config)?);
    }
    let cs = secrecy_capacity(&w, &wt, adversary.rho_r(), adversary.rho_w());

    let header = [
        "n",
        "blocks",
        "main",
        "wiretap",
        "rho_r",
        "rho_w",
        "beta",
        "method",
        "mu",
        "mc_trials",
        "trials",
        "seed",
        "preshared_seed",
        "adversary_seed",
        "block_errors",
        "session_errors",
        "p_e",
        "p_e_low",
        "p_e_high",
        "leakage_bound",
        "leakage_exact",
        "secrecy_rate",
        "secrecy_capacity",
    ];
    let row = vec![
        n.to_string(),
        adversary.blocks().to_string(),
        describe(mp),
        describe(wp),
        fmt_f64(adversary.rho_r()),
        fmt_f64(adversary.rho_w()),
        fmt_f64(beta),
        method.name().to_string(),
        opts.mu.to_string(),
        opts.trials.to_string(),
        trials.to_string(),
        seed.to_string(),
        preshared_seed.to_string(),
        if explicit {
            String::new()
        } else {
            adversary_seed.to_string()
        },
        report.block_errors.to_string(),
        report.session_errors.to_string(),
        fmt_f64(report.p_e),
        fmt_f64(report.p_e_low),
        fmt_f64(report.p_e_high),
        fmt_f64(report.leakage_bound),
        report.leakage_exact.map(fmt_f64).unwrap_or_default(),
        fmt_f64(report.secrecy_rate),
        fmt_f64(cs),
    ];
    let csv = render_csv(&header, &[row])?;
    let summary = format!(
        "simulate\n  N = {n}, T = {}, W = {}, W~ = {}, rho_r = {}, rho_w = {}, beta = {}, method = {}\n  trials = {trials}, seed = {seed}\n  session errors = {} (p_e = {}, 95% CI [{}, {}]), block errors = {}\n  leakage bound = {} bits{}\n  secrecy rate = {} (capacity {})\n  runtime = {:.3} s\n",
        adversary.blocks(),
        describe(mp),
        describe(wp),
        fmt_f64(adversary.rho_r()),
        fmt_f64(adversary.rho_w()),
        fmt_f64(beta),
        method,
        report.session_errors,
        fmt_f64(report.p_e),
        fmt_f64(report.p_e_low),
        fmt_f64(report.p_e_high),
        report.block_errors,
        fmt_f64(report.leakage_bound),
        report
            .leakage_exact
            .map(|l| format!(", exact leakage = {} bits", fmt_f64(l)))
            .unwrap_or_default(),
        fmt_f64(report.secrecy_rate),
        fmt_f64(cs),
        report.runtime_secs,
    );
    Ok(CommandOutput {
        outputs: vec![("simulate.csv", csv)],
        summary,
        failure: None,
    })
}

pub fn cmd_oracle(a: &OracleArgs, cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let profiles = a
        .leaves
        .as_ref()
        .or(cfg.oracle.leaves.as_ref())
        .ok_or_else(|| {
            Error::config("no leaves: pass --leaves or set [oracle].leaves in the config")
        })?;
    let leaves = ChannelArray::new(
        profiles
            .iter()
            .map(|p| p.build(cfg.src()))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let (z_oracle, i_oracle) = brute_force_params(&leaves)?;
    let exact = construct(&leaves, Method::Exact, &ConstructOptions::default())?;
    let mut worst = (0.0f64, 0usize);
    let rows: Vec<Vec<String>> = (0..leaves.len())
        .map(|i| {
            let dz = (z_oracle[i] - exact.z[i]).abs();
            let di = (i_oracle[i] - exact.i_cap[i]).abs();
            if dz.max(di) > worst.0 {
                worst = (dz.max(di), i);
            }
            vec![
                (i + 1).to_string(),
                fmt_f64(z_oracle[i]),
                fmt_f64(exact.z[i]),
                fmt_f64(dz),
                fmt_f64(i_oracle[i]),
                fmt_f64(exact.i_cap[i]),
                fmt_f64(di),
            ]
        })
        .collect();
    let csv = render_csv(
        &[
            "index",
            "z_oracle",
            "z_construct",
            "z_diff",
            "i_oracle",
            "i_construct",
            "i_diff",
        ],
        &rows,
    )?;
    let failure = (worst.0 > ORACLE_TOL).then(|| {
        Error::OracleMismatch(format!(
            "index {} differs by {} (tolerance {ORACLE_TOL})",
            worst.1 + 1,
            fmt_f64(worst.0)
        ))
    });
    Ok(CommandOutput {
        outputs: vec![("oracle.csv", csv)],
        summary: format!(
            "oracle: N = {}, max diff = {}\n",
            leaves.len(),
            fmt_f64(worst.0)
        ),
        failure,
    })
}
