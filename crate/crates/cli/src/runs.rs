//! Single algorithm runs, each producing one [`RunRecord`].

use std::time::Instant;

use subtsp::exact::{exact_mst, exact_tsp, MAX_TSP_N};
use subtsp::metric::Instance;
use subtsp::query_g1::{estimate_tsp_g1, G1Config, G1Profile};
use subtsp::query_mst::{estimate_tsp_with_mst, MstProfile, MstQueryConfig};
use subtsp::stream::{run_onepass_mst_estimate, run_twopass_tsp, Order, StreamSession, ALPHA_TWOPASS, BETA_TWOPASS};
use subtsp::{CountingOracle, Metric, Result, RootedTree};

use crate::record::RunRecord;

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Held-Karp value when `n` is small enough, else `None`.
pub fn tsp_reference(m: &Metric) -> Result<Option<f64>> {
    if m.n() > MAX_TSP_N {
        return Ok(None);
    }
    Ok(Some(exact_tsp(m)?.value as f64))
}

fn session(inst: &Instance, seed: u64) -> StreamSession {
    match inst {
        Instance::Metric(m) => StreamSession::metric(m, Order::Shuffled(seed)),
        Instance::Graph(g) => StreamSession::graph(g, Order::Shuffled(seed)),
    }
}

pub fn stream_mst(name: &str, inst: &Instance, alpha: f64, c_boost: f64, seed: u64) -> Result<RunRecord> {
    let m = inst.to_metric()?;
    let mut s = session(inst, seed);
    let start = Instant::now();
    let r = run_onepass_mst_estimate(&mut s, alpha, seed, c_boost)?;
    let wall_ms = ms(start);
    let rec = RunRecord {
        params: format!("alpha={alpha};c_boost={c_boost}"),
        value: r.value,
        peak_words: r.peak_words,
        passes: s.passes(),
        branch: "one-pass".into(),
        wall_ms,
        ..RunRecord::new(name, m.n(), "stream-mst", seed)
    };
    Ok(rec.with_exact(Some(exact_mst(&m).value as f64)))
}

pub fn stream_tsp(name: &str, inst: &Instance, seed: u64) -> Result<RunRecord> {
    let m = inst.to_metric()?;
    let mut s = session(inst, seed);
    let start = Instant::now();
    let r = run_twopass_tsp(&mut s, ALPHA_TWOPASS, BETA_TWOPASS)?;
    let wall_ms = ms(start);
    let rec = RunRecord {
        params: format!("alpha={ALPHA_TWOPASS};beta={BETA_TWOPASS}"),
        value: r.value,
        peak_words: r.peak_words,
        passes: r.passes,
        branch: format!("{:?}", r.branch),
        wall_ms,
        ..RunRecord::new(name, m.n(), "stream-tsp", seed)
    };
    Ok(rec.with_exact(tsp_reference(&m)?))
}

pub fn query_g1(name: &str, m: &Metric, profile: G1Profile, seed: u64) -> Result<RunRecord> {
    let cfg = G1Config::for_profile(profile, m.n(), seed);
    let mut o = CountingOracle::new(m);
    let start = Instant::now();
    let e = estimate_tsp_g1(&mut o, &cfg)?;
    let wall_ms = ms(start);
    let rec = RunRecord {
        profile: profile.to_string(),
        params: format!("eps={};eps_hat={};ell={};h={};q={}", cfg.eps, cfg.eps_hat, cfg.ell, cfg.h, cfg.q),
        value: e.value,
        distinct_queries: e.distinct_queries,
        raw_queries: e.raw_queries,
        branch: e.branch,
        wall_ms,
        ..RunRecord::new(name, m.n(), "query-g1", seed)
    };
    Ok(rec.with_exact(tsp_reference(m)?))
}

pub fn query_mst(name: &str, m: &Metric, tree: &RootedTree, profile: MstProfile, seed: u64) -> Result<RunRecord> {
    let cfg = MstQueryConfig::for_profile(profile, m.n(), seed);
    let mut o = CountingOracle::new(m);
    let start = Instant::now();
    let e = estimate_tsp_with_mst(&mut o, tree, &cfg)?;
    let wall_ms = ms(start);
    let rec = RunRecord {
        profile: profile.to_string(),
        params: format!("eps={};ell={};c={};k={}", cfg.eps, cfg.ell, cfg.c, cfg.k),
        value: e.value,
        distinct_queries: e.distinct_queries,
        raw_queries: e.raw_queries,
        branch: e.branch,
        wall_ms,
        ..RunRecord::new(name, m.n(), "query-mst", seed)
    };
    Ok(rec.with_exact(tsp_reference(m)?))
}
