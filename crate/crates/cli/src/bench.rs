//! Seeded experiment suites. Trials run in parallel; rows come back in seed order.

use std::ops::Range;

use rand::Rng as _;
use rayon::prelude::*;

use subtsp::exact::{exact_mst, exact_tsp, mst_tree};
use subtsp::gen::{
    gen_graphic, gen_onepass_family, gen_random_metric, random_connected_graph, OnePassParams, Style, TspGadget,
    Which,
};
use subtsp::metric::{metric_from_graph, Instance};
use subtsp::query_g1::G1Profile;
use subtsp::query_mst::MstProfile;
use subtsp::rng::rng_for;
use subtsp::{Error, Result};

use crate::record::RunRecord;
use crate::runs;

pub const SUITES: [&str; 5] = ["stream-mst-sweep", "stream-tsp-sandwich", "query-g1", "query-mst", "lowerbound-families"];

pub const SWEEP_ALPHAS: [f64; 4] = [2.0, 4.0, 8.0, 16.0];

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub seeds: Range<u64>,
    /// Instance size; each suite has its own default.
    pub n: Option<usize>,
    pub g1_profile: G1Profile,
    pub mst_profile: MstProfile,
}

pub fn run(suite: &str, opts: &BenchOptions) -> Result<Vec<RunRecord>> {
    let trial: fn(u64, &BenchOptions) -> Result<Vec<RunRecord>> = match suite {
        "stream-mst-sweep" => stream_mst_sweep,
        "stream-tsp-sandwich" => stream_tsp_sandwich,
        "query-g1" => query_g1,
        "query-mst" => query_mst,
        "lowerbound-families" => lowerbound_families,
        _ => return Err(Error::BadParameters(format!("unknown suite {suite:?}; expected one of {SUITES:?}"))),
    };
    let seeds: Vec<u64> = opts.seeds.clone().collect();
    let rows: Vec<Vec<RunRecord>> = seeds.par_iter().map(|&s| trial(s, opts)).collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn stream_mst_sweep(seed: u64, opts: &BenchOptions) -> Result<Vec<RunRecord>> {
    let n = opts.n.unwrap_or(512);
    let inst = Instance::Metric(gen_random_metric(n, seed, Style::EuclideanRounded)?);
    let name = format!("euclid-{n}-{seed}");
    SWEEP_ALPHAS.iter().map(|&a| runs::stream_mst(&name, &inst, a, 100.0, seed)).collect()
}

fn stream_tsp_sandwich(seed: u64, opts: &BenchOptions) -> Result<Vec<RunRecord>> {
    let n = opts.n.unwrap_or(4 + seed as usize % 10);
    let mut rng = rng_for(seed, "bench/twopass");
    let extra = rng.gen_range(0..=n * (n - 1) / 2);
    let g = random_connected_graph(n, extra, 20, &mut rng);
    Ok(vec![runs::stream_tsp(&format!("graph-{n}-{seed}"), &Instance::Graph(g), seed)?])
}

fn query_g1(seed: u64, opts: &BenchOptions) -> Result<Vec<RunRecord>> {
    let n = opts.n.unwrap_or(5 + seed as usize % 10);
    let m = gen_graphic(n, seed as usize % n, seed);
    Ok(vec![runs::query_g1(&format!("graphic-{n}-{seed}"), &m, opts.g1_profile, seed)?])
}

fn query_mst(seed: u64, opts: &BenchOptions) -> Result<Vec<RunRecord>> {
    let n = opts.n.unwrap_or(5 + seed as usize % 10);
    let style = [Style::EuclideanRounded, Style::WeightedClosure, Style::Graphic][seed as usize % 3];
    let m = gen_random_metric(n, seed, style)?;
    let t = mst_tree(&m, 0);
    Ok(vec![runs::query_mst(&format!("{style:?}-{n}-{seed}").to_lowercase(), &m, &t, opts.mst_profile, seed)?])
}

fn closed_form(name: String, n: usize, algorithm: &str, seed: u64, params: String, got: i64, want: i64) -> RunRecord {
    RunRecord { params, value: got as f64, ..RunRecord::new(name, n, algorithm, seed) }.with_exact(Some(want as f64))
}

/// Exact MST of both single-pass metrics and exact MST and TSP of one gadget,
/// each against its closed form in the `exact` column.
fn lowerbound_families(seed: u64, _: &BenchOptions) -> Result<Vec<RunRecord>> {
    let (k, r, p) = (2 + seed as usize % 2, 1 + (seed as usize / 2) % 3, 1 + (seed as usize / 6) % 2);
    let base = OnePassParams { k, r, p, big_l: 0 };
    let n = base.n();
    let params = OnePassParams { big_l: (n + 1 + seed as usize % 5) as i64, ..base };
    let (ki, ri, ni, l) = (k as i64, r as i64, n as i64, params.big_l);
    let tag = format!("k={k};r={r};p={p};L={l}");
    let y = exact_mst(&gen_onepass_family(params, Which::Y)?).value;
    let no = exact_mst(&gen_onepass_family(params, Which::N)?).value;
    let mut rows = vec![
        closed_form(format!("onepass-Y-{seed}"), n, "onepass-mst", seed, tag.clone(), y, (ni - 1) + (l - 1) * (ki + 1)),
        closed_form(format!("onepass-N-{seed}"), n, "onepass-mst", seed, tag, no, (ni - 1) + (l - 1) * ((ki - 1) * ri + 1)),
    ];

    let mut rng = rng_for(seed, "bench/gadget");
    let p = 1 + seed as usize % 3;
    let r = (1 + (seed as usize / 3) % 3).min(6 / p);
    let x: Vec<Vec<bool>> = (0..p).map(|_| (0..p).map(|_| rng.gen_bool(0.5)).collect()).collect();
    let (istar, jstar) = (rng.gen_range(0..p), rng.gen_range(0..p));
    let n = 2 + 2 * p * r;
    let l = (n * n) as i64;
    let g = TspGadget::new(x.clone(), istar, jstar, r, l)?;
    let m = metric_from_graph(&g.graph())?;
    let bits: String = x.iter().flatten().map(|&b| if b { '1' } else { '0' }).collect();
    let tag = format!("p={p};r={r};L={l};i*={istar};j*={jstar};X={bits}");
    let (ni, ri) = (n as i64, r as i64);
    let mst_formula = (ni + 2 * ri - 2) + (2 * ri + 1) * l;
    let name = format!("gadget-{seed}");
    rows.push(closed_form(name.clone(), n, "gadget-mst", seed, tag.clone(), exact_mst(&m).value, mst_formula));
    let (want, branch) = if x[istar][jstar] {
        (2 * ni - 6 + (2 * ri + 2) * l, "X=1 bound")
    } else {
        (2 * mst_formula, "X=0 value")
    };
    let mut tsp = closed_form(name, n, "gadget-tsp", seed, tag, exact_tsp(&m)?.value, want);
    tsp.branch = branch.into();
    rows.push(tsp);
    Ok(rows)
}
