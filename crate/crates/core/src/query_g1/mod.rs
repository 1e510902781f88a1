//! TSP estimation in the distance-query model when the weight-1 pairs span a
//! connected graph `G₁`.
//!
//! [`estimate_tsp_g1`] runs six steps: a degree-1 threshold test, sampled
//! [`local`] searches for light subgraphs and their reconfiguration costs,
//! sampled bounded [`bfs`] runs assembling support paths `Z` and chunks `H`,
//! a matching estimate on the vertices nobody reached, a matching inside the
//! e-blocks of `H`, and a proper-tour cost over long induced paths of `Z`.

mod bfs;
mod degree;
mod local;
mod matching;
mod paths;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use petgraph::algo::bridges::bridges;
use petgraph::graph::{NodeIndex, UnGraph};
use petgraph::visit::EdgeRef;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::estimate::{Estimate, Stopwatch, Verdict};
use crate::exact::{exact_max_matching, Half};
use crate::oracle::CountingOracle;
use crate::rng::{derive_idx, rng_for};

pub use bfs::{bfs, BfsResult};
pub use degree::{degree1_samples, degree1_test, Degree1Report};
pub use local::{local, out_reach, reconfig_cost, LocalResult, Status};
pub use matching::{
    default_matching_budget, default_matching_samples, greedy_matching_run, matching_size_estimate, GreedyRun,
    MatchingEstimate, MatchingOptions,
};
pub use paths::{extract_induced_paths, greedy_proper_tour, proper_tour_cost, InducedPaths, ProperTour};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G1Profile {
    /// Constants of the asymptotic analysis.
    Paper,
    /// Small-instance constants that make every branch reachable.
    Desk,
    /// Desk-like constants with sample counts that stay sublinear per vertex.
    Scaling,
}

impl FromStr for G1Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(G1Profile::Paper),
            "desk" => Ok(G1Profile::Desk),
            "scaling" => Ok(G1Profile::Scaling),
            _ => Err(Error::BadParameters(format!("unknown profile {s:?}"))),
        }
    }
}

impl fmt::Display for G1Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            G1Profile::Paper => "paper",
            G1Profile::Desk => "desk",
            G1Profile::Scaling => "scaling",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct G1Config {
    pub profile: G1Profile,
    pub eps: f64,
    pub eps_hat: f64,
    pub q: u64,
    pub ell: usize,
    pub h: usize,
    pub alpha_bfs: f64,
    /// `c` in the degree-1 sample size `c·log₂n/ε`.
    pub degree1_const: f64,
    /// Local samples; `None` means `⌈1/ε²⌉`.
    pub local_samples: Option<usize>,
    /// `c` in the BFS sample size `c·n·log₂n/h`.
    pub bfs_const: f64,
    /// Matching samples; `None` uses the estimator default.
    pub matching_samples: Option<usize>,
    pub seed: u64,
}

impl G1Config {
    pub fn paper(n: usize, seed: u64) -> Self {
        let eps_hat = 2f64.powi(-40);
        let ell = (100.0 * (n as f64).sqrt()).ceil() as usize;
        G1Config {
            profile: G1Profile::Paper,
            eps: 2f64.powi(-100),
            eps_hat,
            q: (n as f64 / (eps_hat * eps_hat)).min(u64::MAX as f64) as u64,
            ell,
            h: ((eps_hat * ell as f64 / 200.0).ceil() as usize).max(1),
            alpha_bfs: 10.0 / eps_hat,
            degree1_const: 200.0,
            local_samples: None,
            bfs_const: 100.0,
            matching_samples: None,
            seed,
        }
    }

    pub fn desk(n: usize, seed: u64) -> Self {
        let ell = ((n as f64).sqrt().ceil() as usize).max(1);
        G1Config {
            profile: G1Profile::Desk,
            eps: 0.05,
            eps_hat: 0.1,
            q: (50 * n as u64).min((n * n) as u64).max(n as u64),
            ell,
            h: (ell.div_ceil(10)).max(2),
            alpha_bfs: 20.0,
            degree1_const: 200.0,
            local_samples: None,
            bfs_const: 100.0,
            matching_samples: None,
            seed,
        }
    }

    pub fn scaling(n: usize, seed: u64) -> Self {
        let ell = ((n as f64).sqrt().ceil() as usize).max(1);
        G1Config {
            profile: G1Profile::Scaling,
            eps: 0.5,
            eps_hat: 0.5,
            q: (4 * n as u64).min((n * n) as u64).max(n as u64),
            ell,
            h: ell.div_ceil(2).max(2),
            alpha_bfs: 4.0,
            degree1_const: 0.05,
            local_samples: None,
            bfs_const: 0.05,
            matching_samples: Some(16),
            seed,
        }
    }

    pub fn for_profile(profile: G1Profile, n: usize, seed: u64) -> Self {
        match profile {
            G1Profile::Paper => Self::paper(n, seed),
            G1Profile::Desk => Self::desk(n, seed),
            G1Profile::Scaling => Self::scaling(n, seed),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let pos = [self.eps, self.eps_hat, self.alpha_bfs, self.degree1_const, self.bfs_const];
        if pos.iter().any(|x| !(*x > 0.0)) || self.ell == 0 || self.h == 0 || self.eps >= 1.0 || self.eps_hat >= 1.0 {
            return Err(Error::BadParameters(format!("non-positive or out-of-range G1 parameters: {self:?}")));
        }
        if self.q < n as u64 {
            return Err(Error::BadParameters(format!("q = {} is below n = {n}", self.q)));
        }
        if self.profile == G1Profile::Desk && (self.h < 2 || self.q > (n * n) as u64) {
            return Err(Error::BadParameters("desk profile needs h >= 2 and q <= n^2".into()));
        }
        Ok(())
    }

    fn local_count(&self) -> usize {
        self.local_samples.unwrap_or((1.0 / (self.eps * self.eps)).ceil() as usize)
    }
}

/// Edges of `edges` that lie inside some e-block, i.e. the non-bridges.
pub fn eblock_edges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut g = UnGraph::<(), ()>::with_capacity(n, edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    for &(a, b) in edges {
        g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
    }
    let cut: BTreeSet<usize> = bridges(&g).map(|e| e.id().index()).collect();
    edges.iter().enumerate().filter(|(i, _)| !cut.contains(i)).map(|(_, &e)| e).collect()
}

/// Estimates the TSP cost under the promise that the weight-1 pairs form a
/// connected spanning graph.
pub fn estimate_tsp_g1(oracle: &mut CountingOracle, cfg: &G1Config) -> Result<Estimate> {
    let n = oracle.n();
    let nf = n as f64;
    let mut watch = Stopwatch::start(oracle.distinct());
    let finish = |mut e: Estimate, oracle: &CountingOracle| {
        e.distinct_queries = oracle.distinct();
        e.raw_queries = oracle.raw();
        e
    };

    if n < 5 {
        // Too small for `1 ≤ ℓ < n/2`; solve directly.
        for u in 0..n {
            for v in u + 1..n {
                oracle.query(u, v)?;
            }
        }
        let o = &*oracle;
        let m = crate::Metric::from_fn(n, |u, v| o.known(u, v).unwrap_or(0));
        if n > 1 && crate::exact::exact_mst(&m).value != n as i64 - 1 {
            return Err(Error::PromiseViolated("weight-1 pairs do not span".into()));
        }
        let t = crate::exact::exact_tsp(&m)?.value as f64;
        let mut e = Estimate::new(t, "tiny");
        e.charge("tiny", watch.lap(oracle.distinct()));
        return Ok(finish(e, oracle));
    }
    cfg.validate(n)?;
    let est = |value: f64, branch: &str| Estimate::new(value, branch);

    // Step 1.
    let d1 = degree1_test(cfg.eps / 40.0, cfg.degree1_const, oracle, derive_idx(cfg.seed, "g1", 1))?;
    let q1 = watch.lap(oracle.distinct());
    if d1.isolated_seen {
        return Err(Error::PromiseViolated("a vertex has no weight-1 neighbor".into()));
    }
    let mut breakdown = vec![("degree1".to_string(), q1)];
    let mut exact = true;
    let wrap = |mut e: Estimate, breakdown: Vec<(String, u64)>, exact: bool, oracle: &CountingOracle| {
        e.breakdown = breakdown;
        e.exact = exact;
        finish(e, oracle)
    };
    if d1.verdict == Verdict::AtLeast {
        return Ok(wrap(est(2.0 * nf, "degree1"), breakdown, exact, oracle));
    }

    // Step 2.
    let s = cfg.ell.min((n - 1) / 2);
    let t = cfg.local_count().min(n);
    let mut rng = rng_for(cfg.seed, "g1_local");
    let picks: Vec<usize> = (0..t).map(|_| rng.gen_range(0..n)).collect();
    let mut results = Vec::with_capacity(t);
    for &v in &picks {
        results.push(local(v, s, oracle)?);
    }
    breakdown.push(("local".into(), watch.lap(oracle.distinct())));
    let successes = results.iter().filter(|r| r.status == Status::Success).count();
    if successes as f64 >= cfg.eps * t as f64 {
        let mut sum = 0.0;
        let mut cache: std::collections::HashMap<Vec<usize>, Half> = Default::default();
        for r in results.iter().filter(|r| r.status == Status::Success) {
            let rc = match cache.get(&r.vertices) {
                Some(&h) => h,
                None => {
                    let (rc, _) = reconfig_cost(&r.vertices, oracle)?;
                    exact &= rc.exact;
                    cache.insert(r.vertices.clone(), rc.value);
                    rc.value
                }
            };
            sum += rc.to_f64() / r.vertices.len() as f64;
        }
        breakdown.push(("reconfig".into(), watch.lap(oracle.distinct())));
        // Scale the sum to the nominal 1/ε² samples when the count was capped.
        let nominal = cfg.local_count() as f64 / t as f64;
        let e = if sum * nominal <= 1.0 / (80.0 * cfg.eps) {
            est((2.0 - cfg.eps / 20.0) * nf, "local_light")
        } else {
            est(2.0 * nf, "local_heavy")
        };
        return Ok(wrap(e, breakdown, exact, oracle));
    }

    // Step 3.
    let runs_nominal = (cfg.bfs_const * nf * nf.log2() / cfg.h as f64).ceil() as usize;
    let roots: Vec<usize> = if runs_nominal >= n {
        (0..n).collect()
    } else {
        let mut rng = rng_for(cfg.seed, "g1_bfs");
        (0..runs_nominal.max(1)).map(|_| rng.gen_range(0..n)).collect()
    };
    let mut support = vec![];
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut on_z = vec![false; n];
    let mut chunk = vec![false; n];
    for &v in &roots {
        let r = bfs(v, cfg.h, cfg.q, cfg.alpha_bfs, oracle)?;
        if r.status != Status::Success {
            continue;
        }
        let on_p: BTreeSet<usize> = r.support_path.iter().copied().collect();
        r.support_path.iter().for_each(|&u| on_z[u] = true);
        r.h_vertices.iter().filter(|u| !on_p.contains(u)).for_each(|&u| chunk[u] = true);
        h_edges.extend(r.h_edges.iter().copied());
        support.push(r.support_path);
    }
    breakdown.push(("bfs".into(), watch.lap(oracle.distinct())));
    let isolated: Vec<usize> = (0..n).filter(|&u| !on_z[u] && !chunk[u]).collect();
    let n_chunk = chunk.iter().filter(|&&c| c).count();

    if isolated.len() as f64 >= 10.0 * cfg.eps_hat * nf {
        // Step 4.
        let opts = MatchingOptions { samples: cfg.matching_samples, budget: None, seed: derive_idx(cfg.seed, "g1", 4) };
        let m = matching_size_estimate(&isolated, cfg.eps_hat / 100.0, oracle, &opts)?;
        exact &= m.exhaustive;
        breakdown.push(("matching".into(), watch.lap(oracle.distinct())));
        let e = if m.value <= cfg.eps_hat * nf {
            est(2.0 * nf, "isolated_small")
        } else {
            est((2.0 - cfg.eps_hat / 200.0) * nf, "isolated_matching")
        };
        return Ok(wrap(e, breakdown, exact, oracle));
    }
    if n_chunk as f64 >= 10.0 * cfg.eps_hat * nf {
        // Step 4'.
        let edges: Vec<(usize, usize)> = h_edges.iter().copied().collect();
        let inside = eblock_edges(n, &edges);
        let mm = exact_max_matching(n, &inside).value;
        breakdown.push(("eblock".into(), watch.lap(oracle.distinct())));
        let e = if mm as f64 <= 2.0 * cfg.eps_hat * nf {
            est(2.0 * nf, "eblock_small")
        } else {
            est((2.0 - cfg.eps_hat) * nf, "eblock_matching")
        };
        return Ok(wrap(e, breakdown, exact, oracle));
    }

    // Step 5.
    let q = extract_induced_paths(&support, n, cfg.eps_hat, cfg.h);
    let e = if q.paths.is_empty() {
        est(2.0 * nf, "paths_empty")
    } else {
        let tour = match proper_tour_cost(&q.paths, oracle) {
            Ok(t) => t,
            Err(Error::TooLarge { .. }) => greedy_proper_tour(&q.paths, oracle)?,
            Err(e) => return Err(e),
        };
        breakdown.push(("proper_tour".into(), watch.lap(oracle.distinct())));
        let cut = (2.0 - 100.0 * cfg.eps_hat) * nf;
        if (tour.cost as f64) <= cut {
            est((2.0 - cfg.eps_hat) * nf, "proper_tour_short")
        } else {
            // An inexact tour above the cut proves nothing either way; 2n is safe.
            est(2.0 * nf, "proper_tour_long")
        }
    };
    Ok(wrap(e, breakdown, exact, oracle))
}
