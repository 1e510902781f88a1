//! TSP estimation in the distance-query model when a minimum spanning tree
//! is given.
//!
//! [`estimate_tsp_with_mst`] peels the tree into a top part `T'` and maximal
//! light subtrees, then tests in turn the special cover advantage of `T'`, an
//! independent set of `c`-trees below the peel (through skeleton walks and
//! [`reorganize_estimate`]), the cover advantage of the segments, and the
//! special cover advantage of `T'` grown by a maximum `k`-extension.

mod forest;
mod light;
mod spider;

use std::fmt;
use std::str::FromStr;

use crate::cover::{advantage, estimate_segment_adv, Restriction};
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Stopwatch, Verdict};
use crate::exact::CoverOptions;
use crate::oracle::CountingOracle;
use crate::rng::derive;
use crate::tree::RootedTree;

pub use forest::{build_ctree_forest, CTree, CTreeForest, Skeleton};
pub use light::{
    heaviest_c_subtrees, light_peel, max_k_extension, partition_segments, Extension, LightPeel, SegmentKind,
    SegmentSet,
};
pub use spider::{
    band_width, in_l, in_l_prime, reorganize_estimate, spider_walk_report, weighted_mm_estimate, zeta, MmOptions,
    SpiderParams, SpiderReport, Walk, WeightedMmEstimate, ZetaCache, ZetaReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MstProfile {
    /// Constants of the asymptotic analysis.
    Paper,
    /// Small constants for exact cross-checks.
    Desk,
    /// Desk constants with capped sample counts, for growth measurements.
    Scaling,
}

impl FromStr for MstProfile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(MstProfile::Paper),
            "desk" => Ok(MstProfile::Desk),
            "scaling" => Ok(MstProfile::Scaling),
            _ => Err(Error::BadParameters(format!("unknown profile {s:?}"))),
        }
    }
}

impl fmt::Display for MstProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MstProfile::Paper => "paper",
            MstProfile::Desk => "desk",
            MstProfile::Scaling => "scaling",
        })
    }
}

#[derive(Clone, Debug)]
pub struct MstQueryConfig {
    pub profile: MstProfile,
    pub ell: usize,
    pub eps: f64,
    /// Leaf bound of the `c`-trees.
    pub c: usize,
    pub c0: f64,
    /// `1 − α` for the matching graph in the step-2 spider test.
    pub alpha_gap: f64,
    /// Accuracy of each unweighted band estimate.
    pub eps_hat_match: f64,
    /// Number of nice paths in the extension.
    pub k: usize,
    /// Samples for every segment-advantage test; `None` uses the default.
    pub segment_samples: Option<usize>,
    /// Vertex samples per band graph; `None` uses the default.
    pub matching_samples: Option<usize>,
    pub cover: CoverOptions,
    pub seed: u64,
}

fn sqrt_ceil(n: usize) -> usize {
    ((n as f64).sqrt().ceil() as usize).max(1)
}

fn default_eps_hat(n: usize) -> f64 {
    (n.max(3) as f64).log2().powi(9).recip().min(0.5)
}

impl MstQueryConfig {
    pub fn paper(n: usize, seed: u64) -> Self {
        let eps = 2f64.powi(-100) / 100.0;
        MstQueryConfig {
            profile: MstProfile::Paper,
            ell: sqrt_ceil(n),
            eps,
            c: 800,
            c0: 100.0,
            alpha_gap: eps,
            eps_hat_match: default_eps_hat(n),
            k: (100.0 * (n as f64).sqrt()).ceil() as usize,
            segment_samples: None,
            matching_samples: None,
            cover: CoverOptions::default(),
            seed,
        }
    }

    pub fn desk(n: usize, seed: u64) -> Self {
        let eps = 0.02;
        MstQueryConfig {
            profile: MstProfile::Desk,
            ell: sqrt_ceil(n),
            eps,
            c: 4,
            c0: 100.0,
            alpha_gap: eps,
            eps_hat_match: default_eps_hat(n),
            k: (4.0 * (n as f64).sqrt()).ceil() as usize,
            segment_samples: None,
            matching_samples: None,
            cover: CoverOptions::default(),
            seed,
        }
    }

    pub fn scaling(n: usize, seed: u64) -> Self {
        MstQueryConfig {
            profile: MstProfile::Scaling,
            segment_samples: Some(8),
            matching_samples: Some(16),
            ..Self::desk(n, seed)
        }
    }

    pub fn for_profile(profile: MstProfile, n: usize, seed: u64) -> Self {
        match profile {
            MstProfile::Paper => Self::paper(n, seed),
            MstProfile::Desk => Self::desk(n, seed),
            MstProfile::Scaling => Self::scaling(n, seed),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64| x > 0.0 && x < 1.0;
        if self.ell == 0 || self.c == 0 || !unit(self.eps) || !unit(self.alpha_gap) || !unit(self.eps_hat_match) {
            return Err(Error::BadParameters(format!("out-of-range MST-query parameters: {self:?}")));
        }
        if !(self.c0 > 0.0) {
            return Err(Error::BadParameters("c0 must be positive".into()));
        }
        Ok(())
    }

    pub fn spider_params(&self, label: &str) -> SpiderParams {
        SpiderParams {
            eps: self.eps,
            c: self.c,
            c0: self.c0,
            gap: self.alpha_gap,
            eps_hat: self.eps_hat_match,
            adv_samples: self.segment_samples,
            mm: MmOptions { samples: self.matching_samples, seed: derive(self.seed, label), cover: self.cover },
        }
    }
}

/// Maximum edge weight on tree paths via binary lifting.
struct PathMax {
    up: Vec<Vec<usize>>,
    mx: Vec<Vec<i64>>,
    depth: Vec<usize>,
}

impl PathMax {
    fn new(tree: &RootedTree) -> Self {
        let n = tree.n();
        let levels = (usize::BITS - n.max(1).leading_zeros()) as usize + 1;
        let mut up = vec![(0..n).map(|v| tree.parent(v).unwrap_or(v)).collect::<Vec<_>>()];
        let mut mx = vec![(0..n).map(|v| if tree.parent(v).is_some() { tree.weight(v) } else { 0 }).collect::<Vec<_>>()];
        for j in 1..levels {
            let (pu, pm) = (&up[j - 1], &mx[j - 1]);
            let u: Vec<usize> = (0..n).map(|v| pu[pu[v]]).collect();
            let m: Vec<i64> = (0..n).map(|v| pm[v].max(pm[pu[v]])).collect();
            up.push(u);
            mx.push(m);
        }
        PathMax { up, mx, depth: (0..n).map(|v| tree.depth(v)).collect() }
    }

    fn query(&self, mut a: usize, mut b: usize) -> i64 {
        let mut best = 0;
        if self.depth[a] < self.depth[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let mut diff = self.depth[a] - self.depth[b];
        let mut j = 0;
        while diff > 0 {
            if diff & 1 == 1 {
                best = best.max(self.mx[j][a]);
                a = self.up[j][a];
            }
            diff >>= 1;
            j += 1;
        }
        if a == b {
            return best;
        }
        for j in (0..self.up.len()).rev() {
            if self.up[j][a] != self.up[j][b] {
                best = best.max(self.mx[j][a]).max(self.mx[j][b]);
                a = self.up[j][a];
                b = self.up[j][b];
            }
        }
        best.max(self.mx[0][a]).max(self.mx[0][b])
    }
}

/// Checks every charged pair against the cycle property of `tree`.
pub fn check_mst_promise(tree: &RootedTree, oracle: &CountingOracle) -> Result<()> {
    let pm = PathMax::new(tree);
    for (a, b) in oracle.answered_pairs() {
        let w = oracle.known(a, b).expect("answered");
        if w < pm.query(a, b) {
            return Err(Error::NotAnMst(a, b));
        }
    }
    Ok(())
}

/// Estimates the TSP cost given `tree`, promised to be an MST of the metric
/// behind `oracle`.
///
/// Returns the value with the branch that produced it:
/// - `step1_adv`: `adv*(T') ≥ (ε/10)·MST`, value `(2 − ε/20)·MST`;
/// - `step1_top`: `w(T') ≥ (½ + ε)·MST`, value `2·MST`;
/// - `reorganize_*`: the `c`-tree forest weighs at least `(½ + ε)·MST`;
/// - `step2_spider`: a short spider walk, value `(2 − ε⁵/(2·log₂(1/ε)))·MST`;
/// - `step3_segments`: `Σ adv(S) ≥ (ε/1000)·MST`, value `(2 − ε/2000)·MST`;
/// - `step4_adv` and `step4_top`: the tests of step 1 on `T' ∪ F`;
/// - `step5`: `2·MST`.
///
/// Every charged pair is checked against the tree before returning.
pub fn estimate_tsp_with_mst(oracle: &mut CountingOracle, tree: &RootedTree, cfg: &MstQueryConfig) -> Result<Estimate> {
    let n = oracle.n();
    if tree.n() != n {
        return Err(Error::BadParameters(format!("tree has {} vertices, metric has {n}", tree.n())));
    }
    cfg.validate()?;
    let mst = tree.total_weight();
    let msf = mst as f64;
    let eps = cfg.eps;
    let mut watch = Stopwatch::start(oracle.distinct());
    let mut breakdown: Vec<(String, u64)> = vec![];
    let mut exact = true;
    let finish = |mut e: Estimate, breakdown: Vec<(String, u64)>, exact: bool, oracle: &CountingOracle| {
        for (k, q) in breakdown {
            e.charge(&k, q);
        }
        e.exact &= exact;
        e.distinct_queries = oracle.distinct();
        e.raw_queries = oracle.raw();
        check_mst_promise(tree, oracle).map(|_| e)
    };

    // Step 1.
    let peel = light_peel(tree, cfg.ell);
    let a1 = advantage(tree, &peel.top_edges, Restriction::SpecialEndpoint, oracle, cfg.cover)?;
    breakdown.push(("step1".into(), watch.lap(oracle.distinct())));
    exact &= a1.exact;
    if a1.value as f64 >= eps / 10.0 * msf && a1.value > 0 {
        return finish(Estimate::new((2.0 - eps / 20.0) * msf, "step1_adv"), breakdown, exact, oracle);
    }
    let w_top = tree.edge_set_weight(&peel.top_edges) as f64;
    if w_top >= (0.5 + eps) * msf {
        return finish(Estimate::new(2.0 * msf, "step1_top"), breakdown, exact, oracle);
    }

    // Step 2.
    let forest = build_ctree_forest(tree, &peel, cfg.c);
    let wf = forest.weight() as f64;
    if wf >= (0.5 + eps) * msf {
        let e = reorganize_estimate(tree, &forest, eps, &cfg.spider_params("reorganize"), oracle)?;
        breakdown.extend(e.breakdown.iter().cloned());
        return finish(Estimate { breakdown: vec![], ..e }, breakdown, exact, oracle);
    }
    if wf > eps * msf {
        let r = spider_walk_report(tree, &forest, &cfg.spider_params("spider"), oracle)?;
        breakdown.push(("spider".into(), watch.lap(oracle.distinct())));
        exact &= r.exact;
        if r.walk == Walk::Short {
            let v = (2.0 - eps.powi(5) / (2.0 * (1.0 / eps).log2())) * msf;
            return finish(Estimate::new(v, "step2_spider"), breakdown, exact, oracle);
        }
    }

    // Step 3.
    let segs = partition_segments(tree, &peel);
    let s3 = estimate_segment_adv(
        tree,
        &segs.segments,
        eps / 1000.0,
        mst,
        Restriction::AnyEndpoint,
        oracle,
        cfg.segment_samples,
        derive(cfg.seed, "step3"),
        cfg.cover,
    )?;
    breakdown.push(("step3".into(), watch.lap(oracle.distinct())));
    exact &= s3.exact;
    if s3.verdict == Verdict::AtLeast {
        return finish(Estimate::new((2.0 - eps / 2000.0) * msf, "step3_segments"), breakdown, exact, oracle);
    }

    // Step 4.
    let ext = max_k_extension(tree, &peel, cfg.k);
    let mut grown = peel.top_edges.clone();
    grown.extend_from_slice(&ext.edges);
    grown.sort_unstable();
    let a4 = advantage(tree, &grown, Restriction::SpecialEndpoint, oracle, cfg.cover)?;
    breakdown.push(("step4".into(), watch.lap(oracle.distinct())));
    exact &= a4.exact;
    if a4.value as f64 >= eps / 10.0 * msf && a4.value > 0 {
        return finish(Estimate::new((2.0 - eps / 20.0) * msf, "step4_adv"), breakdown, exact, oracle);
    }
    if tree.edge_set_weight(&grown) as f64 > (0.5 + eps) * msf {
        return finish(Estimate::new(2.0 * msf, "step4_top"), breakdown, exact, oracle);
    }

    // Step 5.
    finish(Estimate::new(2.0 * msf, "step5"), breakdown, exact, oracle)
}
