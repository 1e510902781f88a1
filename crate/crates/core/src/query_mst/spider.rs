use std::collections::{BTreeMap, HashMap};

use super::forest::{CTreeForest, Skeleton};
use crate::cover::{estimate_segment_adv, Restriction};
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Verdict};
use crate::exact::{exact_cover_advantage, CoverOptions};
use crate::oracle::CountingOracle;
use crate::query_g1::{default_matching_samples, greedy_matching_run};
use crate::rng::derive_idx;
use crate::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZetaReport {
    pub value: i64,
    pub exact: bool,
    pub queries: u64,
}

/// `ζ_{i,j}`: the best cover advantage on `F_i ∪ F_j` in the skeleton using
/// pairs with both endpoints among the special vertices of the two trees.
///
/// Queries every such pair once, so at most `(|V*_i| + |V*_j|)²/2` pairs.
pub fn zeta(sk: &Skeleton, i: usize, j: usize, oracle: &mut CountingOracle, opts: CoverOptions) -> Result<ZetaReport> {
    let before = oracle.distinct();
    let mut verts: Vec<usize> = sk.special[i].iter().chain(&sk.special[j]).copied().collect();
    verts.sort_unstable();
    verts.dedup();
    let mut cands = vec![];
    for (x, &a) in verts.iter().enumerate() {
        for &b in &verts[x + 1..] {
            let (u, v) = sk.real_pair(a, b).expect("distinct");
            cands.push((a, b, oracle.query(u, v)?));
        }
    }
    let mut sub: Vec<usize> = sk.tree_edges[i].iter().chain(&sk.tree_edges[j]).copied().collect();
    sub.sort_unstable();
    let r = exact_cover_advantage(&sk.tree, &sub, &cands, Restriction::AnyEndpoint, opts);
    Ok(ZetaReport { value: r.value, exact: r.exact, queries: oracle.distinct() - before })
}

/// `ζ` values computed so far, keyed by ordered tree pair.
#[derive(Clone, Debug, Default)]
pub struct ZetaCache {
    values: HashMap<(usize, usize), i64>,
    pub calls: usize,
    pub exact: bool,
}

impl ZetaCache {
    pub fn new() -> Self {
        ZetaCache { values: HashMap::new(), calls: 0, exact: true }
    }

    pub fn get(&mut self, sk: &Skeleton, i: usize, j: usize, oracle: &mut CountingOracle, opts: CoverOptions) -> Result<i64> {
        let key = (i.min(j), i.max(j));
        if let Some(&z) = self.values.get(&key) {
            return Ok(z);
        }
        let r = zeta(sk, key.0, key.1, oracle, opts)?;
        self.calls += 1;
        self.exact &= r.exact;
        self.values.insert(key, r.value);
        Ok(r.value)
    }
}

/// Whether `(i, j)` is an edge of `L`.
pub fn in_l(z: i64, wi: i64, wj: i64, gap: f64) -> bool {
    z as f64 >= gap * (wi + wj) as f64
}

/// Whether `(i, j)` is an edge of the pruned graph `L'`.
pub fn in_l_prime(z: i64, wi: i64, wj: i64, gap: f64) -> bool {
    let (lo, hi) = (wi.min(wj) as f64, wi.max(wj) as f64);
    in_l(z, wi, wj, gap) && (z as f64) < 2.0 * lo + gap.powi(3) * hi
}

/// `⌈log₂(1/(1−α)²)⌉` for `gap = 1 − α`.
pub fn band_width(gap: f64) -> usize {
    (1.0 / gap.powi(2)).log2().ceil().max(0.0) as usize
}

#[derive(Clone, Debug)]
pub struct MmOptions {
    /// Vertex samples per band graph; `None` uses the matching default.
    pub samples: Option<usize>,
    pub seed: u64,
    pub cover: CoverOptions,
}

#[derive(Clone, Debug)]
pub struct WeightedMmEstimate {
    /// `X = max_r Y_r / 2`.
    pub value: f64,
    /// `Y_0 ..= Y_ℓ̂`.
    pub y: Vec<f64>,
    pub band: usize,
    pub zeta_calls: usize,
    pub exact: bool,
    pub queries: u64,
}

/// Estimates the maximum-weight matching of `L` from below.
///
/// Trees are bucketed by `t = ⌊log₂ w'_i⌋`. For each bucket pair at distance
/// `r ≤ ℓ̂` a greedy matching size `X_{t,t+r}` of `L'` restricted to the two
/// buckets is estimated, with pair tests answered by `ζ`. Then
/// `Y_r = Σ_t X_{t,t+r}·2^t` and `X = max_r Y_r/2`.
pub fn weighted_mm_estimate(
    sk: &Skeleton,
    gap: f64,
    eps_hat: f64,
    oracle: &mut CountingOracle,
    cache: &mut ZetaCache,
    opts: &MmOptions,
) -> Result<WeightedMmEstimate> {
    let before = oracle.distinct();
    let k = sk.weights.len();
    let band = band_width(gap);
    let mut buckets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..k {
        let w = sk.weights[i].max(1);
        buckets.entry(63 - w.leading_zeros() as i64).or_default().push(i);
    }
    let mut y = vec![0.0; band + 1];
    for (r, yr) in y.iter_mut().enumerate() {
        for (&t, vt) in &buckets {
            let mut set = vt.clone();
            if r > 0 {
                match buckets.get(&(t + r as i64)) {
                    Some(u) => set.extend_from_slice(u),
                    None => continue,
                }
            }
            let want = opts.samples.unwrap_or_else(|| default_matching_samples(set.len(), eps_hat));
            let seed = derive_idx(opts.seed, "mm_band", (t as u64) << 8 | r as u64);
            let o = &mut *oracle;
            let c = &mut *cache;
            let run = greedy_matching_run(set.len(), want, seed, |a, b| {
                let (i, j) = (set[a], set[b]);
                let z = c.get(sk, i, j, o, opts.cover)?;
                Ok(in_l_prime(z, sk.weights[i], sk.weights[j], gap))
            })?;
            *yr += run.value(eps_hat) * 2f64.powi(t as i32);
        }
    }
    let value = y.iter().fold(0.0f64, |m, &v| m.max(v / 2.0));
    Ok(WeightedMmEstimate {
        value,
        y,
        band,
        zeta_calls: cache.calls,
        exact: cache.exact,
        queries: oracle.distinct() - before,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Walk {
    /// `MWC(w') ≤ (2 − ε⁴/(2·log₂(1/ε)))·MST(w')`.
    Short,
    /// `MWC(w') ≥ (2 − c₀·c·ε)·MST(w')`.
    Long,
}

#[derive(Clone, Debug)]
pub struct SpiderParams {
    pub eps: f64,
    pub c: usize,
    pub c0: f64,
    /// `1 − α` for the graph `L`; estimators pass `α = 1 − ε`.
    pub gap: f64,
    pub eps_hat: f64,
    /// Segment samples for the special-advantage test; `None` uses its default.
    pub adv_samples: Option<usize>,
    pub mm: MmOptions,
}

#[derive(Clone, Debug)]
pub struct SpiderReport {
    pub walk: Walk,
    /// 1 when the special-advantage test decided, 2 otherwise.
    pub stage: u8,
    pub adv_estimate: f64,
    pub x: Option<f64>,
    pub mst_prime: i64,
    pub exact: bool,
    pub queries: u64,
}

/// Decides between a short and a long minimum special walk on the skeleton.
///
/// First tests `Σ adv*(F_i) ≥ 2ε⁴·MST(w')`; a yes means a short walk. Otherwise
/// a short walk is reported iff the matching estimate `X` of `L` reaches
/// `ε³/log₂(1/ε)·MST(w')`.
pub fn spider_walk_report(
    tree: &RootedTree,
    forest: &CTreeForest,
    p: &SpiderParams,
    oracle: &mut CountingOracle,
) -> Result<SpiderReport> {
    let before = oracle.distinct();
    let sk = Skeleton::new(tree, forest)?;
    let mst_prime = sk.mst();
    let adv = estimate_segment_adv(
        tree,
        &forest.edge_sets(),
        2.0 * p.eps.powi(4),
        mst_prime,
        Restriction::SpecialEndpoint,
        oracle,
        p.adv_samples,
        derive_idx(p.mm.seed, "spider_adv", 0),
        p.mm.cover,
    )?;
    if adv.verdict == Verdict::AtLeast {
        return Ok(SpiderReport {
            walk: Walk::Short,
            stage: 1,
            adv_estimate: adv.estimate,
            x: None,
            mst_prime,
            exact: adv.exact,
            queries: oracle.distinct() - before,
        });
    }
    let mut cache = ZetaCache::new();
    let mm = weighted_mm_estimate(&sk, p.gap, p.eps_hat, oracle, &mut cache, &p.mm)?;
    let cut = p.eps.powi(3) / (1.0 / p.eps).log2() * mst_prime as f64;
    Ok(SpiderReport {
        walk: if mm.value >= cut { Walk::Short } else { Walk::Long },
        stage: 2,
        adv_estimate: adv.estimate,
        x: Some(mm.value),
        mst_prime,
        exact: adv.exact && mm.exact,
        queries: oracle.distinct() - before,
    })
}

/// TSP estimate from a heavy independent `c`-tree set:
/// `w(𝓕) ≥ (½ + ε)·MST` is required.
///
/// With `ε₁ = ε/4` and `ε₂ = ε/(4·c·c₀)`: returns `(2 − ε₁/2)·MST` when
/// `Σ adv*(F) ≥ ε₁·MST`, else `(2 − ε₂⁴/(4·log₂(1/ε₂)))·MST` on a short
/// spider walk at `ε₂`, else `2·MST`.
pub fn reorganize_estimate(
    tree: &RootedTree,
    forest: &CTreeForest,
    eps: f64,
    p: &SpiderParams,
    oracle: &mut CountingOracle,
) -> Result<Estimate> {
    let mst = tree.total_weight();
    let msf = mst as f64;
    if (forest.weight() as f64) < (0.5 + eps) * msf {
        return Err(Error::PreconditionUnmet(format!(
            "forest weight {} is below (1/2 + eps)·MST = {}",
            forest.weight(),
            (0.5 + eps) * msf
        )));
    }
    let before = oracle.distinct();
    let eps1 = eps / 4.0;
    let eps2 = eps / (4.0 * p.c as f64 * p.c0);
    let adv = estimate_segment_adv(
        tree,
        &forest.edge_sets(),
        eps1,
        mst,
        Restriction::SpecialEndpoint,
        oracle,
        p.adv_samples,
        derive_idx(p.mm.seed, "reorganize_adv", 0),
        p.mm.cover,
    )?;
    let q_adv = oracle.distinct() - before;
    let mut e = if adv.verdict == Verdict::AtLeast {
        let mut e = Estimate::new((2.0 - eps1 / 2.0) * msf, "reorganize_adv");
        e.exact = adv.exact;
        e.charge("reorganize_adv", q_adv);
        e
    } else {
        let sp = SpiderParams { eps: eps2, gap: eps2, ..p.clone() };
        let r = spider_walk_report(tree, forest, &sp, oracle)?;
        let mut e = match r.walk {
            Walk::Short => {
                Estimate::new((2.0 - eps2.powi(4) / (4.0 * (1.0 / eps2).log2())) * msf, "reorganize_short")
            }
            Walk::Long => Estimate::new(2.0 * msf, "reorganize_long"),
        };
        e.exact = adv.exact && r.exact;
        e.charge("reorganize_adv", q_adv);
        e.charge("spider", r.queries);
        e
    };
    e.distinct_queries = oracle.distinct();
    e.raw_queries = oracle.raw();
    Ok(e)
}
