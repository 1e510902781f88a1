//! Cover sets, cover advantage, and the doubled-tree-to-tour machinery.
//!
//! For a non-tree pair `e = (u, v)` the cover `cov(e)` is the set of tree
//! edges on the tree path between `u` and `v`. The cover advantage of a pair
//! set `E'` on a subtree `T'` is `w(cov(E') ∩ E(T')) − w(E')`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::exact::{exact_cover_advantage, CoverOptions};
use crate::metric::Metric;
use crate::oracle::CountingOracle;
use crate::rng::{rng_for, Rng};
use crate::tree::RootedTree;

pub use crate::exact::Restriction;

/// Tree edges covered by the pair `(u, v)`.
pub fn cov(tree: &RootedTree, u: usize, v: usize) -> Vec<usize> {
    tree.path_edges(u, v)
}

/// Union of the covers of `pairs`, restricted to the edge set `sub`.
pub fn cov_set(tree: &RootedTree, pairs: &[(usize, usize)], sub: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; tree.n()];
    sub.iter().for_each(|&e| inside[e] = true);
    let mut hit = vec![false; tree.n()];
    for &(u, v) in pairs {
        for e in tree.path_edges(u, v) {
            hit[e] = inside[e];
        }
    }
    (0..tree.n()).filter(|&e| hit[e]).collect()
}

/// `w(cov(E', T')) − w(E')` computed from scratch.
pub fn adv_of(tree: &RootedTree, sub: &[usize], pairs: &[(usize, usize, i64)]) -> i64 {
    let uv: Vec<(usize, usize)> = pairs.iter().map(|&(u, v, _)| (u, v)).collect();
    tree.edge_set_weight(&cov_set(tree, &uv, sub)) - pairs.iter().map(|p| p.2).sum::<i64>()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdvantageReport {
    /// Exact optimum when `exact`, otherwise a lower bound.
    pub value: i64,
    pub witness: Vec<(usize, usize, i64)>,
    pub restriction: Restriction,
    pub exact: bool,
    /// Distinct oracle queries newly charged by this call.
    pub queries: u64,
}

/// Anchor vertices of `sub` under a restriction.
pub fn anchors(tree: &RootedTree, sub: &[usize], restriction: Restriction) -> Vec<usize> {
    match restriction {
        Restriction::AnyEndpoint => tree.edge_set_vertices(sub),
        Restriction::SpecialEndpoint => tree.special_vertices(sub),
    }
}

/// Optimal (special) cover advantage of the subtree `sub`.
///
/// Queries every anchor against every vertex, so at most
/// `|anchors| · n` distinct pairs are charged.
pub fn advantage(
    tree: &RootedTree,
    sub: &[usize],
    restriction: Restriction,
    oracle: &mut CountingOracle<'_>,
    opts: CoverOptions,
) -> Result<AdvantageReport> {
    let before = oracle.distinct();
    let n = tree.n();
    let anchor = anchors(tree, sub, restriction);
    let mut is_anchor = vec![false; n];
    anchor.iter().for_each(|&a| is_anchor[a] = true);
    let mut cands = Vec::new();
    for &a in &anchor {
        for x in 0..n {
            // Anchor-anchor pairs are listed once.
            if x == a || (is_anchor[x] && x < a) {
                continue;
            }
            let w = oracle.query(a, x)?;
            cands.push((a.min(x), a.max(x), w));
        }
    }
    let r = exact_cover_advantage(tree, sub, &cands, restriction, opts);
    Ok(AdvantageReport {
        value: r.value,
        witness: r.witness,
        restriction,
        exact: r.exact,
        queries: oracle.distinct() - before,
    })
}

/// `H_{T,E'}`: tree edges with multiplicity 1 or 2 plus the pairs `E'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianMultigraph {
    pub n: usize,
    /// Multiplicity per tree edge name; 0 at the root.
    pub tree_mult: Vec<u8>,
    pub tree_edges: Vec<(usize, usize, i64)>,
    pub extra: Vec<(usize, usize, i64)>,
}

impl EulerianMultigraph {
    /// All edges, repeated by multiplicity.
    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for &(c, p, w) in &self.tree_edges {
            for _ in 0..self.tree_mult[c] {
                out.push((c, p, w));
            }
        }
        out.extend_from_slice(&self.extra);
        out
    }

    pub fn weight(&self) -> i64 {
        self.edges().iter().map(|e| e.2).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (u, v, _) in self.edges() {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.n);
        let mut comps = self.n;
        for (u, v, _) in self.edges() {
            if uf.union(u, v) {
                comps -= 1;
            }
        }
        comps <= 1
    }

    pub fn is_eulerian(&self) -> bool {
        self.degrees().iter().all(|d| d % 2 == 0) && self.is_connected()
    }
}

/// Builds `H_{T,E'}`: a tree edge keeps one copy when an odd number of pairs
/// in `E'` cover it, two copies otherwise.
pub fn build_eulerian(tree: &RootedTree, extra: &[(usize, usize, i64)]) -> EulerianMultigraph {
    let n = tree.n();
    let mut parity = vec![0u8; n];
    for &(u, v, _) in extra {
        for e in tree.path_edges(u, v) {
            parity[e] ^= 1;
        }
    }
    let tree_edges = tree.edge_list();
    let mut tree_mult = vec![0u8; n];
    for &(c, _, _) in &tree_edges {
        tree_mult[c] = 2 - parity[c];
    }
    EulerianMultigraph { n, tree_mult, tree_edges, extra: extra.to_vec() }
}

/// `w(H_{T,E'})` without materializing the multigraph.
pub fn h_weight(tree: &RootedTree, extra: &[(usize, usize, i64)]) -> i64 {
    let mut parity = vec![0u8; tree.n()];
    for &(u, v, _) in extra {
        for e in tree.path_edges(u, v) {
            parity[e] ^= 1;
        }
    }
    let t: i64 = tree.all_edges().iter().map(|&e| (2 - parity[e] as i64) * tree.weight(e)).sum();
    t + extra.iter().map(|p| p.2).sum::<i64>()
}

/// Euler circuit of `h` from vertex 0, shortcut to first visits.
pub fn eulerian_to_tour(h: &EulerianMultigraph) -> Result<Vec<usize>> {
    let n = h.n;
    if n == 0 {
        return Ok(vec![]);
    }
    let edges = h.edges();
    let deg = h.degrees();
    if let Some(v) = deg.iter().position(|d| d % 2 == 1) {
        return Err(Error::NotEulerian(format!("vertex {v} has odd degree {}", deg[v])));
    }
    if !h.is_connected() {
        return Err(Error::NotEulerian("multigraph is disconnected".into()));
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        let mut moved = false;
        while next[v] < adj[v].len() {
            let (y, i) = adj[v][next[v]];
            next[v] += 1;
            if !used[i] {
                used[i] = true;
                stack.push(y);
                moved = true;
                break;
            }
        }
        if !moved {
            circuit.push(v);
            stack.pop();
        }
    }
    let mut seen = vec![false; n];
    let mut tour = Vec::with_capacity(n);
    for v in circuit.into_iter().rev() {
        if !seen[v] {
            seen[v] = true;
            tour.push(v);
        }
    }
    Ok(tour)
}

pub fn tour_cost(metric: &Metric, tour: &[usize]) -> i64 {
    crate::gen::tour_cost(metric, tour)
}

#[derive(Clone, Debug)]
pub struct TourChoice {
    pub tour: Vec<usize>,
    pub cost: i64,
    /// Weight of the Eulerian multigraph the tour was cut from.
    pub graph_weight: i64,
    pub subset: Vec<(usize, usize, i64)>,
    /// All `2^|E*|` subsets were tried.
    pub exhaustive: bool,
}

/// Largest `|E*|` handled by full subset enumeration.
pub const EXHAUSTIVE_SUBSETS: usize = 12;

/// Cheapest shortcut tour over subsets `E' ⊆ E*`.
///
/// Enumerates all subsets when `|E*| ≤ 12`; otherwise tries `∅`, `E*` and
/// `k` random half-density subsets.
pub fn tour_from_advantage(
    tree: &RootedTree,
    e_star: &[(usize, usize, i64)],
    metric: &Metric,
    k: usize,
    seed: u64,
) -> Result<TourChoice> {
    let m = e_star.len();
    let exhaustive = m <= EXHAUSTIVE_SUBSETS;
    let mut subsets: Vec<Vec<(usize, usize, i64)>> = Vec::new();
    if exhaustive {
        for mask in 0u32..1 << m {
            subsets.push((0..m).filter(|i| mask >> i & 1 == 1).map(|i| e_star[i]).collect());
        }
    } else {
        let mut rng: Rng = rng_for(seed, "tour_from_advantage");
        subsets.push(vec![]);
        subsets.push(e_star.to_vec());
        for _ in 0..k {
            subsets.push(e_star.iter().copied().filter(|_| rng.gen_bool(0.5)).collect());
        }
    }
    let mut best: Option<TourChoice> = None;
    for s in subsets {
        let h = build_eulerian(tree, &s);
        let tour = eulerian_to_tour(&h)?;
        let cost = tour_cost(metric, &tour);
        if best.as_ref().is_none_or(|b| cost < b.cost) {
            best = Some(TourChoice { tour, cost, graph_weight: h.weight(), subset: s, exhaustive });
        }
    }
    Ok(best.expect("at least the empty subset"))
}

/// Split of a tour's edges into two halves that each cover a subtree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TourSplit {
    pub e0: Vec<(usize, usize)>,
    pub e1: Vec<(usize, usize)>,
    /// Shortcut pairs between consecutive odd vertices, alternating.
    pub f0: Vec<(usize, usize)>,
    pub f1: Vec<(usize, usize)>,
}

/// Splits the cyclic `tour` at the odd-degree vertices of the subtree `sub`,
/// alternating the stretches between consecutive odd vertices.
pub fn tour_split(tree: &RootedTree, sub: &[usize], tour: &[usize]) -> Result<TourSplit> {
    let deg = tree.edge_set_degrees(sub);
    let mut on_tour = vec![false; tree.n()];
    tour.iter().for_each(|&v| on_tour[v] = true);
    if let Some(&v) = tree.edge_set_vertices(sub).iter().find(|&&v| !on_tour[v]) {
        return Err(Error::BadParameters(format!("tour misses subtree vertex {v}")));
    }
    let odd: Vec<usize> = (0..tour.len()).filter(|&i| deg[tour[i]] % 2 == 1).collect();
    let len = tour.len();
    let mut out = TourSplit { e0: vec![], e1: vec![], f0: vec![], f1: vec![] };
    if odd.is_empty() {
        out.e0 = (0..len).map(|i| (tour[i], tour[(i + 1) % len])).collect();
        return Ok(out);
    }
    let k2 = odd.len();
    for (j, &start) in odd.iter().enumerate() {
        let stop = odd[(j + 1) % k2];
        // Stretch `j` runs from odd[j] to odd[j+1] cyclically; its index
        // among e_1..e_2k is j+1.
        let (e, f) = if (j + 1) % 2 == 0 { (&mut out.e0, &mut out.f0) } else { (&mut out.e1, &mut out.f1) };
        let mut i = start;
        loop {
            let nx = (i + 1) % len;
            e.push((tour[i], tour[nx]));
            i = nx;
            if i == stop {
                break;
            }
        }
        f.push((tour[start], tour[stop]));
    }
    Ok(out)
}

/// Verdict of a threshold estimate on a summed advantage.
pub type AdvVerdict = crate::estimate::Verdict;

#[derive(Clone, Debug)]
pub struct SegmentAdvReport {
    pub verdict: AdvVerdict,
    /// Estimated `Σ adv` over the segments.
    pub estimate: f64,
    pub samples: usize,
    /// Every advantage evaluated was exact.
    pub exact: bool,
    /// No sampling: the sum was computed over all segments.
    pub full: bool,
    pub queries: u64,
}

/// Default sample count `⌈2 ln(2n) / ε²⌉`.
pub fn default_segment_samples(n: usize, eps: f64) -> usize {
    (2.0 * (2.0 * n as f64).ln() / (eps * eps)).ceil() as usize
}

/// Decides `Σ adv(T') ≥ ε·reference` against `≤ 2ε·reference` over
/// edge-disjoint `segments`, by weight-proportional sampling of
/// `adv(T')/w(T')`. The cut-off is `1.5ε`.
///
/// With `samples = None` the default count is used. When the count reaches
/// the number of segments every segment is evaluated instead.
#[allow(clippy::too_many_arguments)]
pub fn estimate_segment_adv(
    tree: &RootedTree,
    segments: &[Vec<usize>],
    eps: f64,
    reference: i64,
    restriction: Restriction,
    oracle: &mut CountingOracle<'_>,
    samples: Option<usize>,
    seed: u64,
    opts: CoverOptions,
) -> Result<SegmentAdvReport> {
    let before = oracle.distinct();
    let live: Vec<usize> = (0..segments.len()).filter(|&i| tree.edge_set_weight(&segments[i]) > 0).collect();
    let weights: Vec<i64> = live.iter().map(|&i| tree.edge_set_weight(&segments[i])).collect();
    let total: i64 = weights.iter().sum();
    let cut = 1.5 * eps * reference as f64;
    let t = samples.unwrap_or_else(|| default_segment_samples(tree.n(), eps));
    let mut exact = true;
    let mut cache: HashMap<usize, i64> = HashMap::new();
    let mut adv = |i: usize, oracle: &mut CountingOracle<'_>, exact: &mut bool| -> Result<i64> {
        if let Some(&a) = cache.get(&i) {
            return Ok(a);
        }
        let r = advantage(tree, &segments[i], restriction, oracle, opts)?;
        *exact &= r.exact;
        cache.insert(i, r.value);
        Ok(r.value)
    };

    let (estimate, full, drawn) = if live.is_empty() {
        (0.0, true, 0)
    } else if t >= live.len() {
        let mut s = 0i64;
        for &i in &live {
            s += adv(i, oracle, &mut exact)?;
        }
        (s as f64, true, live.len())
    } else {
        let mut rng: Rng = rng_for(seed, "segment_adv");
        let idx: Vec<usize> = (0..live.len()).collect();
        let mut acc = 0.0;
        for _ in 0..t {
            let &j = idx.choose_weighted(&mut rng, |&j| weights[j]).expect("positive weights");
            acc += adv(live[j], oracle, &mut exact)? as f64 / weights[j] as f64;
        }
        (acc / t as f64 * total as f64, false, t)
    };
    let verdict = if estimate >= cut { AdvVerdict::AtLeast } else { AdvVerdict::AtMost };
    Ok(SegmentAdvReport { verdict, estimate, samples: drawn, exact, full, queries: oracle.distinct() - before })
}
