//! Exact-oracle checks of the structural inequalities the estimators rely on.
//!
//! Each suite draws one small instance per seed, evaluates both sides of an
//! inequality with exact solvers and reports violations with a reproducer.

use rand::Rng as _;

use crate::cover::{advantage, cov_set, h_weight, tour_split, Restriction};
use crate::error::Result;
use crate::exact::{exact_max_matching, exact_max_weight_matching, exact_mst, exact_mwc, exact_tsp, mst_tree, CoverOptions};
use crate::gen::{gen_random_metric, random_connected_graph, random_weighted_tree, tree_with_chords, Style};
use crate::metric::{metric_from_graph, Metric};
use crate::oracle::CountingOracle;
use crate::query_mst::{build_ctree_forest, in_l, light_peel, zeta, CTreeForest, Skeleton};
use crate::rng::{derive, rng_for, Rng};
use crate::stream::{
    run_onepass_mst_estimate, run_twopass_tsp, sample_cover_bound, Branch, MstEstimate, Order, StreamSession, TwoPassResult,
    ALPHA_TWOPASS, BETA_TWOPASS,
};
use crate::tree::RootedTree;

/// A deliberate bug for checking that the suites catch it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Negates every cover advantage the suites compute.
    FlipAdvSign,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub seeds: std::ops::Range<u64>,
    pub fault: Option<Fault>,
    pub cover: CoverOptions,
}

impl VerifyConfig {
    pub fn fast() -> Self {
        VerifyConfig { max_n: 10, seeds: 0..100, fault: None, cover: CoverOptions { cap: 40, dominance_limit: 4096 } }
    }

    pub fn full() -> Self {
        VerifyConfig { max_n: 14, seeds: 0..300, ..Self::fast() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The instance does not meet the suite's preconditions.
    Skip(String),
    Fail(String),
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub suite: &'static str,
    pub seed: u64,
    pub detail: String,
}

impl Failure {
    pub fn reproducer(&self, max_n: usize) -> String {
        format!("subtsp verify --suite '{}' --seed {} --max-n {max_n}", self.suite, self.seed)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

type Check = fn(u64, &VerifyConfig) -> Result<Outcome>;

/// Suite names, in run order.
pub const SUITES: &[(&str, Check)] = &[
    ("max advantage", max_advantage),
    ("single_edge_adv", single_edge_adv),
    ("cover_advantage lower bound", cover_lower_bound),
    ("cover_advantage", cover_upper_bound),
    ("tour edge into two cover", tour_two_cover),
    ("subset expectation", subset_expectation),
    ("walk cost upper bound", walk_upper),
    ("walk cost lower bound", walk_lower),
    ("tsp bounds by walkcost", tsp_by_walk),
    ("skeleton mst", skeleton_mst),
    ("naive bounds", naive_bounds),
    ("G_1_matching_TSP_lower_bound", g1_matching_bound),
    ("degree_1 vertices", degree_one_bound),
    ("matching_in_tree", matching_in_tree),
    ("2-pass tsp", two_pass),
    ("mst simple lower bound", mst_simple_lower_bound),
    ("sandwich components", sandwich_components),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Option<SuiteReport> {
    let &(suite, check) = SUITES.iter().find(|s| s.0 == name)?;
    let mut r = SuiteReport { suite, passed: 0, skipped: 0, failures: vec![] };
    for seed in cfg.seeds.clone() {
        match check(seed, cfg) {
            Ok(Outcome::Pass) => r.passed += 1,
            Ok(Outcome::Skip(_)) => r.skipped += 1,
            Ok(Outcome::Fail(detail)) => r.failures.push(Failure { suite, seed, detail }),
            Err(e) => r.failures.push(Failure { suite, seed, detail: format!("error: {e}") }),
        }
    }
    Some(r)
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s.0, cfg).expect("listed suite")).collect()
}

fn fail(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(msg())
    }
}

fn size(seed: u64, cfg: &VerifyConfig, min: usize) -> usize {
    let hi = cfg.max_n.max(min);
    min + (derive(seed, "verify/n") % (hi - min + 1) as u64) as usize
}

fn any_metric(seed: u64, cfg: &VerifyConfig) -> Result<Metric> {
    let style = [Style::EuclideanRounded, Style::WeightedClosure, Style::Graphic][seed as usize % 3];
    gen_random_metric(size(seed, cfg, 4), seed, style)
}

fn graphic(seed: u64, cfg: &VerifyConfig) -> Result<Metric> {
    gen_random_metric(size(seed, cfg, 4), seed, Style::Graphic)
}

/// A random connected subtree of `tree` with at least one edge.
fn random_subtree(tree: &RootedTree, rng: &mut Rng) -> Vec<usize> {
    let n = tree.n();
    let mut inside = vec![false; n];
    inside[rng.gen_range(0..n)] = true;
    let target = rng.gen_range(1..n);
    let mut edges = vec![];
    while edges.len() < target {
        let frontier: Vec<usize> = (0..n)
            .filter(|&c| c != tree.root() && inside[c] != inside[tree.parent(c).expect("non-root")])
            .collect();
        let c = frontier[rng.gen_range(0..frontier.len())];
        inside[c] = true;
        inside[tree.parent(c).expect("non-root")] = true;
        edges.push(c);
    }
    edges.sort_unstable();
    edges
}

/// Exact cover advantage with all vertices as partners; `None` when the
/// solver fell back to its heuristic.
fn adv(tree: &RootedTree, sub: &[usize], r: Restriction, m: &Metric, cfg: &VerifyConfig) -> Result<Option<i64>> {
    let a = advantage(tree, sub, r, &mut CountingOracle::new(m), cfg.cover)?;
    let sign = if cfg.fault == Some(Fault::FlipAdvSign) { -1 } else { 1 };
    Ok(a.exact.then_some(sign * a.value))
}

fn inexact() -> Outcome {
    Outcome::Skip("cover advantage not solved exactly".into())
}

fn max_advantage(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = any_metric(seed, cfg)?;
    let t = mst_tree(&m, 0);
    let sub = random_subtree(&t, &mut rng_for(seed, "verify/sub"));
    let (Some(any), Some(sp)) = (adv(&t, &sub, Restriction::AnyEndpoint, &m, cfg)?, adv(&t, &sub, Restriction::SpecialEndpoint, &m, cfg)?)
    else {
        return Ok(inexact());
    };
    Ok(fail(any >= sp && sp >= 0, || format!("adv {any}, adv* {sp} on subtree {sub:?}")))
}

fn single_edge_adv(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = any_metric(seed, cfg)?;
    let t = mst_tree(&m, 0);
    let sub = random_subtree(&t, &mut rng_for(seed, "verify/sub"));
    let Some(sp) = adv(&t, &sub, Restriction::SpecialEndpoint, &m, cfg)? else {
        return Ok(inexact());
    };
    let mut inside = vec![false; m.n()];
    t.edge_set_vertices(&sub).into_iter().for_each(|v| inside[v] = true);
    for u in (0..m.n()).filter(|&u| inside[u]) {
        for v in (0..m.n()).filter(|&v| !inside[v]) {
            let one = t.edge_set_weight(&cov_set(&t, &[(u, v)], &sub)) - m.dist(u, v);
            if one > sp {
                return Ok(Outcome::Fail(format!("adv(({u},{v})) = {one} exceeds adv* = {sp} on subtree {sub:?}")));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cover_lower_bound(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = any_metric(seed, cfg)?;
    let t = mst_tree(&m, 0);
    let sub = random_subtree(&t, &mut rng_for(seed, "verify/sub"));
    let Some(sp) = adv(&t, &sub, Restriction::SpecialEndpoint, &m, cfg)? else {
        return Ok(inexact());
    };
    let tsp = exact_tsp(&m)?.value;
    let w = t.edge_set_weight(&sub);
    Ok(fail(tsp >= 2 * w - 2 * sp, || format!("TSP {tsp} < 2·{w} − 2·{sp} on subtree {sub:?}")))
}

fn cover_upper_bound(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = any_metric(seed, cfg)?;
    let t = mst_tree(&m, 0);
    let mut rng = rng_for(seed, "verify/family");
    // Components left after cutting random tree edges.
    let n = m.n();
    let cut: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    let mut comp = vec![usize::MAX; n];
    let mut family: Vec<Vec<usize>> = vec![];
    for &v in t.order() {
        let Some(p) = t.parent(v) else { continue };
        if cut[v] {
            continue;
        }
        if comp[p] == usize::MAX {
            comp[p] = family.len();
            family.push(vec![]);
        }
        comp[v] = comp[p];
        family[comp[p]].push(v);
    }
    let mut total = 0;
    for f in &family {
        match adv(&t, f, Restriction::AnyEndpoint, &m, cfg)? {
            Some(a) => total += a,
            None => return Ok(inexact()),
        }
    }
    let tsp = exact_tsp(&m)?.value;
    let mst = t.total_weight();
    Ok(fail(2 * tsp <= 4 * mst - total, || format!("TSP {tsp} > 2·{mst} − {total}/2 over {} subtrees", family.len())))
}

fn tour_two_cover(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = any_metric(seed, cfg)?;
    let t = mst_tree(&m, 0);
    let sub = random_subtree(&t, &mut rng_for(seed, "verify/sub"));
    let tour = exact_tsp(&m)?.witness;
    let s = tour_split(&t, &sub, &tour)?;
    let c0 = cov_set(&t, &s.e0, &sub);
    let c1 = cov_set(&t, &s.e1, &sub);
    Ok(fail(c0 == sub && c1 == sub, || format!("halves cover {c0:?} and {c1:?}, subtree {sub:?}")))
}

fn subset_expectation(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = any_metric(seed, cfg)?;
    let t = mst_tree(&m, 0);
    let e_star = random_pairs(&t, &m, 1 + seed as usize % 12, seed);
    Ok(match subset_identity(&t, &e_star) {
        Ok(()) => Outcome::Pass,
        Err(msg) => Outcome::Fail(msg),
    })
}

/// Up to `k` distinct non-tree pairs with their distances.
pub fn random_pairs(t: &RootedTree, m: &Metric, k: usize, seed: u64) -> Vec<(usize, usize, i64)> {
    let n = m.n();
    let mut rng = rng_for(seed, "verify/pairs");
    let mut out: Vec<(usize, usize, i64)> = vec![];
    for _ in 0..8 * k {
        if out.len() == k {
            break;
        }
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let tree_edge = t.parent(a) == Some(b) || t.parent(b) == Some(a);
        if a != b && !tree_edge && !out.iter().any(|&(x, y, _)| (x, y) == (a.min(b), a.max(b))) {
            out.push((a.min(b), a.max(b), m.dist(a, b)));
        }
    }
    out
}

/// `Σ_{E' ⊆ E*} w(H_{T,E'}) = 2^|E*|·(2·MST − (w(cov(E*)) − w(E*))/2)`, in halves.
pub fn subset_identity(t: &RootedTree, e_star: &[(usize, usize, i64)]) -> std::result::Result<(), String> {
    let k = e_star.len();
    let mut sum: i128 = 0;
    for mask in 0u32..1 << k {
        let s: Vec<_> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| e_star[i]).collect();
        sum += h_weight(t, &s) as i128;
    }
    let pairs: Vec<(usize, usize)> = e_star.iter().map(|&(a, b, _)| (a, b)).collect();
    let cov = t.edge_set_weight(&cov_set(t, &pairs, &t.all_edges())) as i128;
    let we: i128 = e_star.iter().map(|p| p.2 as i128).sum();
    let lhs = 2 * sum;
    let rhs = (1i128 << k) * (4 * t.total_weight() as i128 - cov + we);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("2·Σ w(H) = {lhs} but 2^k·(4·MST − cov + w(E*)) = {rhs}, |E*| = {k}"))
    }
}

/// Forest, skeleton and its exact walk cost on a small chorded tree.
struct WalkCase {
    m: Metric,
    t: RootedTree,
    f: CTreeForest,
    sk: Skeleton,
    mwc: i64,
}

fn walk_case(seed: u64, cfg: &VerifyConfig) -> Result<Option<WalkCase>> {
    let n = size(seed, cfg, 5);
    let t = random_weighted_tree(n, 9, seed)?;
    let m = tree_with_chords(&t, n * (seed as usize % 3), 2, seed)?;
    let p = light_peel(&t, 2 + seed as usize % 3);
    let f = build_ctree_forest(&t, &p, 1 + seed as usize % 2);
    if f.is_empty() {
        return Ok(None);
    }
    let sk = Skeleton::new(&t, &f)?;
    let mwc = exact_mwc(&sk.table(|a, b| m.dist(a, b)), sk.size(), 0)?.value;
    Ok(Some(WalkCase { m, t, f, sk, mwc }))
}

fn mm_of_l(c: &WalkCase, gap: f64) -> Result<i64> {
    let w = &c.sk.weights;
    let mut o = CountingOracle::new(&c.m);
    let mut edges = vec![];
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let z = zeta(&c.sk, i, j, &mut o, CoverOptions::default())?.value;
            if in_l(z, w[i], w[j], gap) {
                edges.push((i, j, w[i] + w[j]));
            }
        }
    }
    Ok(exact_max_weight_matching(w.len(), &edges)?.value)
}

fn sum_special(c: &WalkCase, cfg: &VerifyConfig) -> Result<Option<i64>> {
    let mut s = 0;
    for tr in &c.f.trees {
        match adv(&c.t, &tr.edges, Restriction::SpecialEndpoint, &c.m, cfg)? {
            Some(a) => s += a,
            None => return Ok(None),
        }
    }
    Ok(Some(s))
}

const WALK_GAP: f64 = 0.1;

fn walk_upper(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let Some(c) = walk_case(seed, cfg)? else { return Ok(Outcome::Skip("empty forest".into())) };
    let mm = mm_of_l(&c, WALK_GAP)? as f64;
    let mst = c.sk.mst() as f64;
    let cap = 2.0 * mst - WALK_GAP / 2.0 * mm;
    Ok(fail(c.mwc as f64 <= cap + 1e-9, || format!("MWC {} > {cap} (MST' {mst}, MM(L) {mm})", c.mwc)))
}

fn walk_lower(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let Some(c) = walk_case(seed, cfg)? else { return Ok(Outcome::Skip("empty forest".into())) };
    let Some(a) = sum_special(&c, cfg)? else { return Ok(inexact()) };
    let mm = mm_of_l(&c, WALK_GAP)? as f64;
    let (mst, k) = (c.sk.mst() as f64, c.f.c as f64);
    let low = (2.0 - 3.0 * k * WALK_GAP) * mst - 3.0 * k * mm - 4.0 * k * a as f64;
    Ok(fail(c.mwc as f64 >= low - 1e-9, || format!("MWC {} < {low}", c.mwc)))
}

fn tsp_by_walk(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let Some(c) = walk_case(seed, cfg)? else { return Ok(Outcome::Skip("empty forest".into())) };
    let Some(a) = sum_special(&c, cfg)? else { return Ok(inexact()) };
    let tsp = exact_tsp(&c.m)?.value;
    let outside = c.t.total_weight() - c.f.weight();
    Ok(fail(tsp >= c.mwc - 2 * a && tsp <= c.mwc + 2 * outside, || {
        format!("TSP {tsp} outside [{} − 2·{a}, {} + 2·{outside}]", c.mwc, c.mwc)
    }))
}

fn skeleton_mst(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let Some(c) = walk_case(seed, cfg)? else { return Ok(Outcome::Skip("empty forest".into())) };
    let s = c.sk.size();
    let w = c.sk.table(|a, b| c.m.dist(a, b));
    let got = exact_mst(&Metric::from_fn(s, |a, b| w[a * s + b])).value;
    Ok(fail(got == c.sk.mst(), || format!("MST(w') = {got}, Σ w'_i = {}", c.sk.mst())))
}

fn naive_bounds(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = graphic(seed, cfg)?;
    let (n, tsp) = (m.n() as i64, exact_tsp(&m)?.value);
    Ok(fail(n <= tsp && tsp <= 2 * n - 2, || format!("TSP {tsp} outside [{n}, {}]", 2 * n - 2)))
}

fn unit_edges(m: &Metric) -> Vec<(usize, usize)> {
    m.unit_graph().edges.iter().map(|&(a, b, _)| (a, b)).collect()
}

fn g1_matching_bound(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = graphic(seed, cfg)?;
    let n = m.n() as i64;
    let mm = exact_max_matching(m.n(), &unit_edges(&m)).value as i64;
    let tsp = exact_tsp(&m)?.value;
    let mst = exact_mst(&m).value;
    Ok(fail(tsp >= 2 * n - 2 * mm && tsp >= mst, || format!("TSP {tsp} < 2·{n} − 2·{mm} or < MST {mst}")))
}

fn degree_one_bound(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let m = graphic(seed, cfg)?;
    let n = m.n();
    let mut deg = vec![0; n];
    for (a, b) in unit_edges(&m) {
        deg[a] += 1;
        deg[b] += 1;
    }
    let l = deg.iter().filter(|&&d| d == 1).count() as i64;
    let tsp = exact_tsp(&m)?.value;
    Ok(fail(2 * tsp >= 2 * n as i64 + l, || format!("TSP {tsp} < {n} + {l}/2")))
}

fn matching_in_tree(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let n = size(seed, cfg, 2).max(2) * 4;
    let t = random_weighted_tree(n, 1, seed)?;
    // Bottom-up: match each unmatched vertex to its parent when possible.
    let mut used = vec![false; n];
    let mut size = 0;
    for &v in t.order().iter().rev() {
        if let Some(p) = t.parent(v) {
            if !used[v] && !used[p] {
                used[v] = true;
                used[p] = true;
                size += 1;
            }
        }
    }
    let deg = t.edge_set_degrees(&t.all_edges());
    let leaves = deg.iter().filter(|&&d| d == 1).count();
    Ok(fail(2 * size + leaves >= n, || format!("matching {size} < ({n} − {leaves})/2")))
}

fn two_pass(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let n = size(seed, cfg, 4).min(13);
    let mut rng = rng_for(seed, "verify/graph");
    let extra = rng.gen_range(0..=n * (n - 1) / 2);
    let g = random_connected_graph(n, extra, 20, &mut rng);
    let m = metric_from_graph(&g)?;
    let mut s = StreamSession::graph(&g, Order::Shuffled(seed));
    let r = run_twopass_tsp(&mut s, ALPHA_TWOPASS, BETA_TWOPASS)?;
    let tsp = exact_tsp(&m)?.value as f64;
    Ok(match two_pass_violation(&r, tsp) {
        None => Outcome::Pass,
        Some(msg) => Outcome::Fail(msg),
    })
}

/// The sandwich and the per-branch claims of the two-pass estimator.
pub fn two_pass_violation(r: &TwoPassResult, tsp: f64) -> Option<String> {
    let we: i64 = r.e_star.iter().map(|e| e.2).sum();
    let mst = r.mst as f64;
    if !(tsp <= r.value + 1e-9 && r.value <= 1.96 * tsp + 1e-9) {
        return Some(format!("value {} outside [{tsp}, 1.96·{tsp}]", r.value));
    }
    if we as f64 > r.alpha * r.cov_weight as f64 + 1e-9 {
        return Some(format!("w(E*) = {we} > α·w(cov(E*)) = {}", r.alpha * r.cov_weight as f64));
    }
    if r.branch == Branch::CoverAbsent && tsp < 2.0 * r.alpha * (1.0 - r.beta) * mst - 1e-9 {
        return Some(format!("cover absent but TSP {tsp} < 2α(1−β)·{mst}"));
    }
    None
}

fn onepass_run(seed: u64, cfg: &VerifyConfig) -> Result<(Metric, MstEstimate)> {
    let m = any_metric(seed, cfg)?;
    let alpha = [1.5, 2.0, 3.0][seed as usize % 3];
    let mut s = StreamSession::metric(&m, Order::Shuffled(seed));
    let r = run_onepass_mst_estimate(&mut s, alpha, seed, 100.0)?;
    Ok((m, r))
}

fn mst_simple_lower_bound(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let (m, r) = onepass_run(seed, cfg)?;
    let mst = exact_mst(&m).value;
    let bound = sample_cover_bound(&m, &r.v_prime);
    Ok(fail(mst <= bound, || format!("MST {mst} > MST' + Σ dist(v, V') = {bound}")))
}

/// `MST' ≤ MST` and `diam ≤ MST` on the sampled subset.
fn sandwich_components(seed: u64, cfg: &VerifyConfig) -> Result<Outcome> {
    let (m, r) = onepass_run(seed, cfg)?;
    let mst = exact_mst(&m).value;
    Ok(fail(r.mst_prime <= mst && r.diam <= mst, || {
        format!("MST {mst}, MST' {} over |V'| = {}, diam {}", r.mst_prime, r.v_prime.len(), r.diam)
    }))
}
