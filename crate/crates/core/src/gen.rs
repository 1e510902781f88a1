//! Random and adversarial instance generators.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::metric::{metric_from_graph, Metric, WeightedGraph};
use crate::rng::{rng_for, Rng};
use crate::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Hop metric of a random connected unweighted graph.
    Graphic,
    /// Shortest-path closure of a random connected graph, weights 1..=20.
    WeightedClosure,
    /// Rounded-up Euclidean distances of integer points.
    EuclideanRounded,
}

impl std::str::FromStr for Style {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graphic" => Ok(Style::Graphic),
            "weighted-closure" => Ok(Style::WeightedClosure),
            "euclidean-rounded" => Ok(Style::EuclideanRounded),
            _ => Err(Error::BadParameters(format!("unknown style {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Y,
    N,
}

impl std::str::FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Y" | "y" | "yes" => Ok(Which::Y),
            "N" | "n" | "no" => Ok(Which::N),
            _ => Err(Error::BadParameters(format!("expected Y or N, got {s:?}"))),
        }
    }
}

/// Uniform random labelled spanning tree shape: each vertex attaches to an
/// earlier one in a shuffled order.
pub fn random_tree_edges(n: usize, rng: &mut Rng) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| {
            let j = rng.gen_range(0..i);
            (order[j], order[i])
        })
        .collect()
}

/// Random connected graph: a random tree plus `extra` further pairs, with
/// weights drawn from `1..=max_w`.
pub fn random_connected_graph(n: usize, extra: usize, max_w: i64, rng: &mut Rng) -> WeightedGraph {
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for (u, v) in random_tree_edges(n, rng) {
        seen.insert((u.min(v), u.max(v)));
        edges.push((u, v, rng.gen_range(1..=max_w)));
    }
    let cap = n * n.saturating_sub(1) / 2;
    let target = (edges.len() + extra).min(cap);
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v, rng.gen_range(1..=max_w)));
        }
    }
    WeightedGraph { n, edges }
}

/// Hop metric of a random connected graph with `extra` edges beyond a tree.
pub fn gen_graphic(n: usize, extra: usize, seed: u64) -> Metric {
    let mut rng = rng_for(seed, "gen/graphic");
    let g = random_connected_graph(n, extra, 1, &mut rng);
    metric_from_graph(&g).expect("tree-based graph is connected")
}

/// Metric with distance 1 on the edges of `g` and 2 elsewhere.
pub fn one_two_metric(g: &WeightedGraph) -> Metric {
    let n = g.n;
    let mut adj = vec![false; n * n];
    for &(u, v, _) in &g.edges {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    Metric::from_fn(n, |u, v| if adj[u * n + v] { 1 } else { 2 })
}

fn ceil_sqrt(x: i64) -> i64 {
    let mut s = (x as f64).sqrt() as i64;
    while s * s > x {
        s -= 1;
    }
    while s * s < x {
        s += 1;
    }
    s
}

pub fn gen_random_metric(n: usize, seed: u64, style: Style) -> Result<Metric> {
    if n < 2 {
        return Err(Error::BadParameters(format!("need n >= 2, got {n}")));
    }
    match style {
        Style::Graphic => {
            let mut rng = rng_for(seed, "gen/random/graphic");
            let extra = rng.gen_range(0..=n / 2);
            let g = random_connected_graph(n, extra, 1, &mut rng);
            metric_from_graph(&g)
        }
        Style::WeightedClosure => {
            let mut rng = rng_for(seed, "gen/random/closure");
            let extra = rng.gen_range(0..=n);
            let g = random_connected_graph(n, extra, 20, &mut rng);
            metric_from_graph(&g)
        }
        Style::EuclideanRounded => {
            let mut rng = rng_for(seed, "gen/random/euclid");
            let pts: Vec<(i64, i64)> = (0..n)
                .map(|_| (rng.gen_range(0..=100), rng.gen_range(0..=100)))
                .collect();
            Ok(Metric::from_fn(n, |u, v| {
                let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
                ceil_sqrt(dx * dx + dy * dy).max(1)
            }))
        }
    }
}

/// Random spanning tree on `n` vertices rooted at 0, weights `1..=max_w`.
pub fn random_weighted_tree(n: usize, max_w: i64, seed: u64) -> Result<RootedTree> {
    let mut rng = rng_for(seed, "gen/tree");
    let e: Vec<_> = random_tree_edges(n, &mut rng).into_iter().map(|(a, b)| (a, b, rng.gen_range(1..=max_w))).collect();
    RootedTree::from_edges(n, 0, &e)
}

/// Shortest-path metric of `tree` plus up to `extra` chords. A chord weighs
/// the heaviest tree edge it spans plus `0..=slack`, so `tree` remains a
/// minimum spanning tree of the result.
pub fn tree_with_chords(tree: &RootedTree, extra: usize, slack: i64, seed: u64) -> Result<Metric> {
    let n = tree.n();
    let mut rng = rng_for(seed, "gen/chords");
    let mut seen: std::collections::HashSet<(usize, usize)> =
        tree.edge_list().iter().map(|&(a, b, _)| (a.min(b), a.max(b))).collect();
    let mut edges = tree.edge_list();
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && seen.insert((a.min(b), a.max(b))) {
            let top = tree.path_edges(a, b).iter().map(|&e| tree.weight(e)).max().unwrap_or(0);
            edges.push((a, b, top + rng.gen_range(0..=slack)));
        }
    }
    metric_from_graph(&WeightedGraph::new(n, edges)?)
}

/// Parameters of the single-pass hard family on `U ∪ S ∪ T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OnePassParams {
    pub k: usize,
    pub r: usize,
    pub p: usize,
    pub big_l: i64,
}

impl OnePassParams {
    pub fn n(&self) -> usize {
        self.k * self.r * (1 + 2 * self.p)
    }
}

/// Builds `w_Y` or `w_N`. Vertices are laid out as `U` (group-major), then
/// `S`, then `T`; `S` and `T` are capped path metrics over their index orders.
pub fn gen_onepass_family(params: OnePassParams, which: Which) -> Result<Metric> {
    let OnePassParams { k, r, p, big_l } = params;
    if k == 0 || r == 0 || p == 0 {
        return Err(Error::BadParameters("k, r and p must be positive".into()));
    }
    let n = params.n();
    if big_l <= n as i64 {
        return Err(Error::BadParameters(format!("need L > n = {n}, got {big_l}")));
    }
    let ku = k * r;
    let ks = k * r * p;
    // Position of each vertex on its path, or its (group, slot) inside U.
    enum Slot {
        U(usize, usize),
        S(usize),
        T(usize),
    }
    let slot = |x: usize| -> Slot {
        if x < ku {
            Slot::U(x / r, x % r)
        } else if x < ku + ks {
            let y = x - ku;
            let (i, rest) = (y / (r * p), y % (r * p));
            let (l, j) = (rest / r, rest % r);
            Slot::S(i * r * p + l * r + j)
        } else {
            let y = x - ku - ks;
            let (i, rest) = (y / (r * p), y % (r * p));
            let (j, l) = (rest / p, rest % p);
            Slot::T(i * r * p + j * p + l)
        }
    };
    Ok(Metric::from_fn(n, |a, b| match (slot(a), slot(b)) {
        (Slot::S(x), Slot::S(y)) | (Slot::T(x), Slot::T(y)) => big_l.min(x.abs_diff(y) as i64),
        (Slot::U(i, j), Slot::U(i2, j2)) if which == Which::Y && i == i2 => j.abs_diff(j2) as i64,
        _ => big_l,
    }))
}

/// Multi-pass clique family: `m` groups of `N` vertices, group 0 special.
pub fn gen_multipass_family(group: usize, m: usize, big_m: i64, which: Which) -> Result<Metric> {
    let n = group * m;
    if group == 0 || m == 0 {
        return Err(Error::BadParameters("N and m must be positive".into()));
    }
    if big_m < 2 * n as i64 {
        return Err(Error::BadParameters(format!("need M >= 2n = {}, got {big_m}", 2 * n)));
    }
    Ok(Metric::from_fn(n, |u, v| {
        let (gu, gv) = (u / group, v / group);
        if gu != gv || (which == Which::N && gu == 0) {
            big_m
        } else {
            1
        }
    }))
}

/// The single-pass TSP gadget `G_{X,i*,j*}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TspGadget {
    pub p: usize,
    pub r: usize,
    pub big_l: i64,
    pub istar: usize,
    pub jstar: usize,
    pub x: Vec<Vec<bool>>,
}

impl TspGadget {
    pub fn new(x: Vec<Vec<bool>>, istar: usize, jstar: usize, r: usize, big_l: i64) -> Result<Self> {
        let p = x.len();
        if p == 0 || r == 0 || x.iter().any(|row| row.len() != p) {
            return Err(Error::BadParameters("X must be a non-empty square matrix and r >= 1".into()));
        }
        if istar >= p || jstar >= p {
            return Err(Error::BadParameters(format!("i*, j* must be below p = {p}")));
        }
        let g = TspGadget { p, r, big_l, istar, jstar, x };
        let n = g.n() as i64;
        if big_l < n * n {
            return Err(Error::BadParameters(format!("need L >= n^2 = {}, got {big_l}", n * n)));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        2 + 2 * self.p * self.r
    }

    pub const U0: usize = 0;
    pub const U0_PRIME: usize = 1;

    pub fn u(&self, i: usize, t: usize) -> usize {
        2 + i * self.r + t
    }

    pub fn u_prime(&self, j: usize, t: usize) -> usize {
        2 + self.p * self.r + j * self.r + t
    }

    /// Tree edges `E(G)` plus the cross edges of every 1-entry of `X`.
    /// The second cross family `(u_{i,t}, u'_{j,t+1})` stops at `t + 1 < r`.
    pub fn graph(&self) -> WeightedGraph {
        let heavy = self.big_l + 2;
        let mut edges = vec![(Self::U0, Self::U0_PRIME, self.big_l)];
        for i in 0..self.p {
            for t in 0..self.r {
                let w = if i == self.istar { heavy } else { 1 };
                edges.push((Self::U0, self.u(i, t), w));
            }
        }
        for j in 0..self.p {
            for t in 0..self.r {
                let w = if j == self.jstar { heavy } else { 1 };
                edges.push((Self::U0_PRIME, self.u_prime(j, t), w));
            }
        }
        for i in 0..self.p {
            for j in 0..self.p {
                if self.x[i][j] {
                    for t in 0..self.r {
                        edges.push((self.u(i, t), self.u_prime(j, t), heavy));
                        if t + 1 < self.r {
                            edges.push((self.u(i, t), self.u_prime(j, t + 1), heavy));
                        }
                    }
                }
            }
        }
        WeightedGraph { n: self.n(), edges }
    }

    /// The zig-zag tour through `U_{i*}` and `U'_{j*}` along cross edges:
    /// `u_0, u_{i*,r-1}, u'_{j*,r-1}, u_{i*,r-2}, ..., u_{i*,0}, u'_{j*,0}, u'_0`,
    /// then the light leaves of `u'_0` and those of `u_0`.
    pub fn witness_tour(&self) -> Vec<usize> {
        let mut tour = vec![Self::U0];
        for t in (0..self.r).rev() {
            tour.push(self.u(self.istar, t));
            tour.push(self.u_prime(self.jstar, t));
        }
        tour.push(Self::U0_PRIME);
        for j in (0..self.p).filter(|&j| j != self.jstar) {
            tour.extend((0..self.r).map(|t| self.u_prime(j, t)));
        }
        for i in (0..self.p).filter(|&i| i != self.istar) {
            tour.extend((0..self.r).map(|t| self.u(i, t)));
        }
        tour
    }
}

/// Unweighted COI graph: `m` cliques of size `N` (Y), or `m - 1` such cliques
/// plus `N` isolated vertices (N).
pub fn gen_coi_graph(group: usize, m: usize, which: Which) -> WeightedGraph {
    let cliques = match which {
        Which::Y => m,
        Which::N => m.saturating_sub(1),
    };
    let mut edges = Vec::new();
    for c in 0..cliques {
        for a in 0..group {
            for b in a + 1..group {
                edges.push((c * group + a, c * group + b, 1));
            }
        }
    }
    WeightedGraph {
        n: group * m,
        edges,
    }
}

/// Cost of a closed tour under `m`.
pub fn tour_cost(m: &Metric, tour: &[usize]) -> i64 {
    if tour.len() < 2 {
        return 0;
    }
    let mut c = m.dist(tour[tour.len() - 1], tour[0]);
    for w in tour.windows(2) {
        c += m.dist(w[0], w[1]);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::validate_metric;

    #[test]
    fn random_metrics_are_deterministic_and_valid() {
        for style in [Style::Graphic, Style::WeightedClosure, Style::EuclideanRounded] {
            let a = gen_random_metric(5, 1, style).unwrap();
            assert_eq!(a, gen_random_metric(5, 1, style).unwrap());
            for seed in 0..20 {
                let m = gen_random_metric(12, seed, style).unwrap();
                assert!(validate_metric(&m).is_empty(), "{style:?} seed {seed}");
            }
        }
    }

    #[test]
    fn ceil_sqrt_matches_float() {
        for x in 0..5000i64 {
            assert_eq!(ceil_sqrt(x), (x as f64).sqrt().ceil() as i64, "{x}");
        }
    }

    #[test]
    fn onepass_figure_parameters_are_metrics() {
        let p = OnePassParams { k: 2, r: 2, p: 1, big_l: 13 };
        assert_eq!(p.n(), 12);
        for which in [Which::Y, Which::N] {
            assert!(validate_metric(&gen_onepass_family(p, which).unwrap()).is_empty());
        }
    }

    #[test]
    fn onepass_rejects_small_l() {
        let p = OnePassParams { k: 2, r: 2, p: 1, big_l: 12 };
        assert!(gen_onepass_family(p, Which::Y).is_err());
    }

    #[test]
    fn multipass_shape() {
        let y = gen_multipass_family(3, 2, 100, Which::Y).unwrap();
        let n = gen_multipass_family(3, 2, 100, Which::N).unwrap();
        assert_eq!((y.dist(0, 1), n.dist(0, 1)), (1, 100));
        assert_eq!((y.dist(3, 4), n.dist(3, 4)), (1, 1));
        assert_eq!(y.dist(0, 3), 100);
        assert!(validate_metric(&n).is_empty());
        assert!(gen_multipass_family(3, 2, 11, Which::Y).is_err());
    }

    #[test]
    fn coi_counts() {
        let y = gen_coi_graph(4, 3, Which::Y);
        assert_eq!(y.edges.len(), 3 * 6);
        assert_eq!(y.component_count(), 3);
        let n = gen_coi_graph(4, 3, Which::N);
        assert_eq!(n.component_count(), 2 + 4);
    }

    #[test]
    fn gadget_layout() {
        let x = vec![vec![true, false], vec![false, true]];
        let g = TspGadget::new(x, 0, 0, 2, 100).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.u(1, 1), 5);
        assert_eq!(g.u_prime(0, 0), 6);
        let gr = g.graph();
        assert!(gr.is_connected());
        // tree edges 1 + 8, plus 3 cross edges for each of the two 1-entries
        assert_eq!(gr.edges.len(), 9 + 6);
        let mut t = g.witness_tour();
        t.sort_unstable();
        assert_eq!(t, (0..10).collect::<Vec<_>>());
        assert!(TspGadget::new(vec![vec![true]], 0, 0, 1, 15).is_err());
    }

    #[test]
    fn witness_tour_walks_cross_edges() {
        let x = vec![vec![false, true], vec![false, false]];
        let g = TspGadget::new(x, 0, 1, 3, 196).unwrap();
        let m = crate::metric::metric_from_graph(&g.graph()).unwrap();
        let t = g.witness_tour();
        let heavy = g.big_l + 2;
        // u_0 to u_{i*,r-1}, then 2r-1 cross edges, then into u'_0.
        for w in t[..2 * g.r + 2].windows(2) {
            assert_eq!(m.dist(w[0], w[1]), heavy);
        }
        let (n, r) = (g.n() as i64, g.r as i64);
        assert_eq!(tour_cost(&m, &t), 2 * n - 2 + (2 * r + 2) * g.big_l);
    }
}
