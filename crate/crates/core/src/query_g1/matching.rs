use std::collections::HashMap;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::oracle::CountingOracle;
use crate::rng::{derive, mix64, rng_for};

#[derive(Clone, Debug, Default)]
pub struct MatchingOptions {
    /// Vertex samples; `None` uses [`default_matching_samples`].
    pub samples: Option<usize>,
    /// Distinct-query budget; `None` uses [`default_matching_budget`].
    pub budget: Option<u64>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct MatchingEstimate {
    /// `M̂`, with `M̂ ≤ MM ≤ 2M̂ + εN` w.h.p. for the subset size `N`.
    pub value: f64,
    /// Matched sampled vertices over samples.
    pub matched_fraction: f64,
    pub samples: usize,
    /// All subset vertices evaluated; `value` is then the size of the greedy maximal matching.
    pub exhaustive: bool,
    pub budget: u64,
    pub budget_hit: bool,
    pub queries: u64,
}

/// `⌈2·ln(2N)/ε²⌉`: matched fraction within `ε/2` with probability `1 − 1/N`.
pub fn default_matching_samples(n: usize, eps: f64) -> usize {
    (2.0 * (2.0 * n.max(1) as f64).ln() / (eps * eps)).ceil() as usize
}

/// `⌈N^1.5 · log₂N / ε²⌉`.
pub fn default_matching_budget(n: usize, eps: f64) -> u64 {
    let n = n.max(2) as f64;
    (n.powf(1.5) * n.log2() / (eps * eps)).ceil() as u64
}

/// Lazily simulated random-rank greedy maximal matching on a graph over
/// `0..n` whose edges are revealed by `edge`.
///
/// Every vertex pair gets a pseudo-random rank; greedy scans pairs by rank and
/// keeps each edge whose endpoints are still free. An edge is in the matching
/// iff no lower-ranked adjacent edge is, which is decided recursively while
/// probing only lower-ranked pairs.
struct Greedy<E> {
    edge: E,
    n: usize,
    seed: u64,
    /// Per vertex: `(rank, other)` over all other vertices, ascending.
    sorted: Vec<Option<Vec<(u64, u32)>>>,
    /// 0 unknown, 1 non-edge, 2 edge.
    adj: Vec<u8>,
    memo: HashMap<u64, bool>,
}

struct Frame {
    a: usize,
    b: usize,
    key: u64,
    ia: usize,
    ib: usize,
}

impl<E: FnMut(usize, usize) -> Result<bool>> Greedy<E> {
    fn n(&self) -> usize {
        self.n
    }

    fn pair(&self, a: usize, b: usize) -> u64 {
        let (a, b) = (a.min(b), a.max(b));
        (a * self.n() + b) as u64
    }

    fn rank(&self, a: usize, b: usize) -> u64 {
        mix64(self.seed ^ mix64(self.pair(a, b)))
    }

    fn ensure(&mut self, a: usize) {
        if self.sorted[a].is_none() {
            let mut l: Vec<(u64, u32)> =
                (0..self.n()).filter(|&b| b != a).map(|b| (self.rank(a, b), b as u32)).collect();
            l.sort_unstable();
            self.sorted[a] = Some(l);
        }
    }

    fn is_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        let n = self.n();
        let i = a * n + b;
        if self.adj[i] == 0 {
            let v = if (self.edge)(a, b)? { 2 } else { 1 };
            self.adj[i] = v;
            self.adj[b * n + a] = v;
        }
        Ok(self.adj[i] == 2)
    }

    /// Next pair adjacent to the frame's edge with lower rank, advancing the cursor.
    fn next_adjacent(&self, f: &mut Frame) -> Option<(usize, usize)> {
        let la = self.sorted[f.a].as_ref().expect("ensured");
        let lb = self.sorted[f.b].as_ref().expect("ensured");
        loop {
            let ca = la.get(f.ia).filter(|e| e.0 < f.key);
            let cb = lb.get(f.ib).filter(|e| e.0 < f.key);
            let (x, y) = match (ca, cb) {
                (None, None) => return None,
                (Some(&(ka, oa)), Some(&(kb, _))) if ka <= kb => {
                    f.ia += 1;
                    (f.a, oa as usize)
                }
                (Some(&(_, oa)), None) => {
                    f.ia += 1;
                    (f.a, oa as usize)
                }
                (_, Some(&(_, ob))) => {
                    f.ib += 1;
                    (f.b, ob as usize)
                }
            };
            if (x == f.a && y == f.b) || (x == f.b && y == f.a) {
                continue;
            }
            return Some((x, y));
        }
    }

    fn frame(&mut self, a: usize, b: usize) -> Frame {
        self.ensure(a);
        self.ensure(b);
        Frame { a, b, key: self.rank(a, b), ia: 0, ib: 0 }
    }

    /// Whether edge `{a, b}` belongs to the greedy matching.
    fn in_matching(&mut self, a: usize, b: usize) -> Result<bool> {
        if let Some(&r) = self.memo.get(&self.pair(a, b)) {
            return Ok(r);
        }
        let root = self.frame(a, b);
        let mut stack = vec![root];
        // Result of the most recently resolved child frame.
        let mut pending: Option<bool> = None;
        loop {
            let mut top = stack.pop().expect("stack holds the root until it resolves");
            let mut outcome = None;
            if pending.take() == Some(true) {
                outcome = Some(false);
            }
            let mut child = None;
            if outcome.is_none() {
                while let Some((x, y)) = self.next_adjacent(&mut top) {
                    if !self.is_edge(x, y)? {
                        continue;
                    }
                    match self.memo.get(&self.pair(x, y)) {
                        Some(true) => {
                            outcome = Some(false);
                            break;
                        }
                        Some(false) => {}
                        None => {
                            child = Some(self.frame(x, y));
                            break;
                        }
                    }
                }
            }
            if let Some(c) = child {
                stack.push(top);
                stack.push(c);
                continue;
            }
            let r = outcome.unwrap_or(true);
            let key = self.pair(top.a, top.b);
            self.memo.insert(key, r);
            if stack.is_empty() {
                return Ok(r);
            }
            pending = Some(r);
        }
    }

    fn matched(&mut self, a: usize) -> Result<bool> {
        self.ensure(a);
        for i in 0..self.n() - 1 {
            let b = self.sorted[a].as_ref().expect("ensured")[i].1 as usize;
            if self.is_edge(a, b)? && self.in_matching(a, b)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Estimates the maximum matching size of `G₁[subset]` within a factor two.
///
/// Samples vertices uniformly, decides for each whether the random-rank greedy
/// maximal matching covers it, and scales. With `N = |subset|` and
/// `δ = ε/4`, returns `M̂ = max(0, N·f/2 − δN)` for matched fraction `f`.
/// When the sample count reaches `N` every vertex is evaluated once and `M̂`
/// is the greedy matching's exact size. Exceeding the budget stops sampling
/// early and sets `budget_hit`.
pub fn matching_size_estimate(
    subset: &[usize],
    eps: f64,
    oracle: &mut CountingOracle,
    opts: &MatchingOptions,
) -> Result<MatchingEstimate> {
    let n = subset.len();
    let budget = opts.budget.unwrap_or_else(|| default_matching_budget(n, eps));
    let start = oracle.distinct();
    if n < 2 {
        return Ok(MatchingEstimate {
            value: 0.0,
            matched_fraction: 0.0,
            samples: n,
            exhaustive: true,
            budget,
            budget_hit: false,
            queries: 0,
        });
    }
    let want = opts.samples.unwrap_or_else(|| default_matching_samples(n, eps));
    let verts = subset.to_vec();
    let o = &mut *oracle;
    let run = greedy_matching_run(n, want, opts.seed, |a, b| {
        let (x, y) = (verts[a], verts[b]);
        if o.distinct() - start >= budget && !o.is_known(x, y) {
            return Err(Error::BudgetExceeded { budget });
        }
        Ok(o.query(x, y)? == 1)
    })?;
    Ok(MatchingEstimate {
        value: run.value(eps),
        matched_fraction: run.fraction(),
        samples: run.done,
        exhaustive: run.exhaustive,
        budget,
        budget_hit: run.budget_hit,
        queries: oracle.distinct() - start,
    })
}

/// Outcome of sampling vertices against a simulated greedy matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreedyRun {
    pub n: usize,
    /// Sampled vertices that the matching covers.
    pub matched: usize,
    /// Samples evaluated before any budget stop.
    pub done: usize,
    pub exhaustive: bool,
    pub budget_hit: bool,
}

impl GreedyRun {
    pub fn fraction(&self) -> f64 {
        if self.done == 0 {
            0.0
        } else {
            self.matched as f64 / self.done as f64
        }
    }

    /// Exact greedy size when exhaustive, else `max(0, N·f/2 − εN/4)`.
    pub fn value(&self, eps: f64) -> f64 {
        if self.exhaustive {
            self.matched as f64 / 2.0
        } else {
            (self.fraction() * self.n as f64 / 2.0 - eps / 4.0 * self.n as f64).max(0.0)
        }
    }
}

/// Samples `want` vertices of `0..n` (all of them once when `want ≥ n`) and
/// checks each against the random-rank greedy matching of the graph whose
/// pair test is `edge`. A `BudgetExceeded` error from `edge` stops sampling.
pub fn greedy_matching_run<E>(n: usize, want: usize, seed: u64, edge: E) -> Result<GreedyRun>
where
    E: FnMut(usize, usize) -> Result<bool>,
{
    if n < 2 {
        return Ok(GreedyRun { n, matched: 0, done: n, exhaustive: true, budget_hit: false });
    }
    let exhaustive = want >= n;
    let picks: Vec<usize> = if exhaustive {
        (0..n).collect()
    } else {
        let mut rng = rng_for(seed, "matching_samples");
        (0..want).map(|_| rng.gen_range(0..n)).collect()
    };
    let mut g = Greedy {
        edge,
        n,
        seed: derive(seed, "matching_ranks"),
        sorted: vec![None; n],
        adj: vec![0; n * n],
        memo: HashMap::new(),
    };
    let mut matched = 0usize;
    let mut done = 0usize;
    let mut budget_hit = false;
    for &a in &picks {
        match g.matched(a) {
            Ok(m) => {
                matched += usize::from(m);
                done += 1;
            }
            Err(Error::BudgetExceeded { .. }) => {
                budget_hit = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(GreedyRun { n, matched, done, exhaustive: exhaustive && !budget_hit, budget_hit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_max_matching;
    use crate::metric::{metric_from_graph, WeightedGraph};
    use crate::Metric;

    fn check_maximal(m: &Metric, subset: &[usize], value: f64) {
        let edges: Vec<(usize, usize)> = (0..subset.len())
            .flat_map(|i| (i + 1..subset.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| m.dist(subset[i], subset[j]) == 1)
            .collect();
        let mm = exact_max_matching(subset.len(), &edges).value as f64;
        assert!(value <= mm && mm <= 2.0 * value, "value {value}, mm {mm}");
    }

    #[test]
    fn empty_subgraph_is_zero() {
        let m = Metric::from_fn(10, |_, _| 2);
        let mut o = CountingOracle::new(&m);
        let subset: Vec<usize> = (0..10).collect();
        let r = matching_size_estimate(&subset, 0.1, &mut o, &MatchingOptions::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn exhaustive_mode_is_a_maximal_matching() {
        for seed in 0..10 {
            let m = crate::gen::gen_graphic(40, 30, seed);
            let mut o = CountingOracle::new(&m);
            let subset: Vec<usize> = (0..40).collect();
            let opts = MatchingOptions { seed, ..Default::default() };
            let r = matching_size_estimate(&subset, 0.2, &mut o, &opts).unwrap();
            assert!(r.exhaustive);
            assert_eq!(r.value.fract(), 0.0);
            check_maximal(&m, &subset, r.value);
        }
    }

    #[test]
    fn perfect_matching_subset() {
        let n = 30;
        let mut edges: Vec<(usize, usize, i64)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1, 1)).collect();
        edges.extend((0..n / 2 - 1).map(|i| (2 * i + 1, 2 * i + 2, 3)));
        let m = metric_from_graph(&WeightedGraph::new(n, edges).unwrap()).unwrap();
        let mut o = CountingOracle::new(&m);
        let subset: Vec<usize> = (0..n).collect();
        let r = matching_size_estimate(&subset, 0.1, &mut o, &MatchingOptions::default()).unwrap();
        assert_eq!(r.value, (n / 2) as f64);
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let m = crate::gen::gen_graphic(50, 10, 2);
        let mut o = CountingOracle::new(&m);
        let subset: Vec<usize> = (0..50).collect();
        let opts = MatchingOptions { budget: Some(20), ..Default::default() };
        let r = matching_size_estimate(&subset, 0.1, &mut o, &opts).unwrap();
        assert!(r.budget_hit);
        assert!(r.queries <= 20);
    }
}
