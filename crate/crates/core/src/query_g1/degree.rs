use rand::Rng as _;

use crate::error::Result;
use crate::estimate::Verdict;
use crate::oracle::CountingOracle;
use crate::rng::rng_for;

#[derive(Clone, Debug)]
pub struct Degree1Report {
    /// `AtLeast`: more than `εn/2` degree-1 vertices. `AtMost`: at most `2εn`.
    pub verdict: Verdict,
    /// Vertices probed (with repetition).
    pub sampled: usize,
    /// Probed vertices of weight-1 degree one.
    pub hits: usize,
    /// Every vertex was probed once.
    pub exhaustive: bool,
    pub queries: u64,
    /// A probed vertex had no weight-1 neighbor.
    pub isolated_seen: bool,
}

/// Sample size `⌈c·log₂n/ε⌉`; `c = 200` in the analysis.
pub fn degree1_samples(n: usize, eps: f64, c: f64) -> usize {
    (c * (n.max(2) as f64).log2() / eps).ceil() as usize
}

/// Threshold test on the number of vertices of weight-1 degree one.
///
/// Probes `L` vertices by querying their full rows and answers `AtLeast` when
/// at least `εL` of them have degree one. When `L ≥ n` every vertex is probed
/// once instead and the count is compared against `εn`.
pub fn degree1_test(eps: f64, c: f64, oracle: &mut CountingOracle, seed: u64) -> Result<Degree1Report> {
    let n = oracle.n();
    let want = degree1_samples(n, eps, c);
    let exhaustive = want >= n;
    let picks: Vec<usize> = if exhaustive {
        (0..n).collect()
    } else {
        let mut rng = rng_for(seed, "degree1");
        (0..want).map(|_| rng.gen_range(0..n)).collect()
    };
    let mut queries = 0u64;
    let mut hits = 0;
    let mut isolated_seen = false;
    for &u in &picks {
        let mut deg = 0;
        for x in (0..n).filter(|&x| x != u) {
            queries += 1;
            if oracle.query(u, x)? == 1 {
                deg += 1;
            }
        }
        hits += usize::from(deg == 1);
        isolated_seen |= deg == 0 && n > 1;
    }
    let verdict = if hits as f64 >= eps * picks.len() as f64 { Verdict::AtLeast } else { Verdict::AtMost };
    Ok(Degree1Report { verdict, sampled: picks.len(), hits, exhaustive, queries, isolated_seen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{metric_from_graph, WeightedGraph};

    #[test]
    fn cycle_has_none() {
        let n = 50;
        let g = WeightedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, 1)).collect()).unwrap();
        let m = metric_from_graph(&g).unwrap();
        let mut o = CountingOracle::new(&m);
        let r = degree1_test(0.1, 1.0, &mut o, 3).unwrap();
        assert_eq!(r.verdict, Verdict::AtMost);
        assert_eq!(r.hits, 0);
        assert!(r.queries <= (degree1_samples(n, 0.1, 1.0) * n) as u64);
    }

    #[test]
    fn star_leaves_dominate() {
        let n = 40;
        let g = WeightedGraph::new(n, (1..n).map(|i| (0, i, 1)).collect()).unwrap();
        let m = metric_from_graph(&g).unwrap();
        let mut o = CountingOracle::new(&m);
        let r = degree1_test(0.05, 200.0, &mut o, 1).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.hits, n - 1);
        assert_eq!(r.verdict, Verdict::AtLeast);
    }
}
