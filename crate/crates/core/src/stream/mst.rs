use std::collections::HashMap;

use rand::seq::index::sample;

use super::{DynForest, StreamSession};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::rng::rng_for;

/// Exact MST weight of a graph stream in one pass.
pub fn run_exact_mst_graphstream(session: &mut StreamSession) -> Result<i64> {
    let n = session.n();
    let mut f = DynForest::new(n);
    session.pass(|m, u, v, w| {
        f.insert(u, v, w);
        m.set("forest", f.words());
        Ok(())
    })?;
    if n > 0 && f.len() + 1 != n {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
        for (u, v, _) in f.edges() {
            uf.union(u, v);
        }
        let v = (1..n).find(|&v| !uf.equiv(0, v)).unwrap_or(0);
        return Err(Error::DisconnectedGraph(0, v));
    }
    Ok(f.weight())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MstEstimate {
    pub value: f64,
    /// MST weight over the sample `V'`.
    pub mst_prime: i64,
    /// Largest distance seen.
    pub diam: i64,
    /// `Σ_{v ∈ V''} dist(v, V')`.
    pub w_second: i64,
    pub v_prime: Vec<usize>,
    pub v_second: Vec<usize>,
    pub alpha: f64,
    pub c_boost: f64,
    pub log_n: f64,
    pub peak_words: u64,
}

impl MstEstimate {
    /// `MST' + c·α·log₂n·(diam + W'')`.
    pub fn formula(mst_prime: i64, diam: i64, w_second: i64, alpha: f64, c_boost: f64, log_n: f64) -> f64 {
        mst_prime as f64 + c_boost * alpha * log_n * (diam + w_second) as f64
    }
}

/// One-pass MST estimate over a metric stream.
///
/// Samples `V'` of size `k = ⌈n/α⌉` and `V'' ⊆ V ∖ V'` of size
/// `min(k, n − k)` before the pass, maintains an
/// MST over pairs inside `V'`, the largest distance, and `dist(v, V')` for
/// `v ∈ V''`.
pub fn run_onepass_mst_estimate(session: &mut StreamSession, alpha: f64, seed: u64, c_boost: f64) -> Result<MstEstimate> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::BadParameters(format!("alpha must be positive, got {alpha}")));
    }
    let n = session.n();
    if n < 2 {
        return Err(Error::BadParameters("need at least two points".into()));
    }
    let k = ((n as f64 / alpha).ceil() as usize).clamp(1, n);
    let mut v_prime = sample(&mut rng_for(seed, "onepass_v_prime"), n, k).into_vec();
    v_prime.sort_unstable();
    let rest: Vec<usize> = (0..n).filter(|v| v_prime.binary_search(v).is_err()).collect();
    let k2 = k.min(rest.len());
    let mut v_second: Vec<usize> =
        sample(&mut rng_for(seed, "onepass_v_second"), rest.len(), k2).into_iter().map(|i| rest[i]).collect();
    v_second.sort_unstable();
    let idx1: HashMap<usize, usize> = v_prime.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let idx2: HashMap<usize, usize> = v_second.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut dist2: Vec<i64> = vec![i64::MAX; k2];
    {
        let m = session.meter();
        m.set("samples", 2 * (k + k2) as u64);
        m.set("dist", k2 as u64);
        m.set("diam", 1);
    }
    let mut forest = DynForest::new(k);
    let mut diam = 0i64;
    session.pass(|m, u, v, w| {
        diam = diam.max(w);
        let (a, b) = (idx1.get(&u), idx1.get(&v));
        if let (Some(&a), Some(&b)) = (a, b) {
            forest.insert(a, b, w);
            m.set("forest", forest.words());
        }
        if b.is_some() {
            if let Some(&j) = idx2.get(&u) {
                dist2[j] = dist2[j].min(w);
            }
        }
        if a.is_some() {
            if let Some(&j) = idx2.get(&v) {
                dist2[j] = dist2[j].min(w);
            }
        }
        Ok(())
    })?;
    let w_second: i64 = dist2.iter().map(|&d| if d == i64::MAX { 0 } else { d }).sum();
    let log_n = (n as f64).log2();
    let value = MstEstimate::formula(forest.weight(), diam, w_second, alpha, c_boost, log_n);
    Ok(MstEstimate {
        value,
        mst_prime: forest.weight(),
        diam,
        w_second,
        v_prime,
        v_second,
        alpha,
        c_boost,
        log_n,
        peak_words: session.peak_words(),
    })
}

/// Offline `MST(V') + Σ_{v ∉ V'} dist(v, V')`, an upper bound on the MST.
pub fn sample_cover_bound(metric: &Metric, v_prime: &[usize]) -> i64 {
    let k = v_prime.len();
    let sub = Metric::from_fn(k, |i, j| metric.dist(v_prime[i], v_prime[j]));
    let inside = crate::exact::exact_mst(&sub).value;
    let mut in_set = vec![false; metric.n()];
    v_prime.iter().for_each(|&v| in_set[v] = true);
    let outside: i64 = (0..metric.n())
        .filter(|&v| !in_set[v])
        .map(|v| v_prime.iter().map(|&x| metric.dist(v, x)).min().unwrap_or(0))
        .sum();
    inside + outside
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_mst;
    use crate::gen::{gen_random_metric, Style};
    use crate::metric::WeightedGraph;
    use crate::stream::Order;

    #[test]
    fn unit_path_graph() {
        let g = WeightedGraph::new(6, (1..6).map(|i| (i - 1, i, 1)).collect()).unwrap();
        let mut s = StreamSession::graph(&g, Order::AsGiven);
        assert_eq!(run_exact_mst_graphstream(&mut s).unwrap(), 5);
        assert!(s.peak_words() <= 15);
    }

    #[test]
    fn disconnected_graph_errors() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1), (2, 3, 1)]).unwrap();
        let mut s = StreamSession::graph(&g, Order::AsGiven);
        assert!(matches!(run_exact_mst_graphstream(&mut s), Err(Error::DisconnectedGraph(..))));
    }

    #[test]
    fn full_sample_recovers_mst() {
        let m = gen_random_metric(20, 5, Style::WeightedClosure).unwrap();
        let mut s = StreamSession::metric(&m, Order::Shuffled(1));
        let e = run_onepass_mst_estimate(&mut s, 1.0, 9, 100.0).unwrap();
        assert_eq!(e.mst_prime, exact_mst(&m).value);
        assert_eq!(e.w_second, 0);
        assert!(e.value >= e.mst_prime as f64);
    }

    #[test]
    fn all_ones_closed_form() {
        let n = 40;
        let m = Metric::from_fn(n, |_, _| 1);
        let mut s = StreamSession::metric(&m, Order::Shuffled(2));
        let e = run_onepass_mst_estimate(&mut s, 4.0, 3, 100.0).unwrap();
        let k = 10;
        assert_eq!(e.mst_prime, k - 1);
        assert_eq!(e.diam, 1);
        assert!(e.v_second.iter().all(|v| !e.v_prime.contains(v)));
        assert_eq!(e.w_second, k);
        assert_eq!(e.value, MstEstimate::formula(k - 1, 1, k, 4.0, 100.0, (n as f64).log2()));
    }
}
