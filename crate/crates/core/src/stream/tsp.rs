use super::{DynForest, StreamSession};
use crate::error::{Error, Result};
use crate::tree::RootedTree;

pub const ALPHA_TWOPASS: f64 = 0.715;
pub const BETA_TWOPASS: f64 = 0.285;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    CoverFound,
    CoverAbsent,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::CoverFound => "cover-found",
            Branch::CoverAbsent => "cover-absent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwoPassResult {
    pub value: f64,
    pub branch: Branch,
    /// Accepted non-tree pairs.
    pub e_star: Vec<(usize, usize, i64)>,
    pub cov_weight: i64,
    pub mst: i64,
    /// MST from the first pass, rooted at 0.
    pub tree: RootedTree,
    pub alpha: f64,
    pub beta: f64,
    pub peak_words: u64,
    pub passes: usize,
}

impl TwoPassResult {
    /// `2 − (1−α)β/2`.
    pub fn multiplier(alpha: f64, beta: f64) -> f64 {
        2.0 - (1.0 - alpha) * beta / 2.0
    }
}

/// Deterministic two-pass TSP estimate over a graph stream.
///
/// Pass 1 builds the MST. Pass 2 accepts an edge when its weight is at most
/// `α` times the weight of the tree edges it covers that are still unmarked,
/// then marks them.
pub fn run_twopass_tsp(session: &mut StreamSession, alpha: f64, beta: f64) -> Result<TwoPassResult> {
    if !(0.0 < alpha && alpha < 1.0 && 0.0 < beta && beta < 1.0) {
        return Err(Error::BadParameters(format!("alpha and beta must lie in (0, 1), got {alpha}, {beta}")));
    }
    let n = session.n();
    let mut f = DynForest::new(n);
    session.pass(|m, u, v, w| {
        f.insert(u, v, w);
        m.set("forest", f.words());
        Ok(())
    })?;
    let edges = f.edges();
    let tree = RootedTree::from_edges(n, 0, &edges)?;
    let mst = f.weight();
    drop(f);
    session.meter().set("forest", 0);
    session.meter().set("tree", 3 * n as u64);
    session.meter().set("marked", n as u64);

    let mut marked = vec![false; n];
    let mut e_star = Vec::new();
    let mut cov_weight = 0i64;
    session.pass(|m, u, v, w| {
        let path = tree.path_edges(u, v);
        let fresh: i64 = path.iter().filter(|&&e| !marked[e]).map(|&e| tree.weight(e)).sum();
        if fresh > 0 && w as f64 <= alpha * fresh as f64 {
            for e in path {
                if !marked[e] {
                    marked[e] = true;
                    cov_weight += tree.weight(e);
                }
            }
            e_star.push((u, v, w));
            m.set("e_star", 3 * e_star.len() as u64);
        }
        Ok(())
    })?;
    let (branch, value) = if cov_weight as f64 >= beta * mst as f64 {
        (Branch::CoverFound, TwoPassResult::multiplier(alpha, beta) * mst as f64)
    } else {
        (Branch::CoverAbsent, 2.0 * mst as f64)
    };
    Ok(TwoPassResult {
        value,
        branch,
        e_star,
        cov_weight,
        mst,
        tree,
        alpha,
        beta,
        peak_words: session.peak_words(),
        passes: session.passes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::WeightedGraph;
    use crate::stream::Order;

    #[test]
    fn paper_multiplier() {
        let m = TwoPassResult::multiplier(ALPHA_TWOPASS, BETA_TWOPASS);
        assert!((m - 1.9593875).abs() < 1e-12);
        assert!((m - 1.9594).abs() < 1e-4);
    }

    #[test]
    fn tree_input_has_no_cover() {
        let g = WeightedGraph::new(5, vec![(0, 1, 2), (1, 2, 1), (1, 3, 4), (3, 4, 1)]).unwrap();
        let mut s = StreamSession::graph(&g, Order::AsGiven);
        let r = run_twopass_tsp(&mut s, ALPHA_TWOPASS, BETA_TWOPASS).unwrap();
        assert_eq!(r.branch, Branch::CoverAbsent);
        assert_eq!(r.value, 16.0);
        assert!(r.e_star.is_empty());
        assert_eq!(r.passes, 2);
    }

    #[test]
    fn cheap_chord_is_accepted() {
        // Path 0-1-2-3 with weights 5 plus a chord 0-3 of weight 10.
        let g = WeightedGraph::new(4, vec![(0, 1, 5), (1, 2, 5), (2, 3, 5), (0, 3, 10)]).unwrap();
        let mut s = StreamSession::graph(&g, Order::AsGiven);
        let r = run_twopass_tsp(&mut s, ALPHA_TWOPASS, BETA_TWOPASS).unwrap();
        assert_eq!(r.e_star, vec![(0, 3, 10)]);
        assert_eq!(r.cov_weight, 15);
        assert_eq!(r.branch, Branch::CoverFound);
        assert!(r.e_star.iter().map(|e| e.2 as f64).sum::<f64>() <= ALPHA_TWOPASS * r.cov_weight as f64);
    }
}
