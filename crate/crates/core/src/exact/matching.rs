use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};

use super::ExactResult;
use crate::error::{Error, Result};

pub const MAX_WEIGHTED_MATCHING_N: usize = 16;

/// Maximum-cardinality matching of a general graph (Edmonds' blossom
/// algorithm, via petgraph).
pub fn exact_max_matching(n: usize, edges: &[(usize, usize)]) -> ExactResult<usize, Vec<(usize, usize)>> {
    let mut g = UnGraph::<(), ()>::with_capacity(n, edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    for &(u, v) in edges {
        if u != v {
            g.update_edge(NodeIndex::new(u), NodeIndex::new(v), ());
        }
    }
    let m = maximum_matching(&g);
    let mut pairs: Vec<(usize, usize)> = m
        .edges()
        .map(|(a, b)| (a.index().min(b.index()), a.index().max(b.index())))
        .collect();
    pairs.sort_unstable();
    ExactResult { value: pairs.len(), witness: pairs, exact: true }
}

/// Maximum-weight matching by subset dynamic programming, `n <= 16`.
pub fn exact_max_weight_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
) -> Result<ExactResult<i64, Vec<(usize, usize)>>> {
    if n > MAX_WEIGHTED_MATCHING_N {
        return Err(Error::TooLarge { what: "exact_max_weight_matching", size: n, cap: MAX_WEIGHTED_MATCHING_N });
    }
    let mut w = vec![i64::MIN; n * n];
    for &(u, v, x) in edges {
        if u != v && x > w[u * n + v] {
            w[u * n + v] = x;
            w[v * n + u] = x;
        }
    }
    let full = (1usize << n) - 1;
    // best[mask]: optimum using only vertices in mask.
    let mut best = vec![0i64; full + 1];
    let mut choice = vec![usize::MAX; full + 1];
    for mask in 1..=full {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        best[mask] = best[rest];
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= others - 1;
            let x = w[i * n + j];
            if x > 0 {
                let c = x + best[rest & !(1 << j)];
                if c > best[mask] {
                    best[mask] = c;
                    choice[mask] = j;
                }
            }
        }
    }
    let mut pairs = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        mask &= !(1 << i);
        let j = choice[mask | 1 << i];
        if j != usize::MAX {
            pairs.push((i, j));
            mask &= !(1 << j);
        }
    }
    Ok(ExactResult { value: best[full], witness: pairs, exact: true })
}
