use super::ExactResult;
use crate::metric::Metric;
use crate::tree::RootedTree;

/// Prim's algorithm on the complete graph. Ties go to the lowest index.
pub fn exact_mst(m: &Metric) -> ExactResult<i64, Vec<(usize, usize, i64)>> {
    let n = m.n();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return ExactResult { value: 0, witness: edges, exact: true };
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![i64::MAX; n];
    let mut from = vec![0usize; n];
    best[0] = 0;
    let mut total = 0;
    for _ in 0..n {
        let mut u = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (u == usize::MAX || best[v] < best[u]) {
                u = v;
            }
        }
        in_tree[u] = true;
        if u != 0 {
            total += best[u];
            edges.push((from[u], u, best[u]));
        }
        let row = m.row(u);
        for v in 0..n {
            if !in_tree[v] && row[v] < best[v] {
                best[v] = row[v];
                from[v] = u;
            }
        }
    }
    ExactResult { value: total, witness: edges, exact: true }
}

/// The MST of `m` rooted at `root`.
pub fn mst_tree(m: &Metric, root: usize) -> RootedTree {
    let r = exact_mst(m);
    RootedTree::from_edges(m.n(), root, &r.witness).expect("Prim output is a spanning tree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones() {
        assert_eq!(exact_mst(&Metric::from_fn(5, |_, _| 1)).value, 4);
    }

    #[test]
    fn single_vertex() {
        assert_eq!(exact_mst(&Metric::from_fn(1, |_, _| 1)).value, 0);
    }
}
