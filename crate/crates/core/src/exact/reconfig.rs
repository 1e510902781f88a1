use petgraph::unionfind::UnionFind;

use super::{ExactResult, Half};

/// Largest vertex count searched exhaustively.
pub const MAX_EXACT_RECONFIG: usize = 6;

/// Cost and pair multiset (multiplicity by repetition) of a reconfiguration.
pub type Reconfiguration = ExactResult<Half, Vec<(usize, usize)>>;

/// Cost of a pair multiset: `Σ w + ½ Σ_{odd} ord − (|V| − 1)`.
/// Returns `None` when the multiset does not connect `verts`.
pub fn reconfiguration_cost(
    verts: &[usize],
    pairs: &[(usize, usize)],
    dist: impl Fn(usize, usize) -> i64,
    ord: &[i64],
) -> Option<Half> {
    let s = verts.len();
    let pos = |v: usize| verts.iter().position(|&x| x == v).expect("pair endpoint outside the vertex set");
    let mut uf = UnionFind::<usize>::new(s);
    let mut deg = vec![0usize; s];
    let mut comps = s;
    let mut w = 0;
    for &(a, b) in pairs {
        let (i, j) = (pos(a), pos(b));
        deg[i] += 1;
        deg[j] += 1;
        w += dist(a, b);
        if uf.union(i, j) {
            comps -= 1;
        }
    }
    if comps > 1 {
        return None;
    }
    let odd: i64 = (0..s).filter(|&i| deg[i] % 2 == 1).map(|i| ord[i]).sum();
    Some(Half(2 * (w - (s as i64 - 1)) + odd))
}

/// Minimum-cost reconfiguration of the vertex set `verts`.
///
/// `ord[i]` is the out-reach distance of `verts[i]`. Exhaustive for up to
/// [`MAX_EXACT_RECONFIG`] vertices; otherwise the cheaper of a doubled MST and
/// an MST with greedily paired odd vertices, flagged inexact.
pub fn exact_reconfiguration(verts: &[usize], dist: impl Fn(usize, usize) -> i64, ord: &[i64]) -> Reconfiguration {
    assert_eq!(verts.len(), ord.len());
    let s = verts.len();
    if s <= 1 {
        return ExactResult { value: Half(0), witness: vec![], exact: true };
    }
    if s <= MAX_EXACT_RECONFIG {
        exhaustive(verts, &dist, ord)
    } else {
        heuristic(verts, &dist, ord)
    }
}

fn exhaustive(verts: &[usize], dist: &impl Fn(usize, usize) -> i64, ord: &[i64]) -> Reconfiguration {
    let s = verts.len();
    let pairs: Vec<(usize, usize)> = (0..s).flat_map(|i| (i + 1..s).map(move |j| (i, j))).collect();
    let pw: Vec<i64> = pairs.iter().map(|&(i, j)| dist(verts[i], verts[j])).collect();
    let mut best: Option<(Half, u32, Vec<(usize, usize)>)> = None;
    for mask in 0u32..1 << pairs.len() {
        let mut uf = UnionFind::<usize>::new(s);
        let mut deg = vec![0usize; s];
        let mut w = 0;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                deg[i] += 1;
                deg[j] += 1;
                w += pw[k];
                uf.union(i, j);
            }
        }
        // Doubled pairs keep parity, so they only repair connectivity:
        // two copies of an MST over the components is optimal for that.
        let mut cheapest: Vec<(i64, usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(_, &(i, j))| !uf.equiv(i, j))
            .map(|(k, &(i, j))| (pw[k], i, j))
            .collect();
        cheapest.sort_unstable();
        let mut doubled = Vec::new();
        for (x, i, j) in cheapest {
            if uf.union(i, j) {
                w += 2 * x;
                doubled.push((verts[i], verts[j]));
            }
        }
        let odd: i64 = (0..s).filter(|&i| deg[i] % 2 == 1).map(|i| ord[i]).sum();
        let cost = Half(2 * (w - (s as i64 - 1)) + odd);
        if best.as_ref().is_none_or(|b| cost < b.0) {
            let mut wit: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &(i, j))| (verts[i], verts[j]))
                .collect();
            for d in doubled {
                wit.push(d);
                wit.push(d);
            }
            best = Some((cost, mask, wit));
        }
    }
    let (value, _, witness) = best.expect("at least the empty subset is tried");
    ExactResult { value, witness, exact: true }
}

fn heuristic(verts: &[usize], dist: &impl Fn(usize, usize) -> i64, ord: &[i64]) -> Reconfiguration {
    let s = verts.len();
    // Prim over verts.
    let mut in_tree = vec![false; s];
    let mut best = vec![i64::MAX; s];
    let mut from = vec![0; s];
    best[0] = 0;
    let mut mst = Vec::with_capacity(s - 1);
    let mut mst_w = 0;
    for _ in 0..s {
        let u = (0..s).filter(|&v| !in_tree[v]).min_by_key(|&v| (best[v], v)).unwrap();
        in_tree[u] = true;
        if u != 0 {
            mst_w += best[u];
            mst.push((from[u], u));
        }
        for v in 0..s {
            let d = dist(verts[u], verts[v]);
            if !in_tree[v] && d < best[v] {
                best[v] = d;
                from[v] = u;
            }
        }
    }
    let base = s as i64 - 1;
    let doubled_cost = Half(2 * (2 * mst_w - base));

    let mut deg = vec![0usize; s];
    for &(a, b) in &mst {
        deg[a] += 1;
        deg[b] += 1;
    }
    let odd: Vec<usize> = (0..s).filter(|&i| deg[i] % 2 == 1).collect();
    // Pair odd vertices when the pair is cheaper than their two half out-reaches.
    let mut gains: Vec<(i64, usize, usize)> = Vec::new();
    for (x, &a) in odd.iter().enumerate() {
        for &b in &odd[x + 1..] {
            let g = 2 * dist(verts[a], verts[b]) - ord[a] - ord[b];
            if g < 0 {
                gains.push((g, a, b));
            }
        }
    }
    gains.sort_unstable();
    let mut paired = vec![false; s];
    let mut extra = Vec::new();
    let mut extra_w = 0;
    for (_, a, b) in gains {
        if !paired[a] && !paired[b] {
            paired[a] = true;
            paired[b] = true;
            extra.push((a, b));
            extra_w += dist(verts[a], verts[b]);
        }
    }
    let odd_ord: i64 = odd.iter().filter(|&&i| !paired[i]).map(|&i| ord[i]).sum();
    let single_cost = Half(2 * (mst_w + extra_w - base) + odd_ord);

    let map = |v: &(usize, usize)| (verts[v.0], verts[v.1]);
    if doubled_cost <= single_cost {
        let witness = mst.iter().flat_map(|e| [map(e), map(e)]).collect();
        ExactResult { value: doubled_cost, witness, exact: false }
    } else {
        let witness = mst.iter().chain(extra.iter()).map(map).collect();
        ExactResult { value: single_cost, witness, exact: false }
    }
}
