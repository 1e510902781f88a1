use std::collections::HashMap;

use super::Status;
use crate::error::{Error, Result};
use crate::oracle::CountingOracle;

#[derive(Clone, Debug)]
pub struct BfsResult {
    pub status: Status,
    /// Tree vertices in discovery order with `(parent, level)`; the root has no parent.
    pub tree: Vec<(usize, Option<usize>, usize)>,
    /// `v*` to `v**` through the root; empty on failure.
    pub support_path: Vec<usize>,
    /// `V(H_v) = V(T)` on success.
    pub h_vertices: Vec<usize>,
    /// Weight-1 edges of `H_v`.
    pub h_edges: Vec<(usize, usize)>,
    pub ends: Option<(usize, usize)>,
    /// Distinct pairs queried by this call.
    pub queries: u64,
    /// Every query of this call, in order.
    pub log: Vec<(usize, usize, i64)>,
}

struct Probe<'a, 'm> {
    oracle: &'a mut CountingOracle<'m>,
    seen: HashMap<(usize, usize), i64>,
    log: Vec<(usize, usize, i64)>,
    /// `Q(u)`: vertices whose distance to `u` is known to this call.
    asked: Vec<Vec<usize>>,
    cap: u64,
}

impl Probe<'_, '_> {
    /// `None` once the distinct-pair counter has reached the cap.
    fn get(&mut self, a: usize, b: usize) -> Result<Option<i64>> {
        let key = (a.min(b), a.max(b));
        if let Some(&d) = self.seen.get(&key) {
            return Ok(Some(d));
        }
        if self.seen.len() as u64 >= self.cap {
            return Ok(None);
        }
        let d = self.oracle.query(a, b)?;
        self.seen.insert(key, d);
        self.log.push((a, b, d));
        self.asked[a].push(b);
        self.asked[b].push(a);
        Ok(Some(d))
    }
}

/// Bounded breadth-first search in `G₁` to depth `h` from `v`.
///
/// Stage 1 queries `v` against all vertices. At stage `i`, for each level
/// `i−1` vertex `v_j` and each vertex `v̂` outside the tree, the pairs
/// `(v', v_j)` for `v' ∈ Q(v̂)` are queried and `w(v_j, v̂)` is queried only if
/// `max_{v'} w(v', v̂) − w(v', v_j) ≤ 1`. The search fails once `q` distinct
/// pairs have been queried before stage `h` completes.
///
/// Success requires at most `α·h` tree vertices, exactly two vertices at level
/// `h`, and root paths to them that leave the root through different children.
/// On success all pairs inside the tree are queried to build `H_v`.
pub fn bfs(v: usize, h: usize, q: u64, alpha: f64, oracle: &mut CountingOracle) -> Result<BfsResult> {
    let n = oracle.n();
    if v >= n {
        return Err(Error::OutOfRange(v));
    }
    if h == 0 || q < n as u64 || !(alpha > 0.0) {
        return Err(Error::BadParameters(format!("bfs needs h >= 1, q >= n, alpha > 0 (h={h}, q={q})")));
    }
    let cap_tree = (alpha * h as f64).floor() as usize;
    let mut p = Probe { oracle, seen: HashMap::new(), log: vec![], asked: vec![vec![]; n], cap: q };
    let mut parent = vec![None; n];
    let mut level = vec![usize::MAX; n];
    let mut order = vec![v];
    level[v] = 0;
    let mut frontier = vec![];
    for u in (0..n).filter(|&u| u != v) {
        let d = p.get(v, u)?.expect("q >= n covers stage one");
        if d == 1 {
            level[u] = 1;
            parent[u] = Some(v);
            order.push(u);
            frontier.push(u);
        }
    }
    let mut completed = 1;
    'stages: for i in 2..=h {
        if frontier.is_empty() || order.len() > cap_tree {
            break;
        }
        let mut next = vec![];
        for &vj in &frontier {
            for vh in 0..n {
                if level[vh] != usize::MAX {
                    continue;
                }
                let qs = p.asked[vh].clone();
                let mut x = i64::MIN;
                for &vp in &qs {
                    let Some(a) = p.get(vp, vj)? else { break 'stages };
                    let b = p.seen[&(vp.min(vh), vp.max(vh))];
                    x = x.max(b - a);
                }
                if x <= 1 {
                    let Some(d) = p.get(vj, vh)? else { break 'stages };
                    if d == 1 {
                        level[vh] = i;
                        parent[vh] = Some(vj);
                        order.push(vh);
                        next.push(vh);
                    }
                }
            }
        }
        frontier = next;
        completed = i;
    }

    let tree: Vec<_> = order.iter().map(|&u| (u, parent[u], level[u])).collect();
    let top: Vec<usize> = order.iter().copied().filter(|&u| level[u] == h).collect();
    let first_child = |mut u: usize| {
        while parent[u] != Some(v) {
            u = parent[u].expect("tree vertex below the root");
        }
        u
    };
    let ok = completed == h
        && order.len() <= cap_tree
        && top.len() == 2
        && (h == 1 || first_child(top[0]) != first_child(top[1]));
    if !ok {
        let queries = p.seen.len() as u64;
        return Ok(BfsResult {
            status: Status::Fail,
            tree,
            support_path: vec![],
            h_vertices: vec![],
            h_edges: vec![],
            ends: None,
            queries,
            log: p.log,
        });
    }

    p.cap = u64::MAX;
    let mut h_vertices = order.clone();
    h_vertices.sort_unstable();
    let mut h_edges = vec![];
    for (i, &a) in h_vertices.iter().enumerate() {
        for &b in &h_vertices[i + 1..] {
            if p.get(a, b)? == Some(1) {
                h_edges.push((a, b));
            }
        }
    }
    let up = |mut u: usize| {
        let mut out = vec![u];
        while let Some(w) = parent[u] {
            out.push(w);
            u = w;
        }
        out
    };
    let mut support_path = up(top[0]);
    let mut back = up(top[1]);
    back.pop();
    back.reverse();
    support_path.extend(back);
    let queries = p.seen.len() as u64;
    Ok(BfsResult {
        status: Status::Success,
        tree,
        support_path,
        h_vertices,
        h_edges,
        ends: Some((top[0], top[1])),
        queries,
        log: p.log,
    })
}
