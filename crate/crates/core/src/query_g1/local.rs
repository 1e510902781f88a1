use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::{exact_reconfiguration, Reconfiguration};
use crate::oracle::CountingOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Fail,
}

#[derive(Clone, Debug)]
pub struct LocalResult {
    pub status: Status,
    /// `V(S)` in increasing order; empty on failure.
    pub vertices: Vec<usize>,
    /// Weight-1 edges of `G₁[S]`.
    pub edges: Vec<(usize, usize)>,
    /// The bridge `(inside, outside)` that cuts `S` off.
    pub bridge: Option<(usize, usize)>,
    /// Query calls issued by this invocation.
    pub queries: u64,
    /// Vertices explored before the checking phase.
    pub explored: usize,
}

impl LocalResult {
    fn fail(queries: u64, explored: usize) -> Self {
        LocalResult { status: Status::Fail, vertices: vec![], edges: vec![], bridge: None, queries, explored }
    }
}

/// Searches for the maximal `s`-light subgraph of `G₁` containing `v`.
///
/// Exploring phase: a search tree rooted at `v` grows by exploring `v`, then
/// its children, then one unexplored vertex per child subtree in turn, until
/// `2s` vertices are explored. Exploring `x` queries `x` against every vertex,
/// so explored vertices have fully known weight-1 neighborhoods.
///
/// Checking phase: with `v̂` the lowest common ancestor of the unexplored tree
/// vertices, cut above the deepest `v*` on the path from `v`'s child towards
/// `v̂` such that at most `s` vertices remain and the tree edge above `v*` is
/// their single weight-1 exit.
pub fn local(v: usize, s: usize, oracle: &mut CountingOracle) -> Result<LocalResult> {
    let n = oracle.n();
    if v >= n {
        return Err(Error::OutOfRange(v));
    }
    if s == 0 || 2 * s >= n {
        return Err(Error::BadParameters(format!("local needs 1 <= s < n/2, got s={s}, n={n}")));
    }
    const NONE: usize = usize::MAX;
    let mut queries = 0u64;
    let mut parent = vec![NONE; n];
    let mut branch = vec![NONE; n];
    let mut in_tree = vec![false; n];
    let mut explored = vec![false; n];
    let mut nbrs: Vec<Vec<usize>> = vec![vec![]; n];
    let mut members = vec![v];
    in_tree[v] = true;
    let mut queues: Vec<VecDeque<usize>> = vec![];

    let mut explore = |x: usize,
                       oracle: &mut CountingOracle,
                       parent: &mut Vec<usize>,
                       branch: &mut Vec<usize>,
                       in_tree: &mut Vec<bool>,
                       members: &mut Vec<usize>,
                       queues: &mut Vec<VecDeque<usize>>|
     -> Result<()> {
        for y in 0..n {
            if y == x {
                continue;
            }
            queries += 1;
            if oracle.query(x, y)? != 1 {
                continue;
            }
            nbrs[x].push(y);
            if !in_tree[y] {
                in_tree[y] = true;
                parent[y] = x;
                members.push(y);
                if x == v {
                    branch[y] = queues.len();
                    queues.push(VecDeque::from([y]));
                } else {
                    branch[y] = branch[x];
                    queues[branch[x]].push_back(y);
                }
            }
        }
        Ok(())
    };

    explore(v, oracle, &mut parent, &mut branch, &mut in_tree, &mut members, &mut queues)?;
    explored[v] = true;
    let mut count = 1;
    let mut turn = 0;
    while count < 2 * s {
        let k = queues.len();
        let Some(i) = (0..k).map(|j| (turn + j) % k).find(|&i| !queues[i].is_empty()) else {
            break;
        };
        let x = queues[i].pop_front().expect("non-empty queue");
        explore(x, oracle, &mut parent, &mut branch, &mut in_tree, &mut members, &mut queues)?;
        explored[x] = true;
        count += 1;
        turn = i + 1;
    }

    let unexplored: Vec<usize> = members.iter().copied().filter(|&x| !explored[x]).collect();
    if unexplored.is_empty() {
        // The search exhausted the component of `v`.
        return Err(Error::PromiseViolated(format!(
            "weight-1 component of vertex {v} has {} of {n} vertices",
            members.len()
        )));
    }
    let first = branch[unexplored[0]];
    if unexplored.iter().any(|&x| branch[x] != first) {
        return Ok(LocalResult::fail(queries, count));
    }

    // Depths and subtree sizes; `members` lists parents before children.
    let mut depth = vec![0usize; n];
    for &x in &members[1..] {
        depth[x] = depth[parent[x]] + 1;
    }
    let mut size = vec![0usize; n];
    for &x in members.iter().rev() {
        size[x] += 1;
        if x != v {
            size[parent[x]] += size[x];
        }
    }
    let lca = |mut a: usize, mut b: usize| {
        while depth[a] > depth[b] {
            a = parent[a];
        }
        while depth[b] > depth[a] {
            b = parent[b];
        }
        while a != b {
            a = parent[a];
            b = parent[b];
        }
        a
    };
    let v_hat = unexplored[1..].iter().fold(unexplored[0], |acc, &x| lca(acc, x));
    let total = members.len();
    let mut path = vec![];
    let mut x = v_hat;
    while x != v {
        path.push(x);
        x = parent[x];
    }
    path.reverse();
    let v_i = path[0];
    if total - size[v_i] > s {
        return Ok(LocalResult::fail(queries, count));
    }
    // Deepest cut on the path that leaves at most `s` vertices and whose tree
    // edge is the single weight-1 exit of the remaining part.
    let mut chosen = None;
    for &x in path.iter().rev().filter(|&&x| total - size[x] <= s) {
        let mut cut = vec![false; n];
        for &y in &members {
            cut[y] = y == x || (y != v && cut[parent[y]]);
        }
        let verts: Vec<usize> = members.iter().copied().filter(|&y| !cut[y]).collect();
        let mut inside = vec![false; n];
        verts.iter().for_each(|&y| inside[y] = true);
        let exits: usize = verts.iter().map(|&y| nbrs[y].iter().filter(|&&z| !inside[z]).count()).sum();
        if exits == 1 {
            chosen = Some((x, verts));
            break;
        }
    }
    let Some((v_star, mut verts)) = chosen else {
        return Ok(LocalResult::fail(queries, count));
    };
    verts.sort_unstable();
    let mut edges = vec![];
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            queries += 1;
            if oracle.query(a, b)? == 1 {
                edges.push((a, b));
            }
        }
    }
    Ok(LocalResult {
        status: Status::Success,
        vertices: verts,
        edges,
        bridge: Some((parent[v_star], v_star)),
        queries,
        explored: count,
    })
}

/// `min{w(u, u') : u' ∉ S}`.
pub fn out_reach(u: usize, set: &[usize], oracle: &mut CountingOracle) -> Result<i64> {
    let n = oracle.n();
    let mut inside = vec![false; n];
    set.iter().for_each(|&x| inside[x] = true);
    let mut best = i64::MAX;
    for y in (0..n).filter(|&y| !inside[y]) {
        best = best.min(oracle.query(u, y)?);
    }
    Ok(best)
}

/// Minimum-cost reconfiguration of a light subgraph's vertex set.
///
/// Queries every pair in `V(S) × V`, at most `|V(S)|·n` of them.
pub fn reconfig_cost(set: &[usize], oracle: &mut CountingOracle) -> Result<(Reconfiguration, u64)> {
    let before = oracle.distinct();
    let mut ord = Vec::with_capacity(set.len());
    for &u in set {
        ord.push(out_reach(u, set, oracle)?);
    }
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            oracle.query(a, b)?;
        }
    }
    let known = |a: usize, b: usize| oracle.known(a, b).expect("pair inside S was queried");
    let rc = exact_reconfiguration(set, known, &ord);
    Ok((rc, oracle.distinct() - before))
}
