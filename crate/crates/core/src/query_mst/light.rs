use crate::tree::{RootedTree, NONE};

/// Maximal `ℓ`-light vertices and the peeled tree `T'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LightPeel {
    pub ell: usize,
    /// `L_ℓ`, sorted.
    pub light: Vec<usize>,
    /// Membership in `V(T')`.
    pub in_top: Vec<bool>,
    /// `E(T')` as edge names.
    pub top_edges: Vec<usize>,
    /// For a vertex below the peel, the maximal light vertex above it (itself
    /// included); `NONE` on `T'`.
    pub owner: Vec<usize>,
}

impl LightPeel {
    pub fn top_vertices(&self) -> Vec<usize> {
        (0..self.in_top.len()).filter(|&v| self.in_top[v]).collect()
    }

    /// `X_ℓ(v)`: maximal light children of `v`.
    pub fn light_children(&self, tree: &RootedTree, v: usize) -> Vec<usize> {
        if !self.in_top[v] {
            return vec![];
        }
        tree.children(v).iter().copied().filter(|&c| !self.in_top[c]).collect()
    }

    /// `n_ℓ(v) = Σ_{u ∈ X_ℓ(v)} |V(T_u)|`.
    pub fn n_ell(&self, tree: &RootedTree, v: usize) -> usize {
        self.light_children(tree, v).iter().map(|&u| tree.size(u)).sum()
    }

    /// Edge names of the light subtree `T⁺_u`.
    pub fn light_subtree(&self, tree: &RootedTree, u: usize) -> Vec<usize> {
        let mut e = tree.subtree_edges(u);
        e.push(u);
        e.sort_unstable();
        e
    }

    /// Leaves of `T'`, not counting the root.
    pub fn top_leaves(&self, tree: &RootedTree) -> usize {
        (0..tree.n())
            .filter(|&v| self.in_top[v] && v != tree.root())
            .filter(|&v| tree.children(v).iter().all(|&c| !self.in_top[c]))
            .count()
    }
}

/// Splits `T` into `T'` and the maximal `ℓ`-light subtrees hanging from it.
///
/// A non-root vertex is maximal `ℓ`-light when its subtree has at most `ℓ`
/// vertices and its parent's has more.
pub fn light_peel(tree: &RootedTree, ell: usize) -> LightPeel {
    let n = tree.n();
    let mut in_top = vec![true; n];
    let mut owner = vec![NONE; n];
    let mut light = vec![];
    for &v in tree.order() {
        let Some(p) = tree.parent(v) else { continue };
        if !in_top[p] {
            in_top[v] = false;
            owner[v] = owner[p];
        } else if tree.size(v) <= ell {
            in_top[v] = false;
            owner[v] = v;
            light.push(v);
        }
    }
    light.sort_unstable();
    let top_edges = (0..n).filter(|&v| v != tree.root() && in_top[v]).collect();
    let peel = LightPeel { ell, light, in_top, top_edges, owner };
    debug_assert!(peel.top_leaves(tree) * ell <= n);
    peel
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    /// `T_P` for a chunk `P` of a path of `T'`.
    Chunk { path: Vec<usize>, n_ell: usize },
    /// Light subtrees hanging from a special or giant vertex `at`, joined there.
    Bundle { at: usize, children: Vec<usize> },
    /// The edge above a special or giant vertex.
    Link(usize),
}

/// Edge-disjoint subtrees of `T` covering every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentSet {
    pub segments: Vec<Vec<usize>>,
    pub kinds: Vec<SegmentKind>,
    pub vertex_counts: Vec<usize>,
    /// Vertices of `T'` with `T'`-degree other than 2.
    pub special: Vec<usize>,
    /// Vertices with `n_ℓ(v) ≥ 10ℓ`.
    pub giant: Vec<usize>,
}

impl SegmentSet {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Partitions `T` into segments.
///
/// Special and giant vertices of `T'` stand alone, and so does their parent
/// edge. A special vertex keeps its light subtrees in one bundle; a giant one
/// splits them into bundles closed once their size reaches `ℓ`. The remaining paths
/// of `T'` are cut into chunks, closing a chunk once `Σ (1 + n_ℓ(v)) ≥ ℓ`;
/// a chunk's segment holds its vertices' parent edges and light subtrees.
pub fn partition_segments(tree: &RootedTree, peel: &LightPeel) -> SegmentSet {
    let n = tree.n();
    let ell = peel.ell;
    let top = peel.top_vertices();
    let deg = tree.edge_set_degrees(&peel.top_edges);
    let special: Vec<usize> = top.iter().copied().filter(|&v| deg[v] != 2).collect();
    let nl: Vec<usize> = (0..n).map(|v| if peel.in_top[v] { peel.n_ell(tree, v) } else { 0 }).collect();
    let giant: Vec<usize> = top.iter().copied().filter(|&v| nl[v] >= 10 * ell).collect();
    let mut sep = vec![false; n];
    special.iter().chain(&giant).for_each(|&v| sep[v] = true);

    let mut segments = vec![];
    let mut kinds = vec![];
    for &v in top.iter().filter(|&&v| sep[v]) {
        let cut = if nl[v] >= 10 * ell { ell } else { usize::MAX };
        let mut bundle = vec![];
        let mut size = 0;
        let kids = peel.light_children(tree, v);
        for (i, &u) in kids.iter().enumerate() {
            bundle.push(u);
            size += tree.size(u);
            if size >= cut || i + 1 == kids.len() {
                let mut edges: Vec<usize> = bundle.iter().flat_map(|&u| peel.light_subtree(tree, u)).collect();
                edges.sort_unstable();
                segments.push(edges);
                kinds.push(SegmentKind::Bundle { at: v, children: std::mem::take(&mut bundle) });
                size = 0;
            }
        }
        if v != tree.root() {
            segments.push(vec![v]);
            kinds.push(SegmentKind::Link(v));
        }
    }

    // Components of T' minus the separated vertices are paths.
    let mut adj: Vec<Vec<usize>> = vec![vec![]; n];
    for &e in &peel.top_edges {
        let p = tree.parent(e).expect("edge has a parent");
        if !sep[e] && !sep[p] {
            adj[e].push(p);
            adj[p].push(e);
        }
    }
    let mut seen = vec![false; n];
    let mut paths = vec![];
    let starts = top.iter().copied().filter(|&v| !sep[v] && adj[v].len() <= 1);
    for s in starts.chain(top.iter().copied().filter(|&v| !sep[v])) {
        if seen[s] {
            continue;
        }
        let mut path = vec![s];
        seen[s] = true;
        let mut cur = s;
        while let Some(&nx) = adj[cur].iter().find(|&&x| !seen[x]) {
            seen[nx] = true;
            path.push(nx);
            cur = nx;
        }
        paths.push(path);
    }
    for q in paths {
        let mut chunk = vec![];
        let mut acc = 0;
        for (i, &v) in q.iter().enumerate() {
            chunk.push(v);
            acc += 1 + nl[v];
            if acc >= ell || i + 1 == q.len() {
                let mut edges = vec![];
                for &x in &chunk {
                    if x != tree.root() {
                        edges.push(x);
                    }
                    for u in peel.light_children(tree, x) {
                        edges.extend(peel.light_subtree(tree, u));
                    }
                }
                edges.sort_unstable();
                let n_ell = chunk.iter().map(|&x| nl[x]).sum();
                if !edges.is_empty() {
                    segments.push(edges);
                    kinds.push(SegmentKind::Chunk { path: std::mem::take(&mut chunk), n_ell });
                }
                chunk.clear();
                acc = 0;
            }
        }
    }
    let vertex_counts = segments.iter().map(|s| tree.edge_set_vertices(s).len()).collect();
    SegmentSet { segments, kinds, vertex_counts, special, giant }
}

/// Root-to-leaf chains of the long-path decomposition below the peel.
///
/// Each chain starts with edge `first` and follows the child with the heaviest
/// downward path. `lengths` of chains, taken greedily in decreasing order,
/// give the heaviest unions of that many root-to-leaf paths.
#[derive(Clone, Debug)]
struct LongPaths {
    down: Vec<i64>,
    heavy: Vec<usize>,
}

impl LongPaths {
    fn new(tree: &RootedTree, peel: &LightPeel) -> Self {
        let n = tree.n();
        let mut down = vec![0i64; n];
        let mut heavy = vec![NONE; n];
        for &v in tree.order().iter().rev() {
            if peel.in_top[v] {
                continue;
            }
            for &c in tree.children(v) {
                let d = tree.weight(c) + down[c];
                if heavy[v] == NONE || d > down[v] {
                    down[v] = d;
                    heavy[v] = c;
                }
            }
        }
        LongPaths { down, heavy }
    }

    fn chain(&self, first: usize) -> Vec<usize> {
        let mut out = vec![first];
        let mut x = first;
        while self.heavy[x] != NONE {
            x = self.heavy[x];
            out.push(x);
        }
        out
    }

    /// Chains of the light subtree `T⁺_u`, heaviest first.
    fn chains_in(&self, tree: &RootedTree, u: usize) -> Vec<(i64, usize)> {
        let mut out = vec![(tree.weight(u) + self.down[u], u)];
        for x in tree.subtree_vertices(u) {
            for &c in tree.children(x) {
                if c != self.heavy[x] {
                    out.push((tree.weight(c) + self.down[c], c));
                }
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        out
    }
}

/// A union of nice paths hanging below `T'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub edges: Vec<usize>,
    pub weight: i64,
    /// Edge names of each chosen chain, top-down.
    pub paths: Vec<Vec<usize>>,
}

fn take_chains(tree: &RootedTree, lp: &LongPaths, chains: &[(i64, usize)], k: usize) -> Extension {
    let mut edges = vec![];
    let mut paths = vec![];
    for &(_, first) in chains.iter().take(k) {
        let c = lp.chain(first);
        edges.extend_from_slice(&c);
        paths.push(c);
    }
    edges.sort_unstable();
    let weight = tree.edge_set_weight(&edges);
    Extension { edges, weight, paths }
}

/// Maximum-weight union of `k` nice paths, each running from a vertex of
/// `T'` down into one of its light subtrees.
pub fn max_k_extension(tree: &RootedTree, peel: &LightPeel, k: usize) -> Extension {
    let lp = LongPaths::new(tree, peel);
    let mut all: Vec<(i64, usize)> = peel.light.iter().flat_map(|&u| lp.chains_in(tree, u)).collect();
    all.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    take_chains(tree, &lp, &all, k)
}

/// Per light subtree `T⁺_u`, the heaviest subtree rooted at `parent(u)` with
/// at most `c` leaves, as `(u, extension)`.
pub fn heaviest_c_subtrees(tree: &RootedTree, peel: &LightPeel, c: usize) -> Vec<(usize, Extension)> {
    let lp = LongPaths::new(tree, peel);
    peel.light.iter().map(|&u| (u, take_chains(tree, &lp, &lp.chains_in(tree, u), c))).collect()
}
