use super::light::{heaviest_c_subtrees, LightPeel};
use crate::error::{Error, Result};
use crate::tree::{RootedTree, NONE};

/// A subtree of `T` with at most `c` leaves below its root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTree {
    /// `r_F`, the vertex of the tree closest to the root of `T`.
    pub root: usize,
    /// Edge names in `T`.
    pub edges: Vec<usize>,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTreeForest {
    pub trees: Vec<CTree>,
    pub c: usize,
}

impl CTreeForest {
    pub fn weight(&self) -> i64 {
        self.trees.iter().map(|t| t.weight).sum()
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn edge_sets(&self) -> Vec<Vec<usize>> {
        self.trees.iter().map(|t| t.edges.clone()).collect()
    }

    /// Builds a forest from edge sets, checking that each is a subtree with at
    /// most `c` leaves and that the set is independent.
    pub fn from_edge_sets(tree: &RootedTree, sets: Vec<Vec<usize>>, c: usize) -> Result<Self> {
        let mut trees = vec![];
        for mut edges in sets {
            edges.sort_unstable();
            edges.dedup();
            if edges.is_empty() || !tree.edge_set_is_connected(&edges) {
                return Err(Error::BadParameters("c-tree must be a non-empty subtree".into()));
            }
            let root = edges
                .iter()
                .map(|&e| tree.parent(e).expect("edge has a parent"))
                .min_by_key(|&p| tree.depth(p))
                .expect("non-empty");
            let deg = tree.edge_set_degrees(&edges);
            let leaves = tree.edge_set_vertices(&edges).into_iter().filter(|&v| v != root && deg[v] == 1).count();
            if leaves > c {
                return Err(Error::BadParameters(format!("subtree has {leaves} leaves, more than c = {c}")));
            }
            let weight = tree.edge_set_weight(&edges);
            trees.push(CTree { root, edges, weight });
        }
        let f = CTreeForest { trees, c };
        if !f.is_independent(tree) {
            return Err(Error::BadParameters("c-trees are not independent".into()));
        }
        Ok(f)
    }

    /// Edge-disjoint, and no non-root vertex of one tree is an ancestor or
    /// descendant of a non-root vertex of another. Shared roots are allowed.
    pub fn is_independent(&self, tree: &RootedTree) -> bool {
        let mut owner = vec![NONE; tree.n()];
        for (i, t) in self.trees.iter().enumerate() {
            for &e in &t.edges {
                if owner[e] != NONE {
                    return false;
                }
                owner[e] = i;
            }
        }
        // Non-root vertices are exactly the edge names.
        for (i, a) in self.trees.iter().enumerate() {
            for b in &self.trees[i + 1..] {
                for &x in &a.edges {
                    if b.edges.iter().any(|&y| tree.is_ancestor(x, y) || tree.is_ancestor(y, x)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// One `c`-tree per maximal light subtree: the heaviest subtree rooted at the
/// attachment vertex with at most `c` leaves.
pub fn build_ctree_forest(tree: &RootedTree, peel: &LightPeel, c: usize) -> CTreeForest {
    let trees = heaviest_c_subtrees(tree, peel, c)
        .into_iter()
        .filter(|(_, x)| !x.edges.is_empty())
        .map(|(u, x)| CTree { root: tree.parent(u).expect("light vertices are not the root"), edges: x.edges, weight: x.weight })
        .collect();
    CTreeForest { trees, c }
}

/// The forest with every tree root identified into a super-root `r'`.
///
/// Skeleton vertex 0 is `r'`; the others are the forest's non-root vertices.
/// Edge names of the skeleton tree follow the usual child-name convention.
#[derive(Clone, Debug)]
pub struct Skeleton {
    /// Original vertex per skeleton vertex; `NONE` at `r'`.
    pub verts: Vec<usize>,
    /// Skeleton vertex per original vertex, `NONE` if absent. Tree roots map to 0.
    pub index: Vec<usize>,
    /// Forest tree per skeleton vertex; `NONE` at `r'`.
    pub tree_of: Vec<usize>,
    pub roots: Vec<usize>,
    pub tree: RootedTree,
    /// Skeleton edge names of each forest tree.
    pub tree_edges: Vec<Vec<usize>>,
    /// Skeleton special vertices of each forest tree (`r'` included).
    pub special: Vec<Vec<usize>>,
    /// `w'_i`.
    pub weights: Vec<i64>,
}

impl Skeleton {
    pub fn new(tree: &RootedTree, forest: &CTreeForest) -> Result<Self> {
        if !forest.is_independent(tree) {
            return Err(Error::BadParameters("c-trees are not independent".into()));
        }
        let n = tree.n();
        let mut verts = vec![NONE];
        let mut index = vec![NONE; n];
        let mut tree_of = vec![NONE];
        for (i, t) in forest.trees.iter().enumerate() {
            for &e in &t.edges {
                index[e] = verts.len();
                verts.push(e);
                tree_of.push(i);
            }
        }
        for t in &forest.trees {
            if index[t.root] != NONE && index[t.root] != 0 {
                return Err(Error::BadParameters(format!("root {} lies inside another tree", t.root)));
            }
            index[t.root] = 0;
        }
        let s = verts.len();
        let mut parent = vec![NONE; s];
        let mut pw = vec![0; s];
        for x in 1..s {
            let v = verts[x];
            let p = tree.parent(v).expect("non-root vertex");
            parent[x] = if p == forest.trees[tree_of[x]].root { 0 } else { index[p] };
            pw[x] = tree.weight(v);
        }
        let sk = RootedTree::from_parents(0, parent, pw)?;
        let tree_edges: Vec<Vec<usize>> = forest
            .trees
            .iter()
            .map(|t| {
                let mut e: Vec<usize> = t.edges.iter().map(|&v| index[v]).collect();
                e.sort_unstable();
                e
            })
            .collect();
        let special = tree_edges.iter().map(|e| sk.special_vertices(e)).collect();
        Ok(Skeleton {
            verts,
            index,
            tree_of,
            roots: forest.trees.iter().map(|t| t.root).collect(),
            tree: sk,
            tree_edges,
            special,
            weights: forest.trees.iter().map(|t| t.weight).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.verts.len()
    }

    /// `MST(w') = Σ w'_i`.
    pub fn mst(&self) -> i64 {
        self.weights.iter().sum()
    }

    /// The original pair whose distance is `w'(a, b)`; `None` when `a == b`.
    pub fn real_pair(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        match (a, b) {
            _ if a == b => None,
            (0, x) | (x, 0) => Some((self.verts[x], self.roots[self.tree_of[x]])),
            _ => Some((self.verts[a], self.verts[b])),
        }
    }

    pub fn w_prime(&self, a: usize, b: usize, dist: impl Fn(usize, usize) -> i64) -> i64 {
        self.real_pair(a, b).map_or(0, |(x, y)| dist(x, y))
    }

    /// Row-major `w'` table.
    pub fn table(&self, dist: impl Fn(usize, usize) -> i64) -> Vec<i64> {
        let s = self.size();
        let mut w = vec![0; s * s];
        for a in 0..s {
            for b in 0..s {
                w[a * s + b] = self.w_prime(a, b, &dist);
            }
        }
        w
    }
}
