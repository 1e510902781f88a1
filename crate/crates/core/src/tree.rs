//! Rooted spanning trees.
//!
//! A tree edge is named by its child endpoint: edge `c` joins `c` and
//! `parent(c)`. Edge sets are sorted vectors of such names.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<usize>,
    pw: Vec<i64>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    size: Vec<usize>,
    order: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl RootedTree {
    /// Roots the spanning tree given by `edges` at `root`.
    pub fn from_edges(n: usize, root: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        if root >= n {
            return Err(Error::OutOfRange(root));
        }
        if edges.len() + 1 != n {
            return Err(Error::BadParameters(format!(
                "a spanning tree on {n} vertices needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::OutOfRange(u.max(v)));
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        let mut parent = vec![NONE; n];
        let mut pw = vec![0; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, w) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    pw[y] = w;
                    queue.push_back(y);
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::DisconnectedGraph(root, v));
        }
        Self::from_parents(root, parent, pw)
    }

    /// Builds from a parent array; `parent[root] == NONE`.
    pub fn from_parents(root: usize, parent: Vec<usize>, pw: Vec<i64>) -> Result<Self> {
        let n = parent.len();
        if root >= n || parent[root] != NONE || pw.len() != n {
            return Err(Error::BadParameters("malformed parent array".into()));
        }
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if v != root {
                let p = parent[v];
                if p >= n {
                    return Err(Error::BadParameters(format!("vertex {v} has no parent")));
                }
                children[p].push(v);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut depth = vec![0; n];
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for &c in &children[x] {
                depth[c] = depth[x] + 1;
                order.push(c);
            }
            i += 1;
        }
        if order.len() != n {
            return Err(Error::BadParameters("parent array contains a cycle".into()));
        }
        let mut size = vec![1; n];
        for &v in order.iter().rev() {
            if v != root {
                size[parent[v]] += size[v];
            }
        }
        // Preorder intervals for ancestor tests.
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut clock = 0;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next == 0 {
                tin[v] = clock;
                clock += 1;
            }
            if *next < children[v].len() {
                let c = children[v][*next];
                *next += 1;
                stack.push((c, 0));
            } else {
                tout[v] = clock;
                stack.pop();
            }
        }
        Ok(RootedTree {
            root,
            parent,
            pw,
            children,
            depth,
            size,
            order,
            tin,
            tout,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.parent[v];
        (p != NONE).then_some(p)
    }

    /// Weight of edge `v`, the edge to `v`'s parent.
    pub fn weight(&self, v: usize) -> i64 {
        self.pw[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Vertex count of the subtree rooted at `v`.
    pub fn size(&self, v: usize) -> usize {
        self.size[v]
    }

    /// Breadth-first order from the root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn total_weight(&self) -> i64 {
        self.pw.iter().sum()
    }

    /// All edge names, i.e. every non-root vertex.
    pub fn all_edges(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| v != self.root).collect()
    }

    /// `(child, parent, weight)` triples.
    pub fn edge_list(&self) -> Vec<(usize, usize, i64)> {
        self.all_edges().into_iter().map(|c| (c, self.parent[c], self.pw[c])).collect()
    }

    /// Whether `a` is an ancestor of `b` (a vertex is its own ancestor).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    pub fn lca(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v];
        }
        while u != v {
            u = self.parent[u];
            v = self.parent[v];
        }
        u
    }

    /// Edges on the tree path between `u` and `v`, sorted.
    pub fn path_edges(&self, u: usize, v: usize) -> Vec<usize> {
        let a = self.lca(u, v);
        let mut out = Vec::with_capacity(self.depth[u] + self.depth[v] - 2 * self.depth[a]);
        for mut x in [u, v] {
            while x != a {
                out.push(x);
                x = self.parent[x];
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertices of the path from `u` to `v`, in walking order.
    pub fn path_vertices(&self, u: usize, v: usize) -> Vec<usize> {
        let a = self.lca(u, v);
        let mut left = vec![];
        let mut x = u;
        while x != a {
            left.push(x);
            x = self.parent[x];
        }
        left.push(a);
        let mut right = vec![];
        let mut y = v;
        while y != a {
            right.push(y);
            y = self.parent[y];
        }
        left.extend(right.into_iter().rev());
        left
    }

    pub fn path_weight(&self, u: usize, v: usize) -> i64 {
        self.path_edges(u, v).iter().map(|&e| self.pw[e]).sum()
    }

    /// Vertices of the subtree rooted at `v`, in breadth-first order.
    pub fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out
    }

    /// Edge names of the subtree rooted at `v` (excluding the edge above `v`).
    pub fn subtree_edges(&self, v: usize) -> Vec<usize> {
        let mut e = self.subtree_vertices(v);
        e.retain(|&x| x != v);
        e.sort_unstable();
        e
    }

    pub fn edge_set_weight(&self, edges: &[usize]) -> i64 {
        edges.iter().map(|&e| self.pw[e]).sum()
    }

    /// Sorted vertex set spanned by an edge set.
    pub fn edge_set_vertices(&self, edges: &[usize]) -> Vec<usize> {
        let mut vs: Vec<usize> = edges.iter().flat_map(|&e| [e, self.parent[e]]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Degree of every vertex inside an edge set, indexed by vertex.
    pub fn edge_set_degrees(&self, edges: &[usize]) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for &e in edges {
            deg[e] += 1;
            deg[self.parent[e]] += 1;
        }
        deg
    }

    /// Vertices of the edge set whose degree in it is not 2.
    pub fn special_vertices(&self, edges: &[usize]) -> Vec<usize> {
        let deg = self.edge_set_degrees(edges);
        self.edge_set_vertices(edges).into_iter().filter(|&v| deg[v] != 2).collect()
    }

    /// Whether an edge set is connected (a subtree).
    pub fn edge_set_is_connected(&self, edges: &[usize]) -> bool {
        if edges.is_empty() {
            return true;
        }
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.n());
        let mut comps = self.edge_set_vertices(edges).len();
        for &e in edges {
            if uf.union(e, self.parent[e]) {
                comps -= 1;
            }
        }
        comps == 1
    }
}
