/// Minimum spanning forest under edge insertions.
///
/// An edge joining two trees is kept. An edge closing a cycle replaces the
/// heaviest edge on that cycle when it is strictly lighter.
#[derive(Clone, Debug)]
pub struct DynForest {
    adj: Vec<Vec<(usize, i64)>>,
    edges: usize,
    weight: i64,
}

impl DynForest {
    pub fn new(n: usize) -> Self {
        DynForest { adj: vec![Vec::new(); n], edges: 0, weight: 0 }
    }

    pub fn len(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges == 0
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Words held: three per stored edge.
    pub fn words(&self) -> u64 {
        3 * self.edges as u64
    }

    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::with_capacity(self.edges);
        for (u, l) in self.adj.iter().enumerate() {
            for &(v, w) in l {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    /// Tree path from `u` to `v` as edges, or `None` when disconnected.
    fn path(&self, u: usize, v: usize) -> Option<Vec<(usize, usize, i64)>> {
        let n = self.adj.len();
        let mut prev = vec![(usize::MAX, 0i64); n];
        prev[u] = (u, 0);
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if x == v {
                break;
            }
            for &(y, w) in &self.adj[x] {
                if prev[y].0 == usize::MAX {
                    prev[y] = (x, w);
                    stack.push(y);
                }
            }
        }
        if prev[v].0 == usize::MAX {
            return None;
        }
        let mut out = vec![];
        let mut x = v;
        while x != u {
            let (p, w) = prev[x];
            out.push((p, x, w));
            x = p;
        }
        Some(out)
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.adj[u].retain(|&(x, _)| x != v);
        self.adj[v].retain(|&(x, _)| x != u);
    }

    /// Offers an edge; returns whether the forest changed.
    pub fn insert(&mut self, u: usize, v: usize, w: i64) -> bool {
        if u == v {
            return false;
        }
        match self.path(u, v) {
            None => {
                self.adj[u].push((v, w));
                self.adj[v].push((u, w));
                self.edges += 1;
                self.weight += w;
                true
            }
            Some(p) => {
                // Heaviest cycle edge; ties keep the stored edge.
                let &(a, b, mw) = p.iter().max_by_key(|e| e.2).expect("u != v");
                if mw <= w {
                    return false;
                }
                self.remove(a, b);
                self.adj[u].push((v, w));
                self.adj[v].push((u, w));
                self.weight += w - mw;
                true
            }
        }
    }
}
