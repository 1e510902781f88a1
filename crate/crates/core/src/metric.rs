//! Integer metrics, weighted graphs and their text formats.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest vertex count accepted by constructors.
pub const MAX_N: usize = 10_000;

/// Dense symmetric distance table with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    n: usize,
    d: Vec<i64>,
}

impl Metric {
    /// Builds a metric from a symmetric pair function. Only `f(u, v)` with
    /// `u < v` is evaluated.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        assert!(n <= MAX_N, "metric size {n} over {MAX_N}");
        let mut d = vec![0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let x = f(u, v);
                d[u * n + v] = x;
                d[v * n + u] = x;
            }
        }
        Metric { n, d }
    }

    /// Wraps a row-major table as is. Use [`validate_metric`] to check it.
    pub fn from_table(n: usize, d: Vec<i64>) -> Result<Self> {
        if d.len() != n * n {
            return Err(Error::BadParameters(format!(
                "table has {} entries, expected {}",
                d.len(),
                n * n
            )));
        }
        Ok(Metric { n, d })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> i64 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[i64] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> i64 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// The complete graph carrying every pairwise distance.
    pub fn complete_graph(&self) -> WeightedGraph {
        let mut edges = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                edges.push((u, v, self.dist(u, v)));
            }
        }
        WeightedGraph { n: self.n, edges }
    }

    /// Graph of the pairs at distance exactly 1.
    pub fn unit_graph(&self) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.dist(u, v) == 1 {
                    edges.push((u, v, 1));
                }
            }
        }
        WeightedGraph { n: self.n, edges }
    }
}

/// Undirected graph with positive integer edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl WeightedGraph {
    /// Checks ranges, self-loops, duplicates and weight positivity.
    pub fn new(n: usize, edges: Vec<(usize, usize, i64)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &(u, v, w) in &edges {
            if u >= n || v >= n {
                return Err(Error::OutOfRange(u.max(v)));
            }
            if u == v {
                return Err(Error::BadParameters(format!("self-loop at {u}")));
            }
            if w < 1 {
                return Err(Error::BadParameters(format!("edge ({u}, {v}) has weight {w}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::BadParameters(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(WeightedGraph { n, edges })
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, i64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    pub fn component_count(&self) -> usize {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.n);
        let mut comps = self.n;
        for &(u, v, _) in &self.edges {
            if uf.union(u, v) {
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }
}

/// Shortest-path closure of a connected graph.
pub fn metric_from_graph(g: &WeightedGraph) -> Result<Metric> {
    let n = g.n;
    let adj = g.adjacency();
    let mut d = vec![i64::MAX; n * n];
    let mut heap = BinaryHeap::new();
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        heap.push(Reverse((0i64, s)));
        while let Some(Reverse((dv, v))) = heap.pop() {
            if dv > row[v] {
                continue;
            }
            for &(x, w) in &adj[v] {
                let nd = dv + w;
                if nd < row[x] {
                    row[x] = nd;
                    heap.push(Reverse((nd, x)));
                }
            }
        }
        if let Some(t) = row.iter().position(|&x| x == i64::MAX) {
            return Err(Error::DisconnectedGraph(s, t));
        }
    }
    Metric::from_table(n, d)
}

/// One broken metric axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonZeroDiagonal(usize),
    Asymmetric(usize, usize),
    NonPositive(usize, usize),
    /// `dist(u, w) > dist(u, v) + dist(v, w)`, reported once with `u < w`.
    Triangle(usize, usize, usize),
}

/// Lists every violated axiom. Empty iff `m` is a valid metric.
pub fn validate_metric(m: &Metric) -> Vec<Violation> {
    let n = m.n();
    let mut out = Vec::new();
    for u in 0..n {
        if m.dist(u, u) != 0 {
            out.push(Violation::NonZeroDiagonal(u));
        }
        for v in u + 1..n {
            if m.dist(u, v) != m.dist(v, u) {
                out.push(Violation::Asymmetric(u, v));
            }
            if m.dist(u, v) < 1 {
                out.push(Violation::NonPositive(u, v));
            }
        }
    }
    for u in 0..n {
        for w in u + 1..n {
            let duw = m.dist(u, w);
            for v in 0..n {
                if v != u && v != w && duw > m.dist(u, v).saturating_add(m.dist(v, w)) {
                    out.push(Violation::Triangle(u, v, w));
                }
            }
        }
    }
    out
}

/// Renders `metric <n>` followed by the lower triangle, one row per line.
pub fn write_metric(m: &Metric) -> String {
    let mut s = format!("metric {}\n", m.n());
    for u in 1..m.n() {
        let row: Vec<String> = (0..u).map(|v| m.dist(u, v).to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

/// Renders `graph <n> <m>` followed by `u v w` lines.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut s = format!("graph {} {}\n", g.n, g.edges.len());
    for &(u, v, w) in &g.edges {
        let _ = writeln!(s, "{u} {v} {w}");
    }
    s
}

/// A parsed instance file.
#[derive(Clone, Debug)]
pub enum Instance {
    Metric(Metric),
    Graph(WeightedGraph),
}

impl Instance {
    /// The metric, taking the shortest-path closure for graphs.
    pub fn to_metric(&self) -> Result<Metric> {
        match self {
            Instance::Metric(m) => Ok(m.clone()),
            Instance::Graph(g) => metric_from_graph(g),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn ints(line: &str, lno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|e| parse_err(lno, format!("{t:?}: {e}"))))
        .collect()
}

/// Parses either file format. Blank lines and `#` comments are skipped.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lno, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut parts = header.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    let nums = ints(&parts.collect::<Vec<_>>().join(" "), lno)?;
    match (kind, nums.as_slice()) {
        ("metric", &[n]) => {
            let n = usize::try_from(n).map_err(|_| parse_err(lno, "negative n"))?;
            let mut d = vec![0; n * n];
            for u in 1..n {
                let (l, row) = lines
                    .next()
                    .ok_or_else(|| parse_err(lno, format!("missing row {u}")))?;
                let row = ints(row, l)?;
                if row.len() != u {
                    return Err(parse_err(l, format!("row {u} has {} entries", row.len())));
                }
                for (v, &x) in row.iter().enumerate() {
                    d[u * n + v] = x;
                    d[v * n + u] = x;
                }
            }
            Ok(Instance::Metric(Metric::from_table(n, d)?))
        }
        ("graph", &[n, m]) => {
            let n = usize::try_from(n).map_err(|_| parse_err(lno, "negative n"))?;
            let mut edges = Vec::new();
            for _ in 0..m {
                let (l, e) = lines.next().ok_or_else(|| parse_err(lno, "missing edge line"))?;
                match ints(e, l)?.as_slice() {
                    &[u, v, w] if u >= 0 && v >= 0 => edges.push((u as usize, v as usize, w)),
                    _ => return Err(parse_err(l, "expected `u v w`")),
                }
            }
            Ok(Instance::Graph(WeightedGraph::new(n, edges)?))
        }
        _ => Err(parse_err(lno, format!("unknown header {header:?}"))),
    }
}
