use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact::{exact_proper_tour, MAX_PROPER_TOUR_PATHS};
use crate::oracle::CountingOracle;

#[derive(Clone, Debug)]
pub struct InducedPaths {
    /// Vertex-disjoint paths, each with at least one edge.
    pub paths: Vec<Vec<usize>>,
    /// `|V(Z)|`.
    pub z_vertices: usize,
    /// Support paths with too many branch vertices.
    pub bad_paths: usize,
    /// Pieces at or below the length threshold.
    pub short_pieces: usize,
    pub length_threshold: f64,
    pub branch_limit: f64,
    /// `Σ|E(Q)| ≥ (1 − 40ε̂)|V(Z)|`.
    pub meets_bound: bool,
}

impl InducedPaths {
    pub fn total_edges(&self) -> usize {
        self.paths.iter().map(|p| p.len() - 1).sum()
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Long induced paths of the union `Z` of support paths.
///
/// Branch vertices have `Z`-degree at least three. A support path is bad when
/// more than `20·log₂n/ε̂` of its vertices branch. Good paths are cut at their
/// branch vertices and the pieces longer than `ε̂²h/(20·log₂n)²` edges are
/// kept. Overlapping pieces from different support paths are merged; a merged
/// piece that closes a cycle loses its last edge.
pub fn extract_induced_paths(support: &[Vec<usize>], n: usize, eps_hat: f64, h: usize) -> InducedPaths {
    let log_n = (n.max(2) as f64).log2();
    let branch_limit = 20.0 * log_n / eps_hat;
    let length_threshold = eps_hat * eps_hat * h as f64 / (20.0 * log_n).powi(2);
    let mut z: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in support {
        for e in p.windows(2) {
            z.insert(key(e[0], e[1]));
        }
    }
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in &z {
        *deg.entry(a).or_default() += 1;
        *deg.entry(b).or_default() += 1;
    }
    let z_vertices = deg.len();
    let d = |u: usize| deg.get(&u).copied().unwrap_or(0);

    let mut bad_paths = 0;
    let mut short_pieces = 0;
    let mut kept: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in support {
        let branch = p.iter().filter(|&&u| d(u) > 2).count();
        if branch as f64 > branch_limit {
            bad_paths += 1;
            continue;
        }
        for piece in p.split(|&u| d(u) > 2).filter(|s| !s.is_empty()) {
            if (piece.len() - 1) as f64 > length_threshold {
                piece.windows(2).for_each(|e| {
                    kept.insert(key(e[0], e[1]));
                });
            } else {
                short_pieces += 1;
            }
        }
    }

    // Kept edges avoid branch vertices, so every component is a path or cycle.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &kept {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut paths = vec![];
    let walk = |start: usize, adj: &BTreeMap<usize, Vec<usize>>| {
        let mut out = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            match adj[&cur].iter().copied().find(|&x| x != prev) {
                Some(x) if !out.contains(&x) => {
                    out.push(x);
                    prev = cur;
                    cur = x;
                }
                _ => break,
            }
        }
        out
    };
    let ends: Vec<usize> = adj.iter().filter(|(_, l)| l.len() == 1).map(|(&u, _)| u).collect();
    for u in ends {
        if used.contains(&u) {
            continue;
        }
        let p = walk(u, &adj);
        used.extend(p.iter().copied());
        paths.push(p);
    }
    let rest: Vec<usize> = adj.keys().copied().filter(|u| !used.contains(u)).collect();
    for u in rest {
        if used.contains(&u) {
            continue;
        }
        let p = walk(u, &adj);
        used.extend(p.iter().copied());
        paths.push(p);
    }
    let total: usize = paths.iter().map(|p| p.len() - 1).sum();
    InducedPaths {
        paths,
        z_vertices,
        bad_paths,
        short_pieces,
        length_threshold,
        branch_limit,
        meets_bound: total as f64 >= (1.0 - 40.0 * eps_hat) * z_vertices as f64,
    }
}

#[derive(Clone, Debug)]
pub struct ProperTour {
    pub cost: i64,
    /// `(path index, reversed)` in tour order.
    pub order: Vec<(usize, bool)>,
    pub exact: bool,
    pub queries: u64,
}

fn query_paths(paths: &[Vec<usize>], oracle: &mut CountingOracle) -> Result<()> {
    for p in paths {
        for e in p.windows(2) {
            oracle.query(e[0], e[1])?;
        }
    }
    let ends: Vec<usize> = paths.iter().flat_map(|p| [p[0], *p.last().expect("non-empty")]).collect();
    for (i, &a) in ends.iter().enumerate() {
        for &b in &ends[i + 1..] {
            oracle.query(a, b)?;
        }
    }
    Ok(())
}

/// Minimum cost of a tour that traverses every path of `paths` in one piece.
///
/// Queries consecutive pairs along each path and all endpoint pairs, then
/// solves exactly. Errors with `TooLarge` above the exact cap.
pub fn proper_tour_cost(paths: &[Vec<usize>], oracle: &mut CountingOracle) -> Result<ProperTour> {
    if paths.len() > MAX_PROPER_TOUR_PATHS {
        return Err(Error::TooLarge { what: "proper_tour_cost", size: paths.len(), cap: MAX_PROPER_TOUR_PATHS });
    }
    if paths.is_empty() || paths.iter().any(|p| p.is_empty()) {
        return Err(Error::BadParameters("need at least one non-empty path".into()));
    }
    let before = oracle.distinct();
    query_paths(paths, oracle)?;
    let queries = oracle.distinct() - before;
    let o = &*oracle;
    let r = exact_proper_tour(paths, |a, b| o.known(a, b).expect("queried above"))?;
    Ok(ProperTour { cost: r.value, order: r.witness, exact: true, queries })
}

/// Greedy proper tour for path sets above the exact cap: from the current
/// endpoint, enter the nearest unvisited path at its nearer end.
pub fn greedy_proper_tour(paths: &[Vec<usize>], oracle: &mut CountingOracle) -> Result<ProperTour> {
    if paths.is_empty() || paths.iter().any(|p| p.is_empty()) {
        return Err(Error::BadParameters("need at least one non-empty path".into()));
    }
    let before = oracle.distinct();
    query_paths(paths, oracle)?;
    let queries = oracle.distinct() - before;
    let dist = |a: usize, b: usize| oracle.known(a, b).expect("queried above");
    let internal: i64 = paths.iter().map(|p| p.windows(2).map(|e| dist(e[0], e[1])).sum::<i64>()).sum();
    let first = |j: usize, rev: bool| if rev { *paths[j].last().unwrap() } else { paths[j][0] };
    let last = |j: usize, rev: bool| if rev { paths[j][0] } else { *paths[j].last().unwrap() };
    let mut left: BTreeSet<usize> = (1..paths.len()).collect();
    let mut order = vec![(0, false)];
    let mut jumps = 0;
    while !left.is_empty() {
        let (j, rev) = *order.last().unwrap();
        let at = last(j, rev);
        let (c, nj, nrev) = left
            .iter()
            .flat_map(|&k| [(dist(at, first(k, false)), k, false), (dist(at, first(k, true)), k, true)])
            .min()
            .expect("non-empty");
        jumps += c;
        left.remove(&nj);
        order.push((nj, nrev));
    }
    let (j, rev) = *order.last().unwrap();
    jumps += dist(last(j, rev), first(0, false));
    Ok(ProperTour { cost: internal + jumps, order, exact: false, queries })
}
