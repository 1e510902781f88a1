use std::collections::BinaryHeap;

use super::ExactResult;
use crate::tree::RootedTree;

/// Which candidate edges a cover-advantage search may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Restriction {
    /// At least one endpoint in `V(T')`.
    AnyEndpoint,
    /// At least one endpoint at a vertex of degree other than 2 in `T'`.
    SpecialEndpoint,
}

#[derive(Clone, Copy, Debug)]
pub struct CoverOptions {
    /// Largest surviving candidate count solved exactly.
    pub cap: usize,
    /// Pairwise dominance pruning is skipped above this many candidates.
    pub dominance_limit: usize,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions { cap: 20, dominance_limit: 4096 }
    }
}

type Bits = Vec<u64>;

fn bits_of(idx: &[usize], words: usize) -> Bits {
    let mut b = vec![0u64; words];
    for &i in idx {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn gain(cov: &Bits, covered: &Bits, edge_w: &[i64]) -> i64 {
    let mut g = 0;
    for (wi, (&c, &d)) in cov.iter().zip(covered).enumerate() {
        let mut fresh = c & !d;
        while fresh != 0 {
            let b = fresh.trailing_zeros() as usize;
            fresh &= fresh - 1;
            g += edge_w[wi * 64 + b];
        }
    }
    g
}

/// Maximum of `w(∪ cov) − Σ w` over subsets of candidates.
///
/// `edge_w` are the target edge weights; each candidate is a weight and the
/// target edges it covers. The witness holds candidate indices.
pub fn max_cover_advantage(
    edge_w: &[i64],
    cands: &[(i64, Vec<usize>)],
    opts: CoverOptions,
) -> ExactResult<i64, Vec<usize>> {
    let words = edge_w.len().div_ceil(64).max(1);
    let empty = vec![0u64; words];
    let covw = |c: &[usize]| c.iter().map(|&e| edge_w[e]).sum::<i64>();

    // Candidates that cost at least what they cover never help.
    let mut live: Vec<(usize, Bits, i64)> = cands
        .iter()
        .enumerate()
        .filter(|(_, (w, c))| *w < covw(c))
        .map(|(i, (w, c))| (i, bits_of(c, words), *w))
        .collect();
    live.sort_by(|a, b| a.1.cmp(&b.1).then(a.2.cmp(&b.2)).then(a.0.cmp(&b.0)));
    live.dedup_by(|later, earlier| later.1 == earlier.1);

    if live.len() <= opts.dominance_limit {
        let keep: Vec<bool> = (0..live.len())
            .map(|i| {
                !(0..live.len()).any(|j| j != i && live[j].2 <= live[i].2 && subset(&live[i].1, &live[j].1))
            })
            .collect();
        let mut k = keep.iter();
        live.retain(|_| *k.next().unwrap());
    }

    let (value, chosen, exact) = if live.len() <= opts.cap {
        let (v, c) = branch_and_bound(&live, edge_w, &empty);
        (v, c, true)
    } else {
        let (v, c) = local_search(&live, edge_w, words);
        (v, c, false)
    };
    let mut witness: Vec<usize> = chosen.into_iter().map(|i| live[i].0).collect();
    witness.sort_unstable();
    ExactResult { value, witness, exact }
}

fn branch_and_bound(live: &[(usize, Bits, i64)], edge_w: &[i64], empty: &Bits) -> (i64, Vec<usize>) {
    let mut order: Vec<usize> = (0..live.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(gain(&live[i].1, empty, edge_w) - live[i].2));

    struct Search<'a> {
        live: &'a [(usize, Bits, i64)],
        order: Vec<usize>,
        edge_w: &'a [i64],
        best: i64,
        best_set: Vec<usize>,
        stack: Vec<usize>,
    }

    impl Search<'_> {
        fn go(&mut self, pos: usize, covered: &Bits, value: i64) {
            if value > self.best {
                self.best = value;
                self.best_set = self.stack.clone();
            }
            let margins: Vec<i64> = self.order[pos..]
                .iter()
                .map(|&i| gain(&self.live[i].1, covered, self.edge_w) - self.live[i].2)
                .collect();
            let bound: i64 = value + margins.iter().filter(|&&m| m > 0).sum::<i64>();
            if bound <= self.best {
                return;
            }
            for (off, &m) in margins.iter().enumerate() {
                if m <= 0 {
                    continue;
                }
                let i = self.order[pos + off];
                let next: Bits = covered.iter().zip(&self.live[i].1).map(|(a, b)| a | b).collect();
                self.stack.push(i);
                self.go(pos + off + 1, &next, value + m);
                self.stack.pop();
                // Remaining bound without candidate i.
                let rest: i64 = margins[off + 1..].iter().filter(|&&x| x > 0).sum();
                if value + rest <= self.best {
                    return;
                }
            }
        }
    }

    let mut s = Search { live, order, edge_w, best: 0, best_set: vec![], stack: vec![] };
    s.go(0, empty, 0);
    (s.best, s.best_set)
}

fn local_search(live: &[(usize, Bits, i64)], edge_w: &[i64], words: usize) -> (i64, Vec<usize>) {
    let covers: Vec<Vec<usize>> = live
        .iter()
        .map(|(_, b, _)| {
            let mut v = Vec::new();
            for (wi, &x) in b.iter().enumerate() {
                let mut y = x;
                while y != 0 {
                    v.push(wi * 64 + y.trailing_zeros() as usize);
                    y &= y - 1;
                }
            }
            v
        })
        .collect();
    let _ = words;
    let mut cnt = vec![0u32; edge_w.len()];
    let mut chosen = vec![false; live.len()];
    let add_gain = |i: usize, cnt: &[u32]| -> i64 {
        covers[i].iter().filter(|&&e| cnt[e] == 0).map(|&e| edge_w[e]).sum::<i64>() - live[i].2
    };
    let remove_gain = |i: usize, cnt: &[u32]| -> i64 {
        live[i].2 - covers[i].iter().filter(|&&e| cnt[e] == 1).map(|&e| edge_w[e]).sum::<i64>()
    };

    // Lazy greedy: gains only shrink as coverage grows.
    let mut heap: BinaryHeap<(i64, std::cmp::Reverse<usize>)> =
        (0..live.len()).map(|i| (add_gain(i, &cnt), std::cmp::Reverse(i))).collect();
    while let Some((g, std::cmp::Reverse(i))) = heap.pop() {
        if g <= 0 {
            break;
        }
        let fresh = add_gain(i, &cnt);
        if fresh == g {
            chosen[i] = true;
            for &e in &covers[i] {
                cnt[e] += 1;
            }
        } else if fresh > 0 {
            heap.push((fresh, std::cmp::Reverse(i)));
        }
    }

    for _round in 0..50 {
        let mut improved = false;
        for i in 0..live.len() {
            if chosen[i] && remove_gain(i, &cnt) > 0 {
                chosen[i] = false;
                for &e in &covers[i] {
                    cnt[e] -= 1;
                }
                improved = true;
            }
        }
        for i in 0..live.len() {
            if !chosen[i] && add_gain(i, &cnt) > 0 {
                chosen[i] = true;
                for &e in &covers[i] {
                    cnt[e] += 1;
                }
                improved = true;
            }
        }
        if live.len() <= 256 {
            'swap: for i in 0..live.len() {
                if !chosen[i] {
                    continue;
                }
                let out = remove_gain(i, &cnt);
                for &e in &covers[i] {
                    cnt[e] -= 1;
                }
                for j in 0..live.len() {
                    if !chosen[j] && j != i && out + add_gain(j, &cnt) > 0 {
                        chosen[i] = false;
                        chosen[j] = true;
                        for &e in &covers[j] {
                            cnt[e] += 1;
                        }
                        improved = true;
                        continue 'swap;
                    }
                }
                for &e in &covers[i] {
                    cnt[e] += 1;
                }
            }
        }
        if !improved {
            break;
        }
    }
    let set: Vec<usize> = (0..live.len()).filter(|&i| chosen[i]).collect();
    let covered: i64 = (0..edge_w.len()).filter(|&e| cnt[e] > 0).map(|e| edge_w[e]).sum();
    let cost: i64 = set.iter().map(|&i| live[i].2).sum();
    (covered - cost, set)
}

/// Optimal cover advantage of the subtree `sub` (edge names of `tree`) over
/// the candidate pairs admitted by `restriction`.
///
/// The witness lists the chosen candidate pairs with their weights.
pub fn exact_cover_advantage(
    tree: &RootedTree,
    sub: &[usize],
    candidates: &[(usize, usize, i64)],
    restriction: Restriction,
    opts: CoverOptions,
) -> ExactResult<i64, Vec<(usize, usize, i64)>> {
    let n = tree.n();
    let mut local = vec![usize::MAX; n];
    for (i, &e) in sub.iter().enumerate() {
        local[e] = i;
    }
    let edge_w: Vec<i64> = sub.iter().map(|&e| tree.weight(e)).collect();
    let mut anchor = vec![false; n];
    match restriction {
        Restriction::AnyEndpoint => tree.edge_set_vertices(sub).into_iter().for_each(|v| anchor[v] = true),
        Restriction::SpecialEndpoint => tree.special_vertices(sub).into_iter().for_each(|v| anchor[v] = true),
    }
    let admitted: Vec<(usize, usize, i64)> = candidates
        .iter()
        .copied()
        .filter(|&(u, v, _)| u != v && (anchor[u] || anchor[v]))
        .collect();
    let cands: Vec<(i64, Vec<usize>)> = admitted
        .iter()
        .map(|&(u, v, w)| {
            let cov = tree.path_edges(u, v).into_iter().filter(|&e| local[e] != usize::MAX).map(|e| local[e]).collect();
            (w, cov)
        })
        .collect();
    let r = max_cover_advantage(&edge_w, &cands, opts);
    ExactResult { value: r.value, witness: r.witness.iter().map(|&i| admitted[i]).collect(), exact: r.exact }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(edge_w: &[i64], cands: &[(i64, Vec<usize>)]) -> i64 {
        let mut best = 0;
        for mask in 0u32..1 << cands.len() {
            let mut cov = vec![false; edge_w.len()];
            let mut cost = 0;
            for (i, (w, c)) in cands.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    cost += w;
                    c.iter().for_each(|&e| cov[e] = true);
                }
            }
            let v: i64 = (0..edge_w.len()).filter(|&e| cov[e]).map(|e| edge_w[e]).sum::<i64>() - cost;
            best = best.max(v);
        }
        best
    }

    #[test]
    fn empty_set_is_feasible() {
        let r = max_cover_advantage(&[3], &[(5, vec![0])], CoverOptions::default());
        assert_eq!(r.value, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn overlapping_covers() {
        let w = [4, 4, 4];
        let c = vec![(3, vec![0, 1]), (3, vec![1, 2]), (5, vec![0, 1, 2])];
        let r = max_cover_advantage(&w, &c, CoverOptions::default());
        assert_eq!(r.value, brute(&w, &c));
        assert_eq!(r.value, 7);
    }

    #[test]
    fn heuristic_is_a_lower_bound() {
        let w: Vec<i64> = (0..12).map(|i| 1 + i % 4).collect();
        let c: Vec<(i64, Vec<usize>)> =
            (0..14).map(|i| ((i % 5 + 1) as i64, (i % 12..(i % 12 + 3).min(12)).collect())).collect();
        let exact = max_cover_advantage(&w, &c, CoverOptions::default());
        let heur = max_cover_advantage(&w, &c, CoverOptions { cap: 0, dominance_limit: 0 });
        assert!(exact.exact && !heur.exact);
        assert_eq!(exact.value, brute(&w, &c));
        assert!(heur.value <= exact.value);
    }
}
