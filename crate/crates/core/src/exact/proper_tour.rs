use super::ExactResult;
use crate::error::{Error, Result};

pub const MAX_PROPER_TOUR_PATHS: usize = 14;

/// Minimum cost of a tour that traverses each path of `paths` in one piece,
/// in some order and orientation, jumping between path endpoints.
///
/// The witness lists `(path index, reversed)` in tour order.
pub fn exact_proper_tour(
    paths: &[Vec<usize>],
    dist: impl Fn(usize, usize) -> i64,
) -> Result<ExactResult<i64, Vec<(usize, bool)>>> {
    let q = paths.len();
    if q > MAX_PROPER_TOUR_PATHS {
        return Err(Error::TooLarge { what: "exact_proper_tour", size: q, cap: MAX_PROPER_TOUR_PATHS });
    }
    if q == 0 || paths.iter().any(|p| p.is_empty()) {
        return Err(Error::BadParameters("need at least one non-empty path".into()));
    }
    let internal: i64 = paths.iter().map(|p| p.windows(2).map(|e| dist(e[0], e[1])).sum::<i64>()).sum();
    let first = |j: usize, rev: bool| if rev { *paths[j].last().unwrap() } else { paths[j][0] };
    let last = |j: usize, rev: bool| if rev { paths[j][0] } else { *paths[j].last().unwrap() };
    let full = (1usize << q) - 1;
    let at = |mask: usize, j: usize, o: usize| (mask * q + j) * 2 + o;
    let mut dp = vec![i64::MAX; (full + 1) * q * 2];
    let mut par = vec![usize::MAX; (full + 1) * q * 2];
    dp[at(1, 0, 0)] = 0;
    for mask in 1..=full {
        if mask & 1 == 0 {
            continue;
        }
        for j in 0..q {
            for o in 0..2 {
                let cur = dp[at(mask, j, o)];
                if cur == i64::MAX {
                    continue;
                }
                let end = last(j, o == 1);
                let mut rest = full & !mask;
                while rest != 0 {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    for o2 in 0..2 {
                        let c = cur + dist(end, first(t, o2 == 1));
                        let slot = at(mask | 1 << t, t, o2);
                        if c < dp[slot] {
                            dp[slot] = c;
                            par[slot] = at(mask, j, o);
                        }
                    }
                }
            }
        }
    }
    let mut best = (i64::MAX, 0);
    for j in 0..q {
        for o in 0..2 {
            let cur = dp[at(full, j, o)];
            if cur != i64::MAX {
                let c = cur + dist(last(j, o == 1), first(0, false));
                if c < best.0 {
                    best = (c, at(full, j, o));
                }
            }
        }
    }
    let mut order = Vec::with_capacity(q);
    let mut slot = best.1;
    loop {
        order.push(((slot / 2) % q, slot % 2 == 1));
        if par[slot] == usize::MAX {
            break;
        }
        slot = par[slot];
    }
    order.reverse();
    Ok(ExactResult { value: best.0 + internal, witness: order, exact: true })
}
