use super::ExactResult;
use crate::error::{Error, Result};

/// Vertex cap, counting the root.
pub const MAX_MWC_VERTICES: usize = 18;

/// Minimum cost of a closed walk from `root` that visits every other vertex
/// exactly once and may pass through `root` any number of times.
///
/// `w` is a row-major `s × s` table. The witness lists the walk, root visits
/// included, starting and ending at `root`.
pub fn exact_mwc(w: &[i64], s: usize, root: usize) -> Result<ExactResult<i64, Vec<usize>>> {
    if s > MAX_MWC_VERTICES {
        return Err(Error::TooLarge { what: "exact_mwc", size: s, cap: MAX_MWC_VERTICES });
    }
    if root >= s || w.len() != s * s {
        return Err(Error::BadParameters("skeleton table and root disagree".into()));
    }
    let others: Vec<usize> = (0..s).filter(|&v| v != root).collect();
    let k = others.len();
    if k == 0 {
        return Ok(ExactResult { value: 0, witness: vec![root], exact: true });
    }
    let d = |a: usize, b: usize| w[a * s + b];
    // Cheapest hop between two non-root vertices, possibly via the root.
    let hop = |a: usize, b: usize| {
        let (x, y) = (others[a], others[b]);
        let direct = d(x, y);
        let via = d(x, root) + d(root, y);
        if via < direct {
            (via, true)
        } else {
            (direct, false)
        }
    };
    let full = (1usize << k) - 1;
    let at = |mask: usize, last: usize| mask * k + last;
    let mut dp = vec![i64::MAX; (full + 1) * k];
    let mut par = vec![usize::MAX; (full + 1) * k];
    for j in 0..k {
        dp[at(1 << j, j)] = d(root, others[j]);
    }
    for mask in 1..=full {
        for last in 0..k {
            let cur = dp[at(mask, last)];
            if cur == i64::MAX {
                continue;
            }
            let mut rest = full & !mask;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let c = cur + hop(last, j).0;
                if c < dp[at(mask | 1 << j, j)] {
                    dp[at(mask | 1 << j, j)] = c;
                    par[at(mask | 1 << j, j)] = last;
                }
            }
        }
    }
    let (mut best, mut last) = (i64::MAX, 0);
    for j in 0..k {
        let c = dp[at(full, j)] + d(others[j], root);
        if c < best {
            best = c;
            last = j;
        }
    }
    let mut rev = vec![root];
    let mut mask = full;
    loop {
        rev.push(others[last]);
        let p = par[at(mask, last)];
        mask &= !(1 << last);
        if p == usize::MAX {
            break;
        }
        if hop(p, last).1 {
            rev.push(root);
        }
        last = p;
    }
    rev.push(root);
    rev.reverse();
    Ok(ExactResult { value: best, witness: rev, exact: true })
}
