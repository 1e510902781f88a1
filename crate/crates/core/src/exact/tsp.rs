use super::ExactResult;
use crate::error::{Error, Result};
use crate::metric::Metric;

pub const MAX_TSP_N: usize = 18;

/// Held-Karp over subsets of `1..n`, tour anchored at vertex 0.
pub fn exact_tsp(m: &Metric) -> Result<ExactResult<i64, Vec<usize>>> {
    let n = m.n();
    if n > MAX_TSP_N {
        return Err(Error::TooLarge { what: "exact_tsp", size: n, cap: MAX_TSP_N });
    }
    if n <= 1 {
        return Ok(ExactResult { value: 0, witness: (0..n).collect(), exact: true });
    }
    let k = n - 1;
    let full = (1usize << k) - 1;
    let idx = |mask: usize, last: usize| mask * k + last;
    let mut dp = vec![i64::MAX; (full + 1) * k];
    let mut par = vec![u8::MAX; (full + 1) * k];
    for j in 0..k {
        dp[idx(1 << j, j)] = m.dist(0, j + 1);
    }
    for mask in 1..=full {
        for last in 0..k {
            let cur = dp[idx(mask, last)];
            if cur == i64::MAX || mask >> last & 1 == 0 {
                continue;
            }
            let row = m.row(last + 1);
            let mut rest = full & !mask;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let nm = mask | 1 << j;
                let c = cur + row[j + 1];
                if c < dp[idx(nm, j)] {
                    dp[idx(nm, j)] = c;
                    par[idx(nm, j)] = last as u8;
                }
            }
        }
    }
    let (mut last, mut best) = (0, i64::MAX);
    for j in 0..k {
        let c = dp[idx(full, j)] + m.dist(j + 1, 0);
        if c < best {
            best = c;
            last = j;
        }
    }
    let mut tour = Vec::with_capacity(n);
    let mut mask = full;
    loop {
        tour.push(last + 1);
        let p = par[idx(mask, last)];
        mask &= !(1 << last);
        if p == u8::MAX {
            break;
        }
        last = p as usize;
    }
    tour.push(0);
    tour.reverse();
    Ok(ExactResult { value: best, witness: tour, exact: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::tour_cost;

    #[test]
    fn unit_triangle() {
        assert_eq!(exact_tsp(&Metric::from_fn(3, |_, _| 1)).unwrap().value, 3);
    }

    #[test]
    fn witness_matches_value() {
        let m = Metric::from_fn(7, |u, v| ((u * 7 + v * 3) % 5 + 3) as i64);
        let r = exact_tsp(&m).unwrap();
        assert_eq!(tour_cost(&m, &r.witness), r.value);
        assert_eq!(r.witness.len(), 7);
    }

    #[test]
    fn cap() {
        let m = Metric::from_fn(19, |_, _| 1);
        assert!(matches!(exact_tsp(&m), Err(Error::TooLarge { .. })));
    }
}
