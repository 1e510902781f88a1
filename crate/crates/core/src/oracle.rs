//! Query-model access to a metric with distinct-pair accounting.

use crate::error::{Error, Result};
use crate::metric::Metric;

/// Budgeted, deduplicating distance oracle.
///
/// A pair is charged once no matter how often it is asked. `raw` counts every
/// call, including repeats.
#[derive(Clone, Debug)]
pub struct CountingOracle<'a> {
    metric: &'a Metric,
    answered: Vec<u64>,
    distinct: u64,
    raw: u64,
    budget: Option<u64>,
}

#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

impl<'a> CountingOracle<'a> {
    pub fn new(metric: &'a Metric) -> Self {
        let pairs = metric.n() * metric.n().saturating_sub(1) / 2;
        CountingOracle {
            metric,
            answered: vec![0; pairs.div_ceil(64)],
            distinct: 0,
            raw: 0,
            budget: None,
        }
    }

    pub fn with_budget(metric: &'a Metric, budget: u64) -> Self {
        let mut o = Self::new(metric);
        o.budget = Some(budget);
        o
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    pub fn distinct(&self) -> u64 {
        self.distinct
    }

    pub fn raw(&self) -> u64 {
        self.raw
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    /// Whether the pair has already been charged.
    pub fn is_known(&self, u: usize, v: usize) -> bool {
        u == v || {
            let i = pair_index(u, v);
            self.answered[i / 64] >> (i % 64) & 1 == 1
        }
    }

    /// The distance of an already charged pair, free of charge.
    pub fn known(&self, u: usize, v: usize) -> Option<i64> {
        self.is_known(u, v).then(|| self.metric.dist(u, v))
    }

    /// Every charged pair `(a, b)` with `a < b`, ordered by `b` then `a`.
    pub fn answered_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n()).flat_map(move |b| (0..b).filter(move |&a| self.is_known(a, b)).map(move |a| (a, b)))
    }

    /// Returns `dist(u, v)`, charging the pair if it is new. `u == v` is free.
    pub fn query(&mut self, u: usize, v: usize) -> Result<i64> {
        let n = self.metric.n();
        if u >= n || v >= n {
            return Err(Error::OutOfRange(u.max(v)));
        }
        if u == v {
            return Ok(0);
        }
        let i = pair_index(u, v);
        let bit = 1u64 << (i % 64);
        if self.answered[i / 64] & bit == 0 {
            if let Some(b) = self.budget {
                if self.distinct >= b {
                    return Err(Error::BudgetExceeded { budget: b });
                }
            }
            self.answered[i / 64] |= bit;
            self.distinct += 1;
        }
        self.raw += 1;
        Ok(self.metric.dist(u, v))
    }
}
