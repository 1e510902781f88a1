//! Output record shared by the query-model estimators.

use std::fmt;

/// Outcome of a two-sided threshold test.
///
/// The two claims overlap: a test at level `x` may answer `AtLeast` when the
/// quantity is at least `x/2` and `AtMost` when it is at most `2x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    AtLeast,
    AtMost,
}

/// A TSP cost estimate with the resources spent on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Range the estimator claims for the true cost: `[value/2, value]`.
    pub interval: (f64, f64),
    /// Name of the branch that produced `value`.
    pub branch: String,
    pub distinct_queries: u64,
    pub raw_queries: u64,
    /// Distinct queries charged per subroutine, in call order.
    pub breakdown: Vec<(String, u64)>,
    /// Every advantage or matching value used was computed exactly.
    pub exact: bool,
}

impl Estimate {
    pub fn new(value: f64, branch: impl Into<String>) -> Self {
        Estimate {
            value,
            interval: (value / 2.0, value),
            branch: branch.into(),
            distinct_queries: 0,
            raw_queries: 0,
            breakdown: vec![],
            exact: true,
        }
    }

    /// Queries charged to `name`, merged with an earlier entry of that name.
    pub fn charge(&mut self, name: &str, queries: u64) {
        match self.breakdown.iter_mut().find(|(k, _)| k == name) {
            Some((_, q)) => *q += queries,
            None => self.breakdown.push((name.to_string(), queries)),
        }
    }

    pub fn breakdown_string(&self) -> String {
        self.breakdown.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(";")
    }
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} via {} ({} queries)", self.value, self.branch, self.distinct_queries)
    }
}

/// Tracks distinct-query deltas between checkpoints.
#[derive(Clone, Copy, Debug)]
pub struct Stopwatch(u64);

impl Stopwatch {
    pub fn start(distinct: u64) -> Self {
        Stopwatch(distinct)
    }

    /// Queries since the last lap.
    pub fn lap(&mut self, distinct: u64) -> u64 {
        let d = distinct - self.0;
        self.0 = distinct;
        d
    }
}
