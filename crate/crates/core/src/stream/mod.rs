//! Simulated streams with pass counting and storage metering.
//!
//! Algorithms read items through [`StreamSession::pass`] and declare every
//! piece of retained state in named [`Meter`] slots. The session records the
//! peak number of simultaneously held machine words.

mod forest;
mod mst;
mod tsp;

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::metric::{Metric, WeightedGraph};
use crate::rng::rng_for;

pub use forest::DynForest;
pub use mst::{sample_cover_bound, run_exact_mst_graphstream, run_onepass_mst_estimate, MstEstimate};
pub use tsp::{run_twopass_tsp, Branch, TwoPassResult, ALPHA_TWOPASS, BETA_TWOPASS};

/// Arrival order of stream items.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Seeded uniform shuffle.
    Shuffled(u64),
    Ascending,
    Descending,
    /// Source order as stored.
    AsGiven,
}

impl FromStr for Order {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascending" => Ok(Order::Ascending),
            "descending" => Ok(Order::Descending),
            "given" => Ok(Order::AsGiven),
            "shuffled" => Ok(Order::Shuffled(0)),
            _ => Err(Error::BadParameters(format!("unknown stream order {s:?}"))),
        }
    }
}

/// Named storage slots; the total is the current word count.
#[derive(Clone, Debug, Default)]
pub struct Meter {
    slots: BTreeMap<&'static str, u64>,
    current: u64,
    peak: u64,
}

impl Meter {
    /// Sets the size of `slot` in words.
    pub fn set(&mut self, slot: &'static str, words: u64) {
        let old = self.slots.insert(slot, words).unwrap_or(0);
        self.current = self.current - old + words;
        self.peak = self.peak.max(self.current);
    }

    pub fn current(&self) -> u64 {
        self.current
    }

    pub fn peak(&self) -> u64 {
        self.peak
    }

    pub fn slot(&self, name: &str) -> u64 {
        self.slots.get(name).copied().unwrap_or(0)
    }
}

/// One stream source read pass by pass.
pub struct StreamSession {
    n: usize,
    items: Vec<(usize, usize, i64)>,
    passes: usize,
    meter: Meter,
    pass_peaks: Vec<u64>,
}

impl StreamSession {
    /// Metric stream: every unordered pair once per pass.
    pub fn metric(m: &Metric, order: Order) -> Self {
        let n = m.n();
        let mut items = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                items.push((u, v, m.dist(u, v)));
            }
        }
        Self::with_items(n, items, order)
    }

    /// Graph stream: the edges of `g`.
    pub fn graph(g: &WeightedGraph, order: Order) -> Self {
        Self::with_items(g.n, g.edges.clone(), order)
    }

    fn with_items(n: usize, mut items: Vec<(usize, usize, i64)>, order: Order) -> Self {
        match order {
            Order::Shuffled(seed) => items.shuffle(&mut rng_for(seed, "stream_order")),
            Order::Ascending => items.sort_by_key(|e| (e.2, e.0, e.1)),
            Order::Descending => items.sort_by_key(|e| (std::cmp::Reverse(e.2), e.0, e.1)),
            Order::AsGiven => {}
        }
        StreamSession { n, items, passes: 0, meter: Meter::default(), pass_peaks: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Feeds every item to `f` once, in stream order.
    pub fn pass<F>(&mut self, mut f: F) -> Result<()>
    where
        F: FnMut(&mut Meter, usize, usize, i64) -> Result<()>,
    {
        self.passes += 1;
        let start = self.meter.peak;
        self.meter.peak = self.meter.current;
        let mut res = Ok(());
        for &(u, v, w) in &self.items {
            res = f(&mut self.meter, u, v, w);
            if res.is_err() {
                break;
            }
        }
        self.pass_peaks.push(self.meter.peak);
        self.meter.peak = self.meter.peak.max(start);
        res
    }

    /// Storage access outside of a pass (setup and finishing work).
    pub fn meter(&mut self) -> &mut Meter {
        &mut self.meter
    }

    pub fn passes(&self) -> usize {
        self.passes
    }

    pub fn peak_words(&self) -> u64 {
        self.meter.peak
    }

    pub fn pass_peaks(&self) -> &[u64] {
        &self.pass_peaks
    }
}
