//! Exact reference computations and their capped fallbacks.

mod cover;
mod matching;
mod mst;
mod mwc;
mod proper_tour;
mod reconfig;
mod tsp;

pub use cover::{exact_cover_advantage, max_cover_advantage, CoverOptions, Restriction};
pub use matching::{exact_max_matching, exact_max_weight_matching, MAX_WEIGHTED_MATCHING_N};
pub use mst::{exact_mst, mst_tree};
pub use mwc::{exact_mwc, MAX_MWC_VERTICES};
pub use proper_tour::{exact_proper_tour, MAX_PROPER_TOUR_PATHS};
pub use reconfig::{exact_reconfiguration, reconfiguration_cost, Reconfiguration, MAX_EXACT_RECONFIG};
pub use tsp::{exact_tsp, MAX_TSP_N};

use std::fmt;
use std::ops::{Add, Sub};

/// A computed value, an optional witness, and whether the value is optimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult<V, W> {
    pub value: V,
    pub witness: W,
    /// `false` when a capped heuristic produced the value.
    pub exact: bool,
}

/// A multiple of one half, stored as a count of halves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(pub i64);

impl Half {
    pub fn from_int(x: i64) -> Self {
        Half(2 * x)
    }

    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            let sign = if self.0 < 0 { "-" } else { "" };
            write!(f, "{sign}{}.5", self.0.abs() / 2)
        }
    }
}
