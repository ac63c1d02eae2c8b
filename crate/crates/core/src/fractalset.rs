//! Finite-depth approximants of symmetric Cantor-type subsets of an interval.
//!
//! "The fractal" always means the limit set; every value here is a depth-k
//! iterated-function-system approximant, and consumers document how their
//! results depend on the chosen depth.

use crate::{Error, Result};

/// A closed interval `[lo, hi]` on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

/// Parameters of the symmetric two-map Cantor construction on `[c1, c2]`.
///
/// Each refinement step keeps the two end subintervals of length
/// `keep_ratio * parent_length` and removes the middle. `keep_ratio = 1/3`
/// yields the triadic middle-third set; `keep_ratio = 1/2` keeps everything
/// and reduces to the full interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CantorSpec {
    keep_ratio: f64,
    support: Interval,
}

impl CantorSpec {
    pub fn new(keep_ratio: f64, c1: f64, c2: f64) -> Result<Self> {
        if !(keep_ratio > 0.0 && keep_ratio <= 0.5) {
            return Err(Error::InvalidParameter(format!(
                "keep_ratio must lie in (0, 1/2], got {keep_ratio}"
            )));
        }
        if !c1.is_finite() || !c2.is_finite() || !(c1 < c2) {
            return Err(Error::InvalidParameter(format!(
                "support requires finite c1 < c2, got [{c1}, {c2}]"
            )));
        }
        Ok(Self {
            keep_ratio,
            support: Interval { lo: c1, hi: c2 },
        })
    }

    /// The triadic middle-third set on `[0, 1]`.
    pub fn triadic() -> Self {
        Self::new(1.0 / 3.0, 0.0, 1.0).expect("triadic parameters are valid")
    }

    pub fn keep_ratio(&self) -> f64 {
        self.keep_ratio
    }

    pub fn support(&self) -> Interval {
        self.support
    }

    /// Similarity dimension `ln 2 / ln(1/keep_ratio)`, which for these sets
    /// coincides with the gamma-dimension (1.0 at `keep_ratio = 1/2`).
    pub fn similarity_dimension(&self) -> f64 {
        (std::f64::consts::LN_2 / (1.0 / self.keep_ratio).ln()).min(1.0)
    }
}

/// Largest refinement depth `build_cantor` accepts; `2^depth` intervals are
/// materialized, so this caps memory at a few hundred MB.
pub const MAX_DEPTH: u32 = 24;

/// A depth-k approximant: sorted, pairwise-disjoint closed intervals.
///
/// For `keep_ratio < 1/2` the union holds exactly `2^depth` intervals of
/// length `keep_ratio^depth * (c2 - c1)`. At `keep_ratio = 1/2` the
/// construction collapses to the single support interval at every depth.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
    depth: u32,
    spec: CantorSpec,
}

/// Builds the depth-k IFS approximant of the set described by `spec`.
/// Depth 0 is the whole support.
pub fn build_cantor(spec: &CantorSpec, depth: u32) -> Result<IntervalUnion> {
    if depth > MAX_DEPTH {
        return Err(Error::InvalidParameter(format!(
            "depth {depth} exceeds the supported maximum {MAX_DEPTH}"
        )));
    }
    // keep_ratio = 1/2: nothing is ever removed.
    if spec.keep_ratio == 0.5 {
        return Ok(IntervalUnion {
            intervals: vec![spec.support],
            depth,
            spec: *spec,
        });
    }
    let mut intervals = vec![spec.support];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for iv in &intervals {
            let w = iv.len() * spec.keep_ratio;
            push_merged(&mut next, Interval { lo: iv.lo, hi: iv.lo + w });
            push_merged(&mut next, Interval { lo: iv.hi - w, hi: iv.hi });
        }
        intervals = next;
    }
    Ok(IntervalUnion {
        intervals,
        depth,
        spec: *spec,
    })
}

/// Appends `iv`, merging with the previous interval if they touch or overlap
/// (guards against rounding producing out-of-order endpoints near 1/2).
fn push_merged(list: &mut Vec<Interval>, iv: Interval) {
    if let Some(last) = list.last_mut() {
        if iv.lo <= last.hi {
            last.hi = last.hi.max(iv.hi);
            return;
        }
    }
    list.push(iv);
}

impl IntervalUnion {
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn spec(&self) -> &CantorSpec {
        &self.spec
    }

    /// Flag function: true iff the approximant intersects the closed interval
    /// `[a, b]` (endpoint touching counts; `a == b` tests point membership).
    pub fn flag(&self, a: f64, b: f64) -> bool {
        assert!(a <= b, "flag requires a <= b, got [{a}, {b}]");
        let idx = self.intervals.partition_point(|iv| iv.hi < a);
        idx < self.intervals.len() && self.intervals[idx].lo <= b
    }

    /// True iff `x` lies within `tol` of some interval of the approximant.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        assert!(tol >= 0.0, "contains requires tol >= 0");
        self.distance(x) <= tol
    }

    /// Distance from `x` to the nearest point of the approximant.
    pub fn distance(&self, x: f64) -> f64 {
        let idx = self.intervals.partition_point(|iv| iv.hi < x);
        let mut d = f64::INFINITY;
        if idx < self.intervals.len() {
            // 0 when x lies inside this interval
            d = (self.intervals[idx].lo - x).max(0.0);
        }
        if idx > 0 {
            d = d.min(x - self.intervals[idx - 1].hi);
        }
        d
    }
}
