use alloc::vec::Vec;

use crate::error::{GeomError, Result};

/// Closed parameter interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || hi - lo <= 0.0 {
            return Err(GeomError::contract(alloc::format!(
                "interval needs finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    /// Slack for parameters that land a rounding error outside the interval.
    fn slack(&self) -> f64 {
        1e-12 * (1.0 + self.lo.abs().max(self.hi.abs()))
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.lo - self.slack() && s <= self.hi + self.slack()
    }

    /// Clamp `s` into the interval if it lies within rounding slack, else a
    /// domain error.
    pub fn check(&self, s: f64) -> Result<f64> {
        if s.is_nan() || !self.contains(s) {
            return Err(GeomError::Domain { s, lo: self.lo, hi: self.hi });
        }
        Ok(s.clamp(self.lo, self.hi))
    }
}

/// Uniform grid over an interval; first node is `lo`, last is `hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGrid {
    domain: Interval,
    nodes: Vec<f64>,
}

impl SampledGrid {
    pub fn uniform(domain: Interval, len: usize) -> Result<Self> {
        if len < 2 {
            return Err(GeomError::contract("a grid needs at least two nodes"));
        }
        let step = domain.len() / (len - 1) as f64;
        let mut nodes: Vec<f64> = (0..len).map(|i| domain.lo() + step * i as f64).collect();
        nodes[len - 1] = domain.hi();
        Ok(SampledGrid { domain, nodes })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.domain.len() / (self.nodes.len() - 1) as f64
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Indices of the nodes strictly inside the domain.
    pub fn interior(&self) -> core::ops::Range<usize> {
        1..self.nodes.len() - 1
    }
}
