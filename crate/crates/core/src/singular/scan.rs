use alloc::vec::Vec;

use crate::error::{GeomError, Result};
use crate::geomcore::SampledGrid;
use crate::legendre::LegendreFrame;
use crate::ruled::{RulingExtent, SurfaceKind};
use crate::Tolerances;

use super::classify::Context;
use super::{LocusForm, SingularClass, SingularPoint};

/// Bisection stops once the bracket is shorter than this.
const BISECTION_WIDTH: f64 = 1e-10;
/// Parameters closer than this are merged.
const MERGE: f64 = 1e-9;

/// Parameter range where the locus denominator vanishes; isolated poles
/// have `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PoleSpan {
    pub lo: f64,
    pub hi: f64,
}

/// Maximal open interval between events and poles on which every point of
/// the locus is a cuspidal edge.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EdgeArc {
    pub s_lo: f64,
    pub s_hi: f64,
    /// Classification at the midpoint.
    pub representative: SingularPoint,
    /// Sub-intervals on which the locus lies within the ruling extent.
    pub in_extent: Vec<[f64; 2]>,
}

/// Result of [`scan_singularities`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScanResult {
    pub kind: SurfaceKind,
    /// Isolated classified points (swallowtails, crosscaps, degenerate
    /// points, or the cone apex), sorted by `s0`.
    pub events: Vec<SingularPoint>,
    pub edge_arcs: Vec<EdgeArc>,
    pub poles: Vec<PoleSpan>,
}

fn bisect(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    while b - a >= BISECTION_WIDTH {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Zero sets of `f` located from its node values: sign changes refined by
/// bisection, isolated near-zero nodes (refined when their neighbours
/// bracket a root), and runs of near-zero nodes reported as spans.
fn zero_sets(nodes: &[f64], f: &dyn Fn(f64) -> f64, zero: f64) -> Vec<(f64, f64)> {
    let vals: Vec<f64> = nodes.iter().map(|&s| f(s)).collect();
    let small = |i: usize| vals[i].abs() <= zero;
    let n = nodes.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if small(i) {
            let mut j = i;
            while j + 1 < n && small(j + 1) {
                j += 1;
            }
            if i == j && i > 0 && i + 1 < n && vals[i - 1] * vals[i + 1] < 0.0 {
                let r = bisect(f, nodes[i - 1], nodes[i + 1]);
                out.push((r, r));
            } else {
                out.push((nodes[i], nodes[j]));
            }
            i = j + 1;
        } else {
            if i + 1 < n && !small(i + 1) && vals[i] * vals[i + 1] < 0.0 {
                let r = bisect(f, nodes[i], nodes[i + 1]);
                out.push((r, r));
            }
            i += 1;
        }
    }
    out
}

fn roots(nodes: &[f64], f: &dyn Fn(f64) -> f64, zero: f64) -> Vec<f64> {
    zero_sets(nodes, f, zero).into_iter().map(|(a, b)| 0.5 * (a + b)).collect()
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() < MERGE);
    v
}

/// Scan the locus of `kind` over `grid`.
///
/// A cone yields its apex as the single event. Otherwise swallowtail
/// candidates (zeros of the edge test `q'`, `p'` or `p'q - pq'`) and
/// crosscap candidates (zeros of `p`) are bracketed on the grid, refined by
/// bisection and classified; events whose `u₀` falls outside `extent` are
/// dropped. Between consecutive candidates and poles the class is constant,
/// and the cuspidal-edge pieces are returned as arcs together with the
/// sub-intervals where the locus enters `extent`.
pub fn scan_singularities(
    frame: &LegendreFrame,
    kind: SurfaceKind,
    grid: &SampledGrid,
    extent: RulingExtent,
    tol: &Tolerances,
) -> Result<ScanResult> {
    let ctx = Context::new(frame, kind, tol)?;
    let mut result = ScanResult { kind, events: Vec::new(), edge_arcs: Vec::new(), poles: Vec::new() };
    if ctx.cone {
        result.events.push(ctx.classify(grid.first(), tol)?);
        return Ok(result);
    }
    let nodes = grid.nodes();
    let form = ctx.gov.form;

    if !matches!(form, LocusForm::Direct(_)) {
        let q = |s: f64| ctx.pq(s).1;
        result.poles = zero_sets(nodes, &q, tol.pole).into_iter().map(|(lo, hi)| PoleSpan { lo, hi }).collect();
    }
    let in_pole = |s: f64| result.poles.iter().any(|p| s >= p.lo - MERGE && s <= p.hi + MERGE);

    let edge_test = |s: f64| {
        let (dp, dq) = ctx.dpq(s);
        match form {
            LocusForm::Reciprocal(_) => dq,
            LocusForm::Direct(_) => dp,
            LocusForm::Ratio(..) => {
                let (p, q) = ctx.pq(s);
                dp * q - p * dq
            }
        }
    };
    let mut candidates = roots(nodes, &edge_test, tol.pole);
    if !matches!(form, LocusForm::Reciprocal(_)) {
        let p = |s: f64| ctx.pq(s).0;
        candidates.extend(roots(nodes, &p, tol.pole));
    }
    let candidates = sorted_unique(candidates);

    for &s in &candidates {
        if in_pole(s) {
            continue;
        }
        let point = match ctx.classify(s, tol) {
            Err(GeomError::Pole { .. }) => continue,
            other => other?,
        };
        if point.u0.is_none_or(|u| extent.contains(u)) {
            result.events.push(point);
        }
    }

    let mut crossings = Vec::new();
    for c in [extent.lo, extent.hi] {
        let f = |s: f64| {
            let (p, q) = ctx.pq(s);
            p + c * q
        };
        crossings.extend(roots(nodes, &f, tol.pole));
    }
    let crossings = sorted_unique(crossings);

    let mut breaks = Vec::with_capacity(candidates.len() + 2 * result.poles.len() + 2);
    breaks.push(grid.first());
    breaks.push(grid.last());
    breaks.extend(candidates.iter().copied());
    for p in &result.poles {
        breaks.push(p.lo);
        breaks.push(p.hi);
    }
    let breaks = sorted_unique(breaks);

    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= MERGE {
            continue;
        }
        let mid = 0.5 * (a + b);
        let point = match ctx.classify(mid, tol) {
            Err(GeomError::Pole { .. }) => continue,
            other => other?,
        };
        if point.class != SingularClass::CuspidalEdge {
            continue;
        }
        let mut cuts = Vec::with_capacity(crossings.len() + 2);
        cuts.push(a);
        cuts.extend(crossings.iter().copied().filter(|&c| c > a + MERGE && c < b - MERGE));
        cuts.push(b);
        let mut in_extent: Vec<[f64; 2]> = Vec::new();
        for piece in cuts.windows(2) {
            let t = 0.5 * (piece[0] + piece[1]);
            let (m, n) = (frame.m_at(t), frame.n_at(t));
            let inside = ctx.gov.locus(m, n, tol).is_some_and(|u| extent.contains(u));
            if !inside {
                continue;
            }
            match in_extent.last_mut() {
                Some(last) if last[1] == piece[0] => last[1] = piece[1],
                _ => in_extent.push([piece[0], piece[1]]),
            }
        }
        if !in_extent.is_empty() {
            result.edge_arcs.push(EdgeArc { s_lo: a, s_hi: b, representative: point, in_extent });
        }
    }
    Ok(result)
}
