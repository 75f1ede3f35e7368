//! Singular points of the six ruled surfaces of a Legendre frame.
//!
//! Along each ruling the normal of `Φ = base + u·director` is linear in `u`
//! and vanishes at `u = -p(s)/q(s)`, where `(p, q)` depends on the kind:
//!
//! | kind         | form       | p | q | governing g |
//! |--------------|------------|---|---|-------------|
//! | `beta_gamma` | reciprocal | 1 | m | 1/m |
//! | `beta_v`     | reciprocal | 1 | n | 1/n |
//! | `gamma_beta` | direct     | m | 1 | m   |
//! | `v_beta`     | direct     | n | 1 | n   |
//! | `gamma_v`    | ratio      | m | n | m/n |
//! | `v_gamma`    | ratio      | n | m | n/m |
//!
//! [`classify_point`] applies the decision table for the form to the jet
//! `(g, g', g'')` at `s₀`; [`scan_singularities`] locates events along the
//! whole domain.

mod classify;
mod normal_form;
mod scan;

pub use classify::{classify_point, cone_apex, decide, ConeApex, Decision, Jet};
pub use normal_form::{normal_form_point, normal_form_surface};
pub use scan::{scan_singularities, EdgeArc, PoleSpan, ScanResult};

use alloc::vec::Vec;

use crate::geomcore::{SampledGrid, Vec3};
use crate::legendre::LegendreFrame;
use crate::ruled::SurfaceKind;
use crate::Tolerances;

/// Classes of points on the singular locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SingularClass {
    CuspidalEdge,
    Swallowtail,
    CuspidalCrosscap,
    Cone,
    Regular,
    /// The conditions straddle a tolerance or match no clause.
    Degenerate,
}

impl SingularClass {
    pub const ALL: [SingularClass; 6] = [
        SingularClass::CuspidalEdge,
        SingularClass::Swallowtail,
        SingularClass::CuspidalCrosscap,
        SingularClass::Cone,
        SingularClass::Regular,
        SingularClass::Degenerate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SingularClass::CuspidalEdge => "cuspidal_edge",
            SingularClass::Swallowtail => "swallowtail",
            SingularClass::CuspidalCrosscap => "cuspidal_crosscap",
            SingularClass::Cone => "cone",
            SingularClass::Regular => "regular",
            SingularClass::Degenerate => "degenerate",
        }
    }

    /// Short names `ce`, `sw`, `ccr`, or the full names.
    pub fn from_name(name: &str) -> Option<SingularClass> {
        match name {
            "ce" => Some(SingularClass::CuspidalEdge),
            "sw" => Some(SingularClass::Swallowtail),
            "ccr" => Some(SingularClass::CuspidalCrosscap),
            _ => SingularClass::ALL.into_iter().find(|c| c.name() == name),
        }
    }
}

impl core::fmt::Display for SingularClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which curvature function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    M,
    N,
}

/// Shape of the singular locus `u = -p/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusForm {
    /// `p = 1`, `q = c`; base curve β.
    Reciprocal(Curvature),
    /// `p = c`, `q = 1`; director β.
    Direct(Curvature),
    /// `p = a`, `q = b`; β unused.
    Ratio(Curvature, Curvature),
}

/// The locus form and governing function of a kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoverningFunction {
    pub kind: SurfaceKind,
    pub form: LocusForm,
}

impl GoverningFunction {
    pub fn of(kind: SurfaceKind) -> Self {
        use Curvature::{M, N};
        let form = match kind {
            SurfaceKind::BetaGamma => LocusForm::Reciprocal(M),
            SurfaceKind::BetaV => LocusForm::Reciprocal(N),
            SurfaceKind::GammaBeta => LocusForm::Direct(M),
            SurfaceKind::VBeta => LocusForm::Direct(N),
            SurfaceKind::GammaV => LocusForm::Ratio(M, N),
            SurfaceKind::VGamma => LocusForm::Ratio(N, M),
        };
        GoverningFunction { kind, form }
    }

    /// `(p, q)` from `(m, n)`.
    pub fn pq(&self, m: f64, n: f64) -> (f64, f64) {
        let pick = |c: Curvature| match c {
            Curvature::M => m,
            Curvature::N => n,
        };
        match self.form {
            LocusForm::Reciprocal(c) => (1.0, pick(c)),
            LocusForm::Direct(c) => (pick(c), 1.0),
            LocusForm::Ratio(a, b) => (pick(a), pick(b)),
        }
    }

    /// `g = p/q`.
    pub fn value(&self, m: f64, n: f64) -> f64 {
        let (p, q) = self.pq(m, n);
        p / q
    }

    /// `u = -p/q`, or `None` when `|q| < tol.pole`.
    pub fn locus(&self, m: f64, n: f64, tol: &Tolerances) -> Option<f64> {
        let (p, q) = self.pq(m, n);
        (q.abs() >= tol.pole).then(|| -p / q)
    }
}

/// Quantities tested when classifying a point.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Diagnostics {
    /// `(m, m', m'')` at `s₀`.
    pub m: [f64; 3],
    /// `(n, n', n'')` at `s₀`.
    pub n: [f64; 3],
    /// `(g, g', g'')` at `s₀`; absent where the denominator vanishes.
    pub governing: Option<[f64; 3]>,
    /// `|normal(s₀, u₀)|` when `u₀` is finite.
    pub normal_magnitude: Option<f64>,
}

/// A classified parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SingularPoint {
    pub kind: SurfaceKind,
    pub s0: f64,
    /// Ruling parameter of the singular point; `None` when there is no
    /// finite or unique one.
    pub u0: Option<f64>,
    pub class: SingularClass,
    pub diagnostics: Diagnostics,
    /// `Φ(s₀, u₀)`.
    pub location: Option<Vec3>,
}

/// Locus value at one grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LocusSample {
    pub s: f64,
    /// `-p/q`, absent at poles.
    pub u: Option<f64>,
    /// `|q| < tol.pole`.
    pub pole: bool,
}

/// Per-node singular locus `u(s) = -p(s)/q(s)` with pole flags.
pub fn singular_locus(frame: &LegendreFrame, kind: SurfaceKind, grid: &SampledGrid, tol: &Tolerances) -> Vec<LocusSample> {
    let gov = GoverningFunction::of(kind);
    grid.nodes()
        .iter()
        .map(|&s| {
            let u = gov.locus(frame.m_at(s), frame.n_at(s), tol);
            LocusSample { s, u, pole: u.is_none() }
        })
        .collect()
}
