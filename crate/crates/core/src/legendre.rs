//! Legendre curves `Γ = (γ, v)` on UT S² and their curvature functions.
//!
//! For a pair of orthonormal unit vectors the frame `{γ, v, η = γ × v}`
//! satisfies
//!
//! ```text
//! γ' =       l v + m η
//! v' = -l γ      + n η
//! η' = -m γ - n v
//! ```
//!
//! with `l = <γ', v>`, `m = <γ', η>`, `n = <v', η>`. The pair is Legendre
//! when `l ≡ 0`; then `{η, γ, v}` is a rotation-minimizing frame along the
//! η-direction curve `β = ∫ η ds`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{GeomError, Result};
use crate::framing::{orthonormality_defect, RmfApparatus};
use crate::geomcore::{
    derivative, integrate_curve, CurveRef, FnCurve, HermiteCurve, IntegratedCurve, ParamCurve, SampledGrid, Vec3,
    VecFn,
};
use crate::ruled::{RuledSurface, RulingExtent, SurfaceKind};
use crate::Tolerances;

/// Deviations of a sampled pair from UT S².
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ValidationReport {
    /// `max | |γ| - 1 |`
    pub gamma_norm: f64,
    /// `max | |v| - 1 |`
    pub v_norm: f64,
    /// `max |<γ, v>|`
    pub dot: f64,
    pub passed: bool,
    /// Set when the pair was projected back onto UT S² before use.
    pub renormalized: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max ||γ|-1| = {:e}, max ||v|-1| = {:e}, max |<γ,v>| = {:e}{}",
            self.gamma_norm,
            self.v_norm,
            self.dot,
            if self.renormalized { " (renormalized)" } else { "" }
        )
    }
}

impl ValidationReport {
    fn within(&self, tol: &Tolerances, factor: f64) -> bool {
        self.gamma_norm < factor * tol.sphere && self.v_norm < factor * tol.sphere && self.dot < factor * tol.ortho
    }
}

/// Check `|γ| = |v| = 1` and `<γ, v> = 0` on the grid. Always returns a
/// report; constructors decide what to reject.
pub fn validate_ut_s2(gamma: &dyn ParamCurve, v: &dyn ParamCurve, grid: &SampledGrid, tol: &Tolerances) -> ValidationReport {
    let mut report = ValidationReport { gamma_norm: 0.0, v_norm: 0.0, dot: 0.0, passed: false, renormalized: false };
    for &s in grid.nodes() {
        let (g, w) = (gamma.point(s), v.point(s));
        report.gamma_norm = report.gamma_norm.max((g.norm() - 1.0).abs());
        report.v_norm = report.v_norm.max((w.norm() - 1.0).abs());
        report.dot = report.dot.max(g.dot(w).abs());
    }
    if !(report.gamma_norm.is_finite() && report.v_norm.is_finite() && report.dot.is_finite()) {
        report.gamma_norm = f64::INFINITY;
    }
    report.passed = report.within(tol, 1.0);
    report
}

/// Result of [`LegendreCurve::is_legendre`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LegendreCheck {
    pub passed: bool,
    pub max_l: f64,
}

/// A curve on UT S² sampled on a grid, with `η` and `l, m, n` per node.
#[derive(Clone)]
pub struct LegendreCurve {
    gamma: CurveRef,
    v: CurveRef,
    grid: SampledGrid,
    pub eta: Vec<Vec3>,
    pub l: Vec<f64>,
    pub m: Vec<f64>,
    pub n: Vec<f64>,
    report: ValidationReport,
}

impl fmt::Debug for LegendreCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LegendreCurve")
            .field("grid", &(self.grid.first(), self.grid.last(), self.grid.len()))
            .field("report", &self.report)
            .finish()
    }
}

impl LegendreCurve {
    /// Validate the pair on the grid and compute its curvature functions.
    /// Fails with [`GeomError::NotOnBundle`] if validation fails.
    pub fn new(gamma: CurveRef, v: CurveRef, grid: &SampledGrid, tol: &Tolerances) -> Result<Self> {
        let report = validate_ut_s2(&*gamma, &*v, grid, tol);
        if !report.passed {
            return Err(GeomError::NotOnBundle(report));
        }
        Self::assemble(gamma, v, grid, report)
    }

    /// Like [`LegendreCurve::new`], but a pair failing validation by less
    /// than ten times the tolerances is projected onto UT S² (normalize γ,
    /// Gram-Schmidt v against γ). The report records the projection.
    pub fn renormalized(gamma: CurveRef, v: CurveRef, grid: &SampledGrid, tol: &Tolerances) -> Result<Self> {
        let report = validate_ut_s2(&*gamma, &*v, grid, tol);
        if report.passed {
            return Self::assemble(gamma, v, grid, report);
        }
        if !report.within(tol, 10.0) {
            return Err(GeomError::NotOnBundle(report));
        }
        let domain = gamma.domain();
        let (g0, v0) = (gamma.clone(), v.clone());
        let unit_gamma = move |s: f64| {
            let g = g0.point(s);
            g / g.norm()
        };
        let ug = unit_gamma.clone();
        let projected_v = move |s: f64| {
            let g = ug(s);
            let w = v0.point(s);
            let w = w - g * w.dot(g);
            w / w.norm()
        };
        let gamma = FnCurve::new(domain, unit_gamma).into_ref();
        let v = FnCurve::new(domain, projected_v).into_ref();
        let mut report = validate_ut_s2(&*gamma, &*v, grid, tol);
        report.renormalized = true;
        if !report.passed {
            return Err(GeomError::NotOnBundle(report));
        }
        Self::assemble(gamma, v, grid, report)
    }

    fn assemble(gamma: CurveRef, v: CurveRef, grid: &SampledGrid, report: ValidationReport) -> Result<Self> {
        if gamma.domain() != v.domain() {
            return Err(GeomError::contract("γ and v must share a domain"));
        }
        let n = grid.len();
        let mut out = LegendreCurve {
            gamma,
            v,
            grid: grid.clone(),
            eta: Vec::with_capacity(n),
            l: Vec::with_capacity(n),
            m: Vec::with_capacity(n),
            n: Vec::with_capacity(n),
            report,
        };
        for &s in grid.nodes() {
            let c = out.curvatures_at(s)?;
            out.eta.push(c.eta);
            out.l.push(c.l);
            out.m.push(c.m);
            out.n.push(c.n);
        }
        Ok(out)
    }

    pub fn gamma(&self) -> &CurveRef {
        &self.gamma
    }

    pub fn v(&self) -> &CurveRef {
        &self.v
    }

    pub fn grid(&self) -> &SampledGrid {
        &self.grid
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// `η`, `l`, `m`, `n` at an arbitrary parameter.
    pub fn curvatures_at(&self, s: f64) -> Result<PointCurvatures> {
        let g = self.gamma.point(s);
        let w = self.v.point(s);
        let dg = derivative(&*self.gamma, s, 1)?;
        let dw = derivative(&*self.v, s, 1)?;
        let eta = g.cross(w);
        Ok(PointCurvatures { eta, l: dg.dot(w), m: dg.dot(eta), n: dw.dot(eta) })
    }

    /// `m(s) = <γ'(s), η(s)>`.
    pub fn m_at(&self, s: f64) -> f64 {
        let eta = self.gamma.point(s).cross(self.v.point(s));
        derivative(&*self.gamma, s, 1).map(|d| d.dot(eta)).unwrap_or(f64::NAN)
    }

    /// `n(s) = <v'(s), η(s)>`.
    pub fn n_at(&self, s: f64) -> f64 {
        let eta = self.gamma.point(s).cross(self.v.point(s));
        derivative(&*self.v, s, 1).map(|d| d.dot(eta)).unwrap_or(f64::NAN)
    }

    pub fn eta_at(&self, s: f64) -> Vec3 {
        self.gamma.point(s).cross(self.v.point(s))
    }

    /// `η' = γ' × v + γ × v'`.
    pub fn eta_derivative(&self, s: f64) -> Result<Vec3> {
        let dg = derivative(&*self.gamma, s, 1)?;
        let dw = derivative(&*self.v, s, 1)?;
        Ok(dg.cross(self.v.point(s)) + self.gamma.point(s).cross(dw))
    }

    pub fn max_abs_l(&self) -> f64 {
        self.l.iter().fold(0.0, |a, &x| a.max(x.abs()))
    }

    pub fn is_legendre(&self, tol: &Tolerances) -> LegendreCheck {
        let max_l = self.max_abs_l();
        LegendreCheck { passed: max_l < tol.legendre, max_l }
    }

    /// Largest `|det(γ, v, η) - 1|` over the nodes.
    pub fn max_handedness_defect(&self) -> f64 {
        self.grid
            .nodes()
            .iter()
            .zip(&self.eta)
            .map(|(&s, &e)| (Vec3::triple(self.gamma.point(s), self.v.point(s), e) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest orthonormality defect of `{γ, v, η}` over the nodes.
    pub fn max_orthonormality_defect(&self) -> f64 {
        self.grid
            .nodes()
            .iter()
            .zip(&self.eta)
            .map(|(&s, &e)| orthonormality_defect([self.gamma.point(s), self.v.point(s), e]))
            .fold(0.0, f64::max)
    }
}

/// Curvature functions at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCurvatures {
    pub eta: Vec3,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

/// Per-node `(l, m, n)` and `η` for a pair on UT S².
pub fn legendre_curvatures(gamma: CurveRef, v: CurveRef, grid: &SampledGrid, tol: &Tolerances) -> Result<LegendreCurve> {
    LegendreCurve::new(gamma, v, grid, tol)
}

/// The pair `(N₁, N₂)` of a rotation-minimizing frame, as a Legendre curve.
/// The sampled normals are interpolated by cubic Hermite curves with
/// finite-difference tangents.
pub fn legendre_from_rm_pair(rmf: &RmfApparatus, tol: &Tolerances) -> Result<LegendreCurve> {
    if rmf.max_orthonormality_defect() > 1e-9 {
        return Err(GeomError::contract("RMF samples are not orthonormal"));
    }
    let defect = rmf.rm_defect();
    if defect >= tol.rm {
        return Err(GeomError::contract(alloc::format!("normals are not rotation minimizing: defect {defect}")));
    }
    let nodes = rmf.grid.nodes().to_vec();
    let n1 = HermiteCurve::from_samples(nodes.clone(), rmf.n1.clone())?;
    let n2 = HermiteCurve::from_samples(nodes, rmf.n2.clone())?;
    let curve = LegendreCurve::new(Arc::new(n1), Arc::new(n2), &rmf.grid, tol)?;
    let check = curve.is_legendre(tol);
    if !check.passed {
        return Err(GeomError::NotLegendre { max_l: check.max_l });
    }
    Ok(curve)
}

/// Largest residuals of the Legendre frame equations over interior nodes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FrameResiduals {
    /// `|γ' - mη|`
    pub gamma: f64,
    /// `|v' - nη|`
    pub v: f64,
    /// `|η' + mγ + nv|`
    pub eta: f64,
}

/// A Legendre curve together with its η-direction curve `β = ∫ η ds`; the
/// frame `{η, γ, v}` is rotation minimizing along `β`.
#[derive(Clone)]
pub struct LegendreFrame {
    curve: LegendreCurve,
    beta: Arc<IntegratedCurve>,
    residuals: FrameResiduals,
}

impl fmt::Debug for LegendreFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LegendreFrame").field("curve", &self.curve).field("residuals", &self.residuals).finish()
    }
}

/// Integrate `β' = η` and check that `{η, γ, v}` obeys the Legendre frame
/// equations `γ' = mη`, `v' = nη`, `η' = -mγ - nv`.
pub fn rmf_from_legendre(curve: LegendreCurve, s0: f64, c0: Vec3, n_steps: usize, tol: &Tolerances) -> Result<LegendreFrame> {
    let check = curve.is_legendre(tol);
    if !check.passed {
        return Err(GeomError::NotLegendre { max_l: check.max_l });
    }
    let (g, w) = (curve.gamma.clone(), curve.v.clone());
    let eta: VecFn = Arc::new(move |s| g.point(s).cross(w.point(s)));
    let beta = integrate_curve(eta, curve.gamma.domain(), s0, c0, n_steps)?.with_arc_length(true);

    let mut res = FrameResiduals::default();
    for i in curve.grid.interior() {
        let s = curve.grid.nodes()[i];
        let (e, m, n) = (curve.eta[i], curve.m[i], curve.n[i]);
        let dg = derivative(&*curve.gamma, s, 1)?;
        let dw = derivative(&*curve.v, s, 1)?;
        let de = curve.eta_derivative(s)?;
        res.gamma = res.gamma.max((dg - e * m).norm());
        res.v = res.v.max((dw - e * n).norm());
        res.eta = res.eta.max((de + curve.gamma.point(s) * m + curve.v.point(s) * n).norm());
    }
    let worst = res.gamma.max(res.v);
    if worst >= tol.eq6 {
        return Err(GeomError::FrameResidual { residual: worst, tolerance: tol.eq6 });
    }
    Ok(LegendreFrame { curve, beta: Arc::new(beta), residuals: res })
}

impl LegendreFrame {
    pub fn curve(&self) -> &LegendreCurve {
        &self.curve
    }

    pub fn grid(&self) -> &SampledGrid {
        &self.curve.grid
    }

    pub fn beta(&self) -> CurveRef {
        self.beta.clone()
    }

    pub fn beta_curve(&self) -> &IntegratedCurve {
        &self.beta
    }

    pub fn residuals(&self) -> FrameResiduals {
        self.residuals
    }

    pub fn m_at(&self, s: f64) -> f64 {
        self.curve.m_at(s)
    }

    pub fn n_at(&self, s: f64) -> f64 {
        self.curve.n_at(s)
    }

    pub fn surface(&self, kind: SurfaceKind, extent: RulingExtent) -> Result<RuledSurface> {
        RuledSurface::from_legendre(&self.curve, Some(self.beta()), kind, extent)
    }
}
