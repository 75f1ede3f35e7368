//! Ruled surfaces `Φ(s, u) = base(s) + u·director(s)` built from the
//! curves `{β, γ, v}` of a Legendre frame.

use alloc::vec::Vec;

use crate::error::{GeomError, Result};
use crate::geomcore::{derivative, CurveRef, Interval, SampledGrid, Vec3};
use crate::legendre::LegendreCurve;
use crate::Tolerances;

/// Which frame curve plays base or director.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Beta,
    Gamma,
    V,
}

/// The six ordered `(base, director)` pairings from `{β, γ, v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SurfaceKind {
    BetaGamma,
    BetaV,
    GammaBeta,
    VBeta,
    GammaV,
    VGamma,
}

impl SurfaceKind {
    /// All kinds in report order.
    pub const ALL: [SurfaceKind; 6] = [
        SurfaceKind::BetaGamma,
        SurfaceKind::BetaV,
        SurfaceKind::GammaBeta,
        SurfaceKind::VBeta,
        SurfaceKind::GammaV,
        SurfaceKind::VGamma,
    ];

    /// Lowercase tag, e.g. `beta_gamma`.
    pub fn tag(self) -> &'static str {
        match self {
            SurfaceKind::BetaGamma => "beta_gamma",
            SurfaceKind::BetaV => "beta_v",
            SurfaceKind::GammaBeta => "gamma_beta",
            SurfaceKind::VBeta => "v_beta",
            SurfaceKind::GammaV => "gamma_v",
            SurfaceKind::VGamma => "v_gamma",
        }
    }

    /// Parse a tag, case-insensitively (`BETA_GAMMA` and `beta_gamma` both work).
    pub fn from_tag(tag: &str) -> Option<SurfaceKind> {
        SurfaceKind::ALL.into_iter().find(|k| k.tag().eq_ignore_ascii_case(tag))
    }

    pub fn base(self) -> Role {
        match self {
            SurfaceKind::BetaGamma | SurfaceKind::BetaV => Role::Beta,
            SurfaceKind::GammaBeta | SurfaceKind::GammaV => Role::Gamma,
            SurfaceKind::VBeta | SurfaceKind::VGamma => Role::V,
        }
    }

    pub fn director(self) -> Role {
        match self {
            SurfaceKind::GammaBeta | SurfaceKind::VBeta => Role::Beta,
            SurfaceKind::BetaGamma | SurfaceKind::VGamma => Role::Gamma,
            SurfaceKind::BetaV | SurfaceKind::GammaV => Role::V,
        }
    }

    /// The kind obtained by exchanging the roles of γ and v.
    pub fn swapped(self) -> SurfaceKind {
        match self {
            SurfaceKind::BetaGamma => SurfaceKind::BetaV,
            SurfaceKind::BetaV => SurfaceKind::BetaGamma,
            SurfaceKind::GammaBeta => SurfaceKind::VBeta,
            SurfaceKind::VBeta => SurfaceKind::GammaBeta,
            SurfaceKind::GammaV => SurfaceKind::VGamma,
            SurfaceKind::VGamma => SurfaceKind::GammaV,
        }
    }
}

impl core::fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Closed range of the ruling parameter `u`; `lo == hi` is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RulingExtent {
    pub lo: f64,
    pub hi: f64,
}

impl RulingExtent {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(GeomError::contract(alloc::format!("invalid ruling extent [{lo}, {hi}]")));
        }
        Ok(RulingExtent { lo, hi })
    }

    pub fn contains(&self, u: f64) -> bool {
        u >= self.lo - 1e-12 && u <= self.hi + 1e-12
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }
}

/// `Φ(s, u) = base(s) + u·director(s)`.
#[derive(Debug, Clone)]
pub struct RuledSurface {
    base: CurveRef,
    director: CurveRef,
    kind: Option<SurfaceKind>,
    s_domain: Interval,
    u_extent: RulingExtent,
}

/// Per-node developability defect `|det(base', director, director')|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Developability {
    pub per_node: Vec<f64>,
    pub max: f64,
}

impl RuledSurface {
    /// Surface from arbitrary curves sharing a domain.
    pub fn new(base: CurveRef, director: CurveRef, u_extent: RulingExtent) -> Result<Self> {
        let s_domain = base.domain();
        if director.domain() != s_domain {
            return Err(GeomError::contract("base and director must share a domain"));
        }
        Ok(RuledSurface { base, director, kind: None, s_domain, u_extent })
    }

    /// One of the six surfaces of a Legendre curve; `beta` is required for
    /// the kinds that use it. When β is the director it is used as a point
    /// curve, not normalized.
    pub fn from_legendre(
        curve: &LegendreCurve,
        beta: Option<CurveRef>,
        kind: SurfaceKind,
        u_extent: RulingExtent,
    ) -> Result<Self> {
        let pick = |role: Role| -> Result<CurveRef> {
            match role {
                Role::Gamma => Ok(curve.gamma().clone()),
                Role::V => Ok(curve.v().clone()),
                Role::Beta => {
                    beta.clone().ok_or_else(|| GeomError::contract(alloc::format!("kind {kind} needs the curve β")))
                }
            }
        };
        let mut s = RuledSurface::new(pick(kind.base())?, pick(kind.director())?, u_extent)?;
        s.kind = Some(kind);
        Ok(s)
    }

    pub fn kind(&self) -> Option<SurfaceKind> {
        self.kind
    }

    pub fn base(&self) -> &CurveRef {
        &self.base
    }

    pub fn director(&self) -> &CurveRef {
        &self.director
    }

    pub fn s_domain(&self) -> Interval {
        self.s_domain
    }

    pub fn u_extent(&self) -> RulingExtent {
        self.u_extent
    }

    pub fn with_u_extent(mut self, u_extent: RulingExtent) -> Self {
        self.u_extent = u_extent;
        self
    }

    fn check(&self, s: f64, u: f64) -> Result<f64> {
        let s = self.s_domain.check(s)?;
        if !u.is_finite() || !self.u_extent.contains(u) {
            return Err(GeomError::Domain { s: u, lo: self.u_extent.lo, hi: self.u_extent.hi });
        }
        Ok(s)
    }

    /// `Φ(s, u)`; both parameters must lie in the surface's domain.
    pub fn evaluate(&self, s: f64, u: f64) -> Result<Vec3> {
        let s = self.check(s, u)?;
        Ok(self.point_on_ruling(s, u))
    }

    /// `base(s) + u·director(s)` for any finite `u`; `s` is not checked.
    pub fn point_on_ruling(&self, s: f64, u: f64) -> Vec3 {
        self.base.point(s) + self.director.point(s) * u
    }

    /// `(∂Φ/∂s, ∂Φ/∂u)`.
    pub fn partials(&self, s: f64, u: f64) -> Result<(Vec3, Vec3)> {
        let s = self.check(s, u)?;
        self.partials_unchecked(s, u)
    }

    fn partials_unchecked(&self, s: f64, u: f64) -> Result<(Vec3, Vec3)> {
        let db = derivative(&*self.base, s, 1)?;
        let dd = derivative(&*self.director, s, 1)?;
        Ok((db + dd * u, self.director.point(s)))
    }

    /// `∂Φ/∂s × ∂Φ/∂u`; zero exactly at singular points.
    pub fn normal_vector(&self, s: f64, u: f64) -> Result<Vec3> {
        let (ps, pu) = self.partials(s, u)?;
        Ok(ps.cross(pu))
    }

    /// The normal along the ruling at `s` is `a + u·b`, linear in `u`;
    /// returns `(a, b)`.
    pub fn ruling_normal(&self, s: f64) -> Result<(Vec3, Vec3)> {
        let s = self.s_domain.check(s)?;
        let d = self.director.point(s);
        let a = derivative(&*self.base, s, 1)?.cross(d);
        let b = derivative(&*self.director, s, 1)?.cross(d);
        Ok((a, b))
    }

    /// Normal magnitude at any finite `u` along the ruling at `s`.
    pub fn normal_magnitude(&self, s: f64, u: f64) -> Result<f64> {
        let (a, b) = self.ruling_normal(s)?;
        Ok((a + b * u).norm())
    }

    /// Exact minimum of `|normal|` for `u` in the extent: `(u*, |n(u*)|)`.
    pub fn min_normal_on_ruling(&self, s: f64) -> Result<(f64, f64)> {
        let (a, b) = self.ruling_normal(s)?;
        let bb = b.norm_squared();
        let u = if bb > 0.0 { -a.dot(b) / bb } else { self.u_extent.lo };
        let u = u.clamp(self.u_extent.lo, self.u_extent.hi);
        Ok((u, (a + b * u).norm()))
    }

    /// `|det(base', director, director')|` per node.
    pub fn developability_defect(&self, grid: &SampledGrid) -> Result<Developability> {
        let mut per_node = Vec::with_capacity(grid.len());
        for &s in grid.nodes() {
            let db = derivative(&*self.base, s, 1)?;
            let dd = derivative(&*self.director, s, 1)?;
            per_node.push(Vec3::triple(db, self.director.point(s), dd).abs());
        }
        let max = per_node.iter().copied().fold(0.0, f64::max);
        Ok(Developability { per_node, max })
    }

    /// Striction curve `base - <base', director'>/<director', director'>·director`
    /// sampled at the grid nodes.
    pub fn striction_curve(&self, grid: &SampledGrid, tol: &Tolerances) -> Result<Vec<Vec3>> {
        let mut out = Vec::with_capacity(grid.len());
        for (node, &s) in grid.nodes().iter().enumerate() {
            let db = derivative(&*self.base, s, 1)?;
            let dd = derivative(&*self.director, s, 1)?;
            let dd2 = dd.norm_squared();
            if crate::math::sqrt(dd2) <= tol.kappa {
                return Err(GeomError::CylindricalRuling { node, s });
            }
            out.push(self.base.point(s) - self.director.point(s) * (db.dot(dd) / dd2));
        }
        Ok(out)
    }

    /// Row-major `ns × nu` grid over the domain and extent. A row is flagged
    /// singular when the normal vanishes (below `tol.sing`) somewhere on its
    /// ruling within the extent.
    pub fn tessellate(&self, ns: usize, nu: usize, tol: &Tolerances) -> Result<Mesh> {
        if ns < 2 || nu < 2 {
            return Err(GeomError::contract("tessellation needs at least 2 × 2 samples"));
        }
        let grid = SampledGrid::uniform(self.s_domain, ns)?;
        let us: Vec<f64> = (0..nu)
            .map(|j| {
                if j == nu - 1 {
                    self.u_extent.hi
                } else {
                    self.u_extent.lo + self.u_extent.len() * j as f64 / (nu - 1) as f64
                }
            })
            .collect();
        let mut mesh = Mesh::grid(ns, nu);
        for (row, &s) in grid.nodes().iter().enumerate() {
            for &u in &us {
                mesh.vertices.push(self.point_on_ruling(s, u));
                mesh.params.push((s, u));
            }
            let (u_star, mag) = self.min_normal_on_ruling(s)?;
            if mag < tol.sing {
                mesh.singular_rows.push(SingularRow { row, s, u: u_star });
            }
        }
        Ok(mesh)
    }
}

/// A row of a tessellation containing a singular point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularRow {
    pub row: usize,
    pub s: f64,
    /// Ruling parameter where the normal is smallest.
    pub u: f64,
}

/// Quad mesh on a row-major parameter grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    /// `(s, u)` per vertex.
    pub params: Vec<(f64, f64)>,
    /// Zero-based vertex indices, counter-clockwise in `(s, u)`.
    pub faces: Vec<[usize; 4]>,
    pub rows: usize,
    pub cols: usize,
    pub singular_rows: Vec<SingularRow>,
}

impl Mesh {
    /// Empty vertex storage with the faces of a `rows × cols` grid.
    pub fn grid(rows: usize, cols: usize) -> Mesh {
        let mut faces = Vec::with_capacity(rows.saturating_sub(1) * cols.saturating_sub(1));
        for i in 0..rows.saturating_sub(1) {
            for j in 0..cols.saturating_sub(1) {
                let a = i * cols + j;
                faces.push([a, a + 1, a + cols + 1, a + cols]);
            }
        }
        Mesh {
            vertices: Vec::with_capacity(rows * cols),
            params: Vec::with_capacity(rows * cols),
            faces,
            rows,
            cols,
            singular_rows: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Every face index refers to a vertex.
    pub fn is_consistent(&self) -> bool {
        self.vertices.len() == self.params.len()
            && self.faces.iter().all(|f| f.iter().all(|&i| i < self.vertices.len()))
    }
}
