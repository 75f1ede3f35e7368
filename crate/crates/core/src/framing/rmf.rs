use alloc::vec::Vec;
use core::f64::consts::PI;

use super::frenet::check_unit_speed;
use super::orthonormality_defect;
use crate::error::{GeomError, Result};
use crate::geomcore::stencil::sampled_derivative;
use crate::geomcore::{derivative, point_at, ParamCurve, SampledGrid, Vec3};
use crate::math;
use crate::Tolerances;

/// Orthonormal triple `(T, N₁, N₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoFrame {
    pub t: Vec3,
    pub n1: Vec3,
    pub n2: Vec3,
}

impl OrthoFrame {
    pub fn new(t: Vec3, n1: Vec3, n2: Vec3) -> Self {
        OrthoFrame { t, n1, n2 }
    }

    /// Right-handed frame with `N₂ = T × N₁`.
    pub fn from_tangent_normal(t: Vec3, n1: Vec3) -> Self {
        OrthoFrame { t, n1, n2: t.cross(n1) }
    }

    /// Rotate the normals by `phi` about `T`.
    pub fn rotated(self, phi: f64) -> Self {
        let (c, s) = (math::cos(phi), math::sin(phi));
        OrthoFrame { t: self.t, n1: self.n1 * c + self.n2 * s, n2: self.n2 * c - self.n1 * s }
    }

    pub fn defect(&self) -> f64 {
        orthonormality_defect([self.t, self.n1, self.n2])
    }
}

/// Rotation-minimizing frame sampled on a grid, with natural curvatures
/// `κ₁ = <T', N₁>`, `κ₂ = <T', N₂>` and the continuous angle
/// `θ = arg(κ₁, κ₂)`.
#[derive(Debug, Clone)]
pub struct RmfApparatus {
    pub grid: SampledGrid,
    pub t: Vec<Vec3>,
    pub n1: Vec<Vec3>,
    pub n2: Vec<Vec3>,
    pub kappa1: Vec<f64>,
    pub kappa2: Vec<f64>,
    pub theta: Vec<f64>,
}

fn reflect(v: Vec3, axis: Vec3, axis_sq: f64) -> Vec3 {
    v - axis * (2.0 * axis.dot(v) / axis_sq)
}

/// Propagate an initial frame along a unit-speed curve with the
/// double-reflection method: per step, reflect in the bisecting plane of the
/// chord, then in the plane that carries the reflected tangent onto the true
/// tangent.
pub fn rmf_propagate(c: &dyn ParamCurve, initial: OrthoFrame, grid: &SampledGrid, tol: &Tolerances) -> Result<RmfApparatus> {
    if initial.defect() > 1e-8 {
        return Err(GeomError::contract("initial frame is not orthonormal"));
    }
    let nodes = grid.nodes();
    let n = nodes.len();
    let mut pos = Vec::with_capacity(n);
    let mut t = Vec::with_capacity(n);
    let mut accel = Vec::with_capacity(n);
    for (node, &s) in nodes.iter().enumerate() {
        pos.push(point_at(c, s)?);
        let d1 = derivative(c, s, 1)?;
        if d1.norm() <= tol.kappa {
            return Err(GeomError::DegenerateCurvature { node, s });
        }
        t.push(check_unit_speed(c, s, tol)?);
        accel.push(derivative(c, s, 2)?);
    }
    if initial.t.distance(t[0]) > 1e-8 {
        return Err(GeomError::contract("initial tangent does not match the curve tangent"));
    }

    let mut n1 = Vec::with_capacity(n);
    let mut n2 = Vec::with_capacity(n);
    n1.push(initial.n1);
    n2.push(initial.n2);
    for i in 0..n - 1 {
        let (mut r1, mut r2, mut tl) = (n1[i], n2[i], t[i]);
        let chord = pos[i + 1] - pos[i];
        let c1 = chord.norm_squared();
        if c1 > 0.0 {
            r1 = reflect(r1, chord, c1);
            r2 = reflect(r2, chord, c1);
            tl = reflect(tl, chord, c1);
        }
        let fix = t[i + 1] - tl;
        let c2 = fix.norm_squared();
        if c2 > 0.0 {
            r1 = reflect(r1, fix, c2);
            r2 = reflect(r2, fix, c2);
        }
        n1.push(r1);
        n2.push(r2);
    }

    let kappa1: Vec<f64> = accel.iter().zip(&n1).map(|(a, e)| a.dot(*e)).collect();
    let kappa2: Vec<f64> = accel.iter().zip(&n2).map(|(a, e)| a.dot(*e)).collect();
    let theta = unwrapped_angle(&kappa1, &kappa2);
    Ok(RmfApparatus { grid: grid.clone(), t, n1, n2, kappa1, kappa2, theta })
}

/// `atan2(κ₂, κ₁)` made continuous by removing 2π jumps. Nodes with both
/// curvatures zero repeat the previous angle.
fn unwrapped_angle(k1: &[f64], k2: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(k1.len());
    let mut prev: Option<f64> = None;
    for (&a, &b) in k1.iter().zip(k2) {
        let value = if a == 0.0 && b == 0.0 {
            prev.unwrap_or(0.0)
        } else {
            let raw = math::atan2(b, a);
            match prev {
                None => raw,
                Some(p) => {
                    let mut v = raw;
                    while v - p > PI {
                        v -= 2.0 * PI;
                    }
                    while v - p < -PI {
                        v += 2.0 * PI;
                    }
                    v
                }
            }
        };
        prev = Some(value);
        out.push(value);
    }
    out
}

impl RmfApparatus {
    pub fn frame(&self, i: usize) -> OrthoFrame {
        OrthoFrame::new(self.t[i], self.n1[i], self.n2[i])
    }

    pub fn max_orthonormality_defect(&self) -> f64 {
        (0..self.grid.len()).map(|i| self.frame(i).defect()).fold(0.0, f64::max)
    }

    /// Largest normal component of `N₁'` or `N₂'` over interior nodes, with
    /// primes from grid finite differences.
    pub fn rm_defect(&self) -> f64 {
        let nodes = self.grid.nodes();
        let d1 = sampled_derivative(nodes, &self.n1, 1);
        let d2 = sampled_derivative(nodes, &self.n2, 1);
        self.grid
            .interior()
            .map(|i| d1[i].reject(self.t[i]).norm().max(d2[i].reject(self.t[i]).norm()))
            .fold(0.0, f64::max)
    }

    /// Residuals of the RMF equations `T' = κ₁N₁ + κ₂N₂`, `Nᵢ' = -κᵢT` over
    /// interior nodes.
    pub fn equation_residuals(&self) -> [f64; 3] {
        let nodes = self.grid.nodes();
        let dt = sampled_derivative(nodes, &self.t, 1);
        let d1 = sampled_derivative(nodes, &self.n1, 1);
        let d2 = sampled_derivative(nodes, &self.n2, 1);
        let mut worst = [0.0f64; 3];
        for i in self.grid.interior() {
            let (k1, k2) = (self.kappa1[i], self.kappa2[i]);
            worst[0] = worst[0].max((dt[i] - self.n1[i] * k1 - self.n2[i] * k2).norm());
            worst[1] = worst[1].max((d1[i] + self.t[i] * k1).norm());
            worst[2] = worst[2].max((d2[i] + self.t[i] * k2).norm());
        }
        worst
    }

    pub fn reconstruct_kappa_tau(&self, tol: &Tolerances) -> Result<KappaTau> {
        reconstruct_kappa_tau(&self.grid, &self.kappa1, &self.kappa2, tol)
    }
}

/// Curvature and torsion recovered from natural curvatures.
#[derive(Debug, Clone)]
pub struct KappaTau {
    pub kappa: Vec<f64>,
    /// `(κ₁κ₂' - κ₁'κ₂) / (κ₁² + κ₂²)`.
    pub tau: Vec<f64>,
    /// Finite-difference derivative of the unwrapped angle, for cross-checks.
    pub dtheta: Vec<f64>,
}

/// `κ = √(κ₁² + κ₂²)` and `τ = θ'` by the quotient formula.
pub fn reconstruct_kappa_tau(grid: &SampledGrid, kappa1: &[f64], kappa2: &[f64], tol: &Tolerances) -> Result<KappaTau> {
    if kappa1.len() != grid.len() || kappa2.len() != grid.len() {
        return Err(GeomError::contract("curvature arrays must match the grid"));
    }
    let nodes = grid.nodes();
    for (node, (a, b)) in kappa1.iter().zip(kappa2).enumerate() {
        if a * a + b * b <= tol.kappa * tol.kappa {
            return Err(GeomError::DegenerateCurvature { node, s: nodes[node] });
        }
    }
    let d1 = sampled_derivative(nodes, kappa1, 1);
    let d2 = sampled_derivative(nodes, kappa2, 1);
    let theta = unwrapped_angle(kappa1, kappa2);
    let dtheta = sampled_derivative(nodes, &theta, 1);
    let mut kappa = Vec::with_capacity(nodes.len());
    let mut tau = Vec::with_capacity(nodes.len());
    for i in 0..nodes.len() {
        let (a, b) = (kappa1[i], kappa2[i]);
        let sq = a * a + b * b;
        kappa.push(math::sqrt(sq));
        tau.push((a * d2[i] - d1[i] * b) / sq);
    }
    Ok(KappaTau { kappa, tau, dtheta })
}
