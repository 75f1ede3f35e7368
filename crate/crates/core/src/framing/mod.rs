//! Frenet-Serret frames, rotation-minimizing frames (RMF), direction curves
//! and the slant-helix function.

mod frenet;
mod rmf;

use alloc::vec::Vec;

pub use frenet::{frenet_frame, slant_helix_sigma, FrenetApparatus};
pub use rmf::{reconstruct_kappa_tau, rmf_propagate, KappaTau, OrthoFrame, RmfApparatus};

use crate::error::{GeomError, Result};
use crate::geomcore::stencil;
use crate::geomcore::{derivative, integrate_curve, IntegratedCurve, Interval, ParamCurve, SampledGrid, Vec3, VecFn};
use crate::Tolerances;

/// Largest `|<eᵢ, eⱼ> - δᵢⱼ|` over a frame.
pub fn orthonormality_defect(e: [Vec3; 3]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in i..3 {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((e[i].dot(e[j]) - target).abs());
        }
    }
    worst
}

/// Curve whose unit tangent is `field`, e.g. the B-direction curve `∫ B ds`.
pub fn direction_curve(
    field: VecFn,
    domain: Interval,
    s0: f64,
    c0: Vec3,
    n_steps: usize,
    tol: &Tolerances,
) -> Result<IntegratedCurve> {
    let probes = n_steps.max(16);
    for i in 0..=probes {
        let s = domain.lo() + domain.len() * i as f64 / probes as f64;
        let len = field(s).norm();
        if (len - 1.0).abs() > tol.unit {
            return Err(GeomError::contract(alloc::format!(
                "direction field is not unit at s = {s}: |field| = {len}"
            )));
        }
    }
    Ok(integrate_curve(field, domain, s0, c0, n_steps)?.with_arc_length(true))
}

/// Outcome of [`rm_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RmCheck {
    pub passed: bool,
    pub max_defect: f64,
}

/// Whether `field` is a rotation-minimizing vector field along `c`: its
/// derivative must be parallel to the tangent. The defect is the largest
/// normal component of `field'` over interior nodes.
pub fn rm_check(
    c: &dyn ParamCurve,
    field: &dyn Fn(f64) -> Vec3,
    grid: &SampledGrid,
    tol: &Tolerances,
) -> Result<RmCheck> {
    let domain = c.domain();
    let nodes = grid.nodes();
    let mut tangents = Vec::with_capacity(nodes.len());
    for (node, &s) in nodes.iter().enumerate() {
        let t = derivative(c, s, 1)?.normalized().ok_or(GeomError::DegenerateCurvature { node, s })?;
        let f = field(s);
        if f.dot(t).abs() > tol.unit {
            return Err(GeomError::contract(alloc::format!("field is not normal to the curve at s = {s}")));
        }
        tangents.push(t);
    }
    let h = stencil::step_for(1, domain);
    let mut worst: f64 = 0.0;
    for i in grid.interior() {
        let df = stencil::derivative_of(field, domain, nodes[i], 1, h);
        worst = worst.max(df.reject(tangents[i]).norm());
    }
    Ok(RmCheck { passed: worst < tol.rm, max_defect: worst })
}
