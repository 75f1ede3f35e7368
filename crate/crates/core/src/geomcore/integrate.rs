use alloc::sync::Arc;
use alloc::vec::Vec;

use super::curve::{HermiteCurve, ParamCurve, VecFn};
use super::stencil;
use super::{Interval, Vec3};
use crate::error::{GeomError, Result};

/// Curve `β` with `β' = field`, produced by [`integrate_curve`].
///
/// Points between integration nodes come from cubic Hermite interpolation
/// using the stored field values as tangents. The first derivative is the
/// field itself; higher orders differentiate the field numerically.
#[derive(Clone)]
pub struct IntegratedCurve {
    field: VecFn,
    samples: HermiteCurve,
    arc_length: bool,
}

impl IntegratedCurve {
    pub fn field(&self) -> &VecFn {
        &self.field
    }

    pub fn nodes(&self) -> &[f64] {
        self.samples.nodes()
    }

    pub(crate) fn with_arc_length(mut self, flag: bool) -> Self {
        self.arc_length = flag;
        self
    }
}

impl core::fmt::Debug for IntegratedCurve {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("IntegratedCurve").field("nodes", &self.samples.nodes().len()).finish()
    }
}

impl ParamCurve for IntegratedCurve {
    fn domain(&self) -> Interval {
        self.samples.domain()
    }

    fn point(&self, s: f64) -> Vec3 {
        self.samples.point(s)
    }

    fn analytic_derivative(&self, s: f64, order: usize) -> Option<Vec3> {
        let domain = self.domain();
        match order {
            1 => Some((self.field)(s)),
            2 | 3 => Some(stencil::derivative_of(
                |t| (self.field)(t),
                domain,
                s,
                order - 1,
                stencil::step_for(order - 1, domain),
            )),
            _ => None,
        }
    }

    fn is_arc_length(&self) -> bool {
        self.arc_length
    }
}

/// Integrate `field` over `domain` with classical RK4 on `n_steps` uniform
/// steps, anchored so that `β(s0) = c0`.
pub fn integrate_curve(field: VecFn, domain: Interval, s0: f64, c0: Vec3, n_steps: usize) -> Result<IntegratedCurve> {
    if n_steps < 16 {
        return Err(GeomError::contract(alloc::format!("integrate_curve needs n_steps ≥ 16, got {n_steps}")));
    }
    let s0 = domain.check(s0)?;
    let h = domain.len() / n_steps as f64;
    let eval = |s: f64| -> Result<Vec3> {
        let v = field(s);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(GeomError::NonFinite { s })
        }
    };

    let mut nodes = Vec::with_capacity(n_steps + 1);
    let mut points = Vec::with_capacity(n_steps + 1);
    let mut tangents = Vec::with_capacity(n_steps + 1);
    let mut s = domain.lo();
    let mut y = Vec3::ZERO;
    let mut k1 = eval(s)?;
    nodes.push(s);
    points.push(y);
    tangents.push(k1);
    for i in 1..=n_steps {
        let next = if i == n_steps { domain.hi() } else { domain.lo() + h * i as f64 };
        let step = next - s;
        // The right-hand side does not depend on the state, so k2 = k3.
        let k2 = eval(s + 0.5 * step)?;
        let k4 = eval(next)?;
        y += (k1 + k2 * 4.0 + k4) * (step / 6.0);
        s = next;
        k1 = k4;
        nodes.push(s);
        points.push(y);
        tangents.push(k4);
    }

    let unanchored = HermiteCurve::new(nodes.clone(), points.clone(), tangents.clone())?;
    let shift = c0 - unanchored.point(s0);
    for p in &mut points {
        *p += shift;
    }
    Ok(IntegratedCurve { field, samples: HermiteCurve::new(nodes, points, tangents)?, arc_length: false })
}

/// Wrap a closure as a shared field.
pub fn field_of(f: impl Fn(f64) -> Vec3 + Send + Sync + 'static) -> VecFn {
    Arc::new(f)
}
