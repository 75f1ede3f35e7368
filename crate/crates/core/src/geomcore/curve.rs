use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::stencil::{self, sampled_derivative};
use super::{Interval, Vec3};
use crate::error::{GeomError, Result};

/// Shared vector-valued function of the curve parameter.
pub type VecFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;

/// Shared handle to a curve.
pub type CurveRef = Arc<dyn ParamCurve>;

/// A smooth map from a closed interval into ℝ³.
///
/// Implementors supply point evaluation and, optionally, analytic
/// derivatives. [`derivative`] falls back to fourth-order finite differences
/// for any order the curve does not provide.
pub trait ParamCurve: Send + Sync {
    fn domain(&self) -> Interval;

    /// Point at `s`; callers guarantee `s` lies in [`ParamCurve::domain`].
    fn point(&self, s: f64) -> Vec3;

    /// Analytic derivative of order 1..=3 if the curve knows it.
    fn analytic_derivative(&self, _s: f64, _order: usize) -> Option<Vec3> {
        None
    }

    /// Whether `s` is an arc-length parameter.
    fn is_arc_length(&self) -> bool {
        false
    }
}

impl fmt::Debug for dyn ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.domain();
        write!(f, "ParamCurve[{}, {}]", d.lo(), d.hi())
    }
}

/// Derivative of order 1..=3 at `s`.
pub fn derivative(c: &dyn ParamCurve, s: f64, order: usize) -> Result<Vec3> {
    if !(1..=3).contains(&order) {
        return Err(GeomError::contract(alloc::format!("derivative order {order} outside 1..=3")));
    }
    let domain = c.domain();
    let s = domain.check(s)?;
    let d = match c.analytic_derivative(s, order) {
        Some(d) => d,
        None => stencil::derivative_of(|t| c.point(t), domain, s, order, stencil::step_for(order, domain)),
    };
    if d.is_finite() {
        Ok(d)
    } else {
        Err(GeomError::NonFinite { s })
    }
}

/// Checked point evaluation.
pub(crate) fn point_at(c: &dyn ParamCurve, s: f64) -> Result<Vec3> {
    let s = c.domain().check(s)?;
    let p = c.point(s);
    if p.is_finite() {
        Ok(p)
    } else {
        Err(GeomError::NonFinite { s })
    }
}

/// Curve from closures, with any subset of analytic derivatives.
#[derive(Clone)]
pub struct FnCurve {
    domain: Interval,
    point: VecFn,
    derivs: [Option<VecFn>; 3],
    arc_length: bool,
}

impl FnCurve {
    pub fn new(domain: Interval, point: impl Fn(f64) -> Vec3 + Send + Sync + 'static) -> Self {
        FnCurve { domain, point: Arc::new(point), derivs: [None, None, None], arc_length: false }
    }

    /// Attach the analytic derivative of the given order (1..=3).
    pub fn with_derivative(mut self, order: usize, d: impl Fn(f64) -> Vec3 + Send + Sync + 'static) -> Self {
        assert!((1..=3).contains(&order));
        self.derivs[order - 1] = Some(Arc::new(d));
        self
    }

    pub fn arc_length(mut self, flag: bool) -> Self {
        self.arc_length = flag;
        self
    }

    pub fn into_ref(self) -> CurveRef {
        Arc::new(self)
    }
}

impl ParamCurve for FnCurve {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn point(&self, s: f64) -> Vec3 {
        (self.point)(s)
    }

    fn analytic_derivative(&self, s: f64, order: usize) -> Option<Vec3> {
        self.derivs.get(order.wrapping_sub(1))?.as_ref().map(|d| d(s))
    }

    fn is_arc_length(&self) -> bool {
        self.arc_length
    }
}

/// Piecewise cubic Hermite interpolant through sampled points and tangents.
#[derive(Debug, Clone)]
pub struct HermiteCurve {
    domain: Interval,
    nodes: Vec<f64>,
    points: Vec<Vec3>,
    tangents: Vec<Vec3>,
}

impl HermiteCurve {
    /// Interpolant with explicit tangents. Nodes must be strictly increasing.
    pub fn new(nodes: Vec<f64>, points: Vec<Vec3>, tangents: Vec<Vec3>) -> Result<Self> {
        if nodes.len() < 2 || nodes.len() != points.len() || nodes.len() != tangents.len() {
            return Err(GeomError::contract("Hermite data needs ≥ 2 nodes with matching points and tangents"));
        }
        if !nodes.windows(2).all(|w| w[0] < w[1]) {
            return Err(GeomError::contract("Hermite nodes must be strictly increasing"));
        }
        for (i, (p, t)) in points.iter().zip(&tangents).enumerate() {
            if !p.is_finite() || !t.is_finite() {
                return Err(GeomError::NonFinite { s: nodes[i] });
            }
        }
        let domain = Interval::new(nodes[0], nodes[nodes.len() - 1])?;
        Ok(HermiteCurve { domain, nodes, points, tangents })
    }

    /// Interpolant whose tangents are estimated from the samples by
    /// fourth-order finite differences.
    pub fn from_samples(nodes: Vec<f64>, points: Vec<Vec3>) -> Result<Self> {
        if nodes.len() != points.len() || nodes.len() < 2 {
            return Err(GeomError::contract("sample count mismatch"));
        }
        let tangents = sampled_derivative(&nodes, &points, 1);
        HermiteCurve::new(nodes, points, tangents)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    fn segment(&self, s: f64) -> usize {
        let n = self.nodes.len();
        match self.nodes.binary_search_by(|x| x.partial_cmp(&s).unwrap_or(core::cmp::Ordering::Less)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    /// Derivative of order 0..=3 of the interpolant.
    fn eval(&self, s: f64, order: usize) -> Vec3 {
        let i = self.segment(s);
        let (s0, s1) = (self.nodes[i], self.nodes[i + 1]);
        let h = s1 - s0;
        let t = (s - s0) / h;
        let (p0, p1) = (self.points[i], self.points[i + 1]);
        let (m0, m1) = (self.tangents[i] * h, self.tangents[i + 1] * h);
        // Basis polynomials and their t-derivatives.
        let (h00, h10, h01, h11) = match order {
            0 => (
                2.0 * t * t * t - 3.0 * t * t + 1.0,
                t * t * t - 2.0 * t * t + t,
                -2.0 * t * t * t + 3.0 * t * t,
                t * t * t - t * t,
            ),
            1 => (6.0 * t * t - 6.0 * t, 3.0 * t * t - 4.0 * t + 1.0, -6.0 * t * t + 6.0 * t, 3.0 * t * t - 2.0 * t),
            2 => (12.0 * t - 6.0, 6.0 * t - 4.0, -12.0 * t + 6.0, 6.0 * t - 2.0),
            _ => (12.0, 6.0, -12.0, 6.0),
        };
        let v = p0 * h00 + m0 * h10 + p1 * h01 + m1 * h11;
        v / crate::math::powi(h, order as i32)
    }
}

impl ParamCurve for HermiteCurve {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn point(&self, s: f64) -> Vec3 {
        self.eval(s, 0)
    }

    fn analytic_derivative(&self, s: f64, order: usize) -> Option<Vec3> {
        (1..=3).contains(&order).then(|| self.eval(s, order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, sin};

    fn circle() -> FnCurve {
        FnCurve::new(Interval::new(-1.0, 1.0).unwrap(), |s| Vec3::new(cos(s), sin(s), 0.0))
    }

    #[test]
    fn analytic_first_derivative_of_circle() {
        let c = circle().with_derivative(1, |s| Vec3::new(-sin(s), cos(s), 0.0));
        assert_eq!(derivative(&c, 0.0, 1).unwrap(), Vec3::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn synthesized_derivative_of_cube() {
        let c = FnCurve::new(Interval::new(0.0, 2.0).unwrap(), |s| Vec3::new(s * s * s, 0.0, 0.0));
        let d = derivative(&c, 1.0, 1).unwrap();
        assert!((d.x - 3.0).abs() < 1e-8);
    }

    #[test]
    fn fd_and_analytic_agree_on_polynomials() {
        let poly = |s: f64| Vec3::new(s * s * s, 2.0 * s * s - s, 1.0 - s);
        let c = FnCurve::new(Interval::new(-1.0, 1.5).unwrap(), poly);
        for &s in &[-1.0, -0.5, 0.0, 0.7, 1.5] {
            let exact = [
                Vec3::new(3.0 * s * s, 4.0 * s - 1.0, -1.0),
                Vec3::new(6.0 * s, 4.0, 0.0),
                Vec3::new(6.0, 0.0, 0.0),
            ];
            for order in 1..=3 {
                let d = derivative(&c, s, order).unwrap();
                assert!(d.distance(exact[order - 1]) < 1e-10, "order {order} at {s}: {d:?}");
            }
        }
    }

    #[test]
    fn derivative_errors() {
        let c = circle();
        assert!(matches!(derivative(&c, 0.0, 4), Err(GeomError::Contract(_))));
        assert!(matches!(derivative(&c, 0.0, 0), Err(GeomError::Contract(_))));
        assert!(matches!(derivative(&c, 3.0, 1), Err(GeomError::Domain { .. })));
    }

    #[test]
    fn hermite_reproduces_cubic() {
        let f = |s: f64| Vec3::new(s * s * s, s, -s * s);
        let df = |s: f64| Vec3::new(3.0 * s * s, 1.0, -2.0 * s);
        let nodes: Vec<f64> = (0..6).map(|i| i as f64 * 0.3).collect();
        let h = HermiteCurve::new(
            nodes.clone(),
            nodes.iter().map(|&s| f(s)).collect(),
            nodes.iter().map(|&s| df(s)).collect(),
        )
        .unwrap();
        for &s in &[0.0, 0.1, 0.45, 1.2, 1.5] {
            assert!(h.point(s).distance(f(s)) < 1e-13);
            assert!(derivative(&h, s, 1).unwrap().distance(df(s)) < 1e-12);
            assert!((derivative(&h, s, 3).unwrap().x - 6.0).abs() < 1e-9);
        }
    }
}
