//! Numeric foundation: vectors, intervals and grids, parametric curves,
//! finite-difference stencils and direction-curve integration.

mod curve;
mod integrate;
mod interval;
pub mod stencil;
mod vec3;

pub(crate) use curve::point_at;
pub use curve::{derivative, CurveRef, FnCurve, HermiteCurve, ParamCurve, VecFn};
pub use integrate::{field_of, integrate_curve, IntegratedCurve};
pub use interval::{Interval, SampledGrid};
pub use vec3::{cross, dot, norm, Vec3};
