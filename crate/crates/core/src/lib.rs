//! Rotation-minimizing frames, Legendre curves on the unit tangent bundle of
//! the 2-sphere, and the singularities of the ruled surfaces they induce.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function over immutable values; IO, the command line and file formats
//! live in the `rmfgeom-cli` companion crate.
//!
//! The pipeline, bottom up:
//!
//! - [`geomcore`]: [`Vec3`], parametric curves with derivative access,
//!   finite-difference stencils and Runge-Kutta integration of direction
//!   curves.
//! - [`framing`]: Frenet-Serret frames, rotation-minimizing frames by double
//!   reflection, natural curvatures and the slant-helix function σ.
//! - [`legendre`]: Legendre curves `Γ = (γ, v)` with curvature functions
//!   `l, m, n` and the conversions between RM vector fields and Legendre
//!   curves.
//! - [`ruled`]: the six ruled surfaces spanned by `{β, γ, v}`,
//!   developability, striction curves and tessellation.
//! - [`singular`]: singular loci and the cuspidal edge / swallowtail /
//!   cuspidal crosscap / cone classifier.
//!
//! ```
//! use rmfgeom::catalog::{self, Example};
//! use rmfgeom::ruled::SurfaceKind;
//! use rmfgeom::singular::{scan_singularities, SingularClass};
//! use rmfgeom::Tolerances;
//!
//! let tol = Tolerances::default();
//! let frame = catalog::legendre_frame(Example::Example2, 512, &tol).unwrap();
//! let scan = scan_singularities(&frame, SurfaceKind::GammaV, frame.grid(), catalog::DEFAULT_U_EXTENT, &tol).unwrap();
//! assert_eq!(scan.events[0].class, SingularClass::Cone);
//! let apex = scan.events[0].location.unwrap();
//! assert!((apex.z - core::f64::consts::SQRT_2).abs() < 1e-6);
//! ```

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
mod error;
pub mod framing;
pub mod geomcore;
pub mod legendre;
pub(crate) mod math;
pub mod ruled;
pub mod singular;
mod tolerances;

pub use error::{GeomError, Result};
pub use geomcore::{Interval, ParamCurve, SampledGrid, Vec3};
pub use tolerances::Tolerances;
