use crate::error::{GeomError, Result};
use crate::geomcore::Vec3;
use crate::ruled::Mesh;

use super::SingularClass;

/// Point of the local normal form of `class` at `(u, v)`:
///
/// * cuspidal edge `(u³, u², v)`, whose profile satisfies `x₁² = x₂³`;
/// * swallowtail `(3u⁴ + u²v, 4u³ + 2uv, v)`;
/// * cuspidal crosscap `(u³, u³v³, v²)`.
pub fn normal_form_point(class: SingularClass, u: f64, v: f64) -> Result<Vec3> {
    let (u2, u3) = (u * u, u * u * u);
    match class {
        SingularClass::CuspidalEdge => Ok(Vec3::new(u3, u2, v)),
        SingularClass::Swallowtail => Ok(Vec3::new(3.0 * u2 * u2 + u2 * v, 4.0 * u3 + 2.0 * u * v, v)),
        SingularClass::CuspidalCrosscap => Ok(Vec3::new(u3, u3 * v * v * v, v * v)),
        other => Err(GeomError::contract(alloc::format!("{other} has no normal form"))),
    }
}

/// Tessellate the normal form over `[-1, 1]²` with `samples` values per
/// axis; rows follow `u`, columns `v`, and `params` holds `(u, v)`.
pub fn normal_form_surface(class: SingularClass, samples: usize) -> Result<Mesh> {
    normal_form_point(class, 0.0, 0.0)?;
    if samples < 2 {
        return Err(GeomError::contract("normal form needs at least 2 samples per axis"));
    }
    let axis = |i: usize| if i + 1 == samples { 1.0 } else { -1.0 + 2.0 * i as f64 / (samples - 1) as f64 };
    let mut mesh = Mesh::grid(samples, samples);
    for i in 0..samples {
        for j in 0..samples {
            let (u, v) = (axis(i), axis(j));
            mesh.vertices.push(normal_form_point(class, u, v)?);
            mesh.params.push((u, v));
        }
    }
    Ok(mesh)
}
