use alloc::vec::Vec;

use crate::error::{GeomError, Result};
use crate::geomcore::stencil::sampled_derivative;
use crate::geomcore::{derivative, ParamCurve, SampledGrid, Vec3};
use crate::math;
use crate::Tolerances;

/// Frenet-Serret frame `{T, N, B}` with curvature and torsion per grid node.
#[derive(Debug, Clone)]
pub struct FrenetApparatus {
    pub grid: SampledGrid,
    pub t: Vec<Vec3>,
    pub n: Vec<Vec3>,
    pub b: Vec<Vec3>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

pub(crate) fn check_unit_speed(c: &dyn ParamCurve, s: f64, tol: &Tolerances) -> Result<Vec3> {
    let d1 = derivative(c, s, 1)?;
    let speed = d1.norm();
    if (speed - 1.0).abs() > tol.unit {
        return Err(GeomError::contract(alloc::format!("curve is not unit-speed at s = {s}: |c'| = {speed}")));
    }
    Ok(d1 / speed)
}

/// Frenet frame of a unit-speed curve. Refuses nodes where the curvature
/// vanishes (straight segments, inflections).
pub fn frenet_frame(c: &dyn ParamCurve, grid: &SampledGrid, tol: &Tolerances) -> Result<FrenetApparatus> {
    let n = grid.len();
    let mut out = FrenetApparatus {
        grid: grid.clone(),
        t: Vec::with_capacity(n),
        n: Vec::with_capacity(n),
        b: Vec::with_capacity(n),
        kappa: Vec::with_capacity(n),
        tau: Vec::with_capacity(n),
    };
    for (node, &s) in grid.nodes().iter().enumerate() {
        let t = check_unit_speed(c, s, tol)?;
        let d2 = derivative(c, s, 2)?;
        let kappa = d2.norm();
        if kappa <= tol.kappa {
            return Err(GeomError::DegenerateCurvature { node, s });
        }
        let normal = d2.reject(t).normalized().ok_or(GeomError::DegenerateCurvature { node, s })?;
        let binormal = t.cross(normal);
        // τ = <N', B> = <c''', B> / κ for a unit-speed curve.
        let tau = derivative(c, s, 3)?.dot(binormal) / kappa;
        out.t.push(t);
        out.n.push(normal);
        out.b.push(binormal);
        out.kappa.push(kappa);
        out.tau.push(tau);
    }
    Ok(out)
}

impl FrenetApparatus {
    /// Largest residuals of the Frenet-Serret equations over interior nodes:
    /// `|T' - κN|`, `|N' + κT - τB|`, `|B' + τN|`, with primes taken by grid
    /// finite differences.
    pub fn equation_residuals(&self) -> [f64; 3] {
        let nodes = self.grid.nodes();
        let dt = sampled_derivative(nodes, &self.t, 1);
        let dn = sampled_derivative(nodes, &self.n, 1);
        let db = sampled_derivative(nodes, &self.b, 1);
        let mut worst = [0.0f64; 3];
        for i in self.grid.interior() {
            let (k, w) = (self.kappa[i], self.tau[i]);
            worst[0] = worst[0].max((dt[i] - self.n[i] * k).norm());
            worst[1] = worst[1].max((dn[i] + self.t[i] * k - self.b[i] * w).norm());
            worst[2] = worst[2].max((db[i] + self.n[i] * w).norm());
        }
        worst
    }

    pub fn slant_helix_sigma(&self, tol: &Tolerances) -> Result<Vec<f64>> {
        slant_helix_sigma(&self.grid, &self.kappa, &self.tau, tol)
    }
}

/// `σ = κ² / (κ² + τ²)^{3/2} · (τ/κ)'` per node; `(τ/κ)'` by grid finite
/// differences. σ constant characterizes slant helices.
pub fn slant_helix_sigma(grid: &SampledGrid, kappa: &[f64], tau: &[f64], tol: &Tolerances) -> Result<Vec<f64>> {
    if kappa.len() != grid.len() || tau.len() != grid.len() {
        return Err(GeomError::contract("curvature arrays must match the grid"));
    }
    let nodes = grid.nodes();
    for (node, &k) in kappa.iter().enumerate() {
        if k <= tol.kappa {
            return Err(GeomError::DegenerateCurvature { node, s: nodes[node] });
        }
    }
    let ratio: Vec<f64> = tau.iter().zip(kappa).map(|(t, k)| t / k).collect();
    let dratio = sampled_derivative(nodes, &ratio, 1);
    Ok(kappa
        .iter()
        .zip(tau)
        .zip(&dratio)
        .map(|((&k, &t), &dr)| k * k / math::pow(k * k + t * t, 1.5) * dr)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geomcore::{FnCurve, Interval};
    use crate::math::{cos, sin};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn helix_curvature_and_torsion() {
        let helix = catalog::helix();
        let g = SampledGrid::uniform(helix.domain(), 512).unwrap();
        let fr = frenet_frame(&*helix, &g, &tol()).unwrap();
        for i in 0..g.len() {
            assert!((fr.kappa[i] - 0.5).abs() < 1e-12);
            assert!((fr.tau[i] - 0.5).abs() < 1e-12);
            let (t, n, b) = catalog::helix_frenet(g.nodes()[i]);
            assert!(fr.t[i].distance(t) < 1e-12 && fr.n[i].distance(n) < 1e-12 && fr.b[i].distance(b) < 1e-12);
            assert!(crate::framing::orthonormality_defect([fr.t[i], fr.n[i], fr.b[i]]) < 1e-9);
        }
        let r = fr.equation_residuals();
        assert!(r.iter().all(|&x| x < 1e-4), "{r:?}");
    }

    #[test]
    fn unit_circle_planar() {
        let d = Interval::new(0.0, 6.0).unwrap();
        let c = FnCurve::new(d, |s| Vec3::new(cos(s), sin(s), 0.0));
        let g = SampledGrid::uniform(d, 64).unwrap();
        let fr = frenet_frame(&c, &g, &tol()).unwrap();
        for i in 0..g.len() {
            assert!((fr.kappa[i] - 1.0).abs() < 1e-6, "{}", fr.kappa[i]);
            assert!(fr.tau[i].abs() < 1e-6, "{}", fr.tau[i]);
        }
    }

    #[test]
    fn straight_line_is_degenerate() {
        let d = Interval::new(0.0, 1.0).unwrap();
        let c = FnCurve::new(d, |s| Vec3::new(s, 0.0, 0.0))
            .with_derivative(1, |_| Vec3::X)
            .with_derivative(2, |_| Vec3::ZERO);
        let g = SampledGrid::uniform(d, 8).unwrap();
        assert!(matches!(frenet_frame(&c, &g, &tol()), Err(GeomError::DegenerateCurvature { node: 0, .. })));
    }

    #[test]
    fn sigma_zero_for_helix_and_planar() {
        let helix = catalog::helix();
        let g = SampledGrid::uniform(helix.domain(), 128).unwrap();
        let fr = frenet_frame(&*helix, &g, &tol()).unwrap();
        assert!(fr.slant_helix_sigma(&tol()).unwrap().iter().all(|s| s.abs() < 1e-12));

        let g = SampledGrid::uniform(Interval::new(0.0, 1.0).unwrap(), 32).unwrap();
        let kappa: Vec<f64> = g.nodes().iter().map(|s| 1.0 + s * s).collect();
        let tau = alloc::vec![0.0; 32];
        assert!(slant_helix_sigma(&g, &kappa, &tau, &tol()).unwrap().iter().all(|s| *s == 0.0));
    }

    #[test]
    fn sigma_for_linear_torsion() {
        // κ = 1, τ = s: σ = 1 / (1 + s²)^{3/2}.
        let g = SampledGrid::uniform(Interval::new(-1.0, 1.0).unwrap(), 201).unwrap();
        let kappa = alloc::vec![1.0; 201];
        let tau: Vec<f64> = g.nodes().to_vec();
        let sigma = slant_helix_sigma(&g, &kappa, &tau, &tol()).unwrap();
        assert!((sigma[100] - 1.0).abs() < 1e-12);
        for (s, v) in g.nodes().iter().zip(&sigma) {
            assert!((v - 1.0 / libm::pow(1.0 + s * s, 1.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_rejects_zero_curvature() {
        let g = SampledGrid::uniform(Interval::new(0.0, 1.0).unwrap(), 4).unwrap();
        let r = slant_helix_sigma(&g, &[1.0, 0.0, 1.0, 1.0], &[0.0; 4], &tol());
        assert!(matches!(r, Err(GeomError::DegenerateCurvature { node: 1, .. })));
    }
}
