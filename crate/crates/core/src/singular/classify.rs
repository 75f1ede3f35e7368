use crate::error::{GeomError, Result};
use crate::geomcore::stencil::derivative_of;
use crate::geomcore::{SampledGrid, Vec3};
use crate::legendre::LegendreFrame;
use crate::ruled::{RuledSurface, SurfaceKind};
use crate::Tolerances;

use super::{Curvature, Diagnostics, GoverningFunction, LocusForm, SingularClass, SingularPoint};

/// `(f, f', f'')` at a point.
pub type Jet = [f64; 3];

/// Outcome of the decision table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub class: SingularClass,
    pub u0: Option<f64>,
}

/// Jet of `p/q` by the quotient rule.
pub(crate) fn quotient(p: Jet, q: Jet) -> Jet {
    let g = p[0] / q[0];
    let w = p[1] * q[0] - p[0] * q[1];
    let d1 = w / (q[0] * q[0]);
    let d2 = (p[2] * q[0] - p[0] * q[2]) / (q[0] * q[0]) - 2.0 * q[1] * w / (q[0] * q[0] * q[0]);
    [g, d1, d2]
}

/// Decision table for one point. `p` and `q` are the jets of the locus
/// numerator and denominator at `s0`; `cone` says whether `p/q` is constant
/// over the whole domain.
///
/// Reciprocal form (`p = 1`): a pole is an error; otherwise cuspidal edge
/// iff `q' ≠ 0`, swallowtail iff `q' = 0` and `(1/q)'' ≠ 0`.
/// Direct form: cuspidal edge iff `p ≠ 0`, `p' ≠ 0`; swallowtail iff
/// `p ≠ 0`, `p' = 0`, `p'' ≠ 0`; cuspidal crosscap iff `p = 0`, `p' ≠ 0`.
/// Ratio form: as the direct form applied to `g = p/q`, with the crosscap
/// requiring `p = 0` and `q ≠ 0`; common zeros are degenerate and
/// `q = 0 ≠ p` is regular (the locus is at infinity).
///
/// "Zero" means magnitude at most `tol.deriv`; anything matching no clause
/// is [`SingularClass::Degenerate`].
pub fn decide(form: LocusForm, s0: f64, p: Jet, q: Jet, cone: bool, tol: &Tolerances) -> Result<Decision> {
    let zero = |x: f64| x.abs() <= tol.deriv;
    let decision = |class, u0| Ok(Decision { class, u0 });
    match form {
        LocusForm::Reciprocal(_) => {
            if q[0].abs() < tol.pole {
                return Err(GeomError::Pole { s: s0 });
            }
            let u0 = Some(-1.0 / q[0]);
            let g = quotient(p, q);
            if cone {
                decision(SingularClass::Cone, u0)
            } else if !zero(q[1]) {
                decision(SingularClass::CuspidalEdge, u0)
            } else if !zero(g[2]) {
                decision(SingularClass::Swallowtail, u0)
            } else {
                decision(SingularClass::Degenerate, u0)
            }
        }
        LocusForm::Direct(_) => {
            let u0 = Some(-p[0]);
            if cone {
                decision(SingularClass::Cone, u0)
            } else if !zero(p[0]) {
                if !zero(p[1]) {
                    decision(SingularClass::CuspidalEdge, u0)
                } else if !zero(p[2]) {
                    decision(SingularClass::Swallowtail, u0)
                } else {
                    decision(SingularClass::Degenerate, u0)
                }
            } else if !zero(p[1]) {
                decision(SingularClass::CuspidalCrosscap, u0)
            } else {
                decision(SingularClass::Degenerate, u0)
            }
        }
        LocusForm::Ratio(..) => {
            if cone && q[0].abs() >= tol.pole {
                return decision(SingularClass::Cone, Some(-p[0] / q[0]));
            }
            if zero(p[0]) && zero(q[0]) {
                return decision(SingularClass::Degenerate, None);
            }
            if q[0].abs() < tol.pole {
                return decision(SingularClass::Regular, None);
            }
            let g = quotient(p, q);
            let u0 = Some(-g[0]);
            if !zero(p[0]) {
                if !zero(g[1]) {
                    decision(SingularClass::CuspidalEdge, u0)
                } else if !zero(g[2]) {
                    decision(SingularClass::Swallowtail, u0)
                } else {
                    decision(SingularClass::Degenerate, u0)
                }
            } else if !zero(g[1]) {
                decision(SingularClass::CuspidalCrosscap, u0)
            } else {
                decision(SingularClass::Degenerate, u0)
            }
        }
    }
}

/// Evaluation context shared by classification and scanning.
pub(crate) struct Context<'a> {
    pub frame: &'a LegendreFrame,
    pub gov: GoverningFunction,
    pub surface: RuledSurface,
    pub cone: bool,
    h: f64,
}

impl<'a> Context<'a> {
    pub fn new(frame: &'a LegendreFrame, kind: SurfaceKind, tol: &Tolerances) -> Result<Self> {
        let gov = GoverningFunction::of(kind);
        let surface = frame.surface(kind, crate::catalog::DEFAULT_U_EXTENT)?;
        let curve = frame.curve();
        let mut cone = true;
        let (mut lo, mut hi, mut scale) = (f64::INFINITY, f64::NEG_INFINITY, 1.0f64);
        for (&m, &n) in curve.m.iter().zip(&curve.n) {
            let (p, q) = gov.pq(m, n);
            if q.abs() < tol.pole || q.is_nan() {
                cone = false;
                break;
            }
            let g = p / q;
            lo = lo.min(g);
            hi = hi.max(g);
            scale = scale.max(g.abs());
        }
        cone = cone && hi - lo <= tol.constant * scale;
        let h = frame.grid().spacing() / 8.0;
        Ok(Context { frame, gov, surface, cone, h })
    }

    fn curvature(&self, c: Curvature, s: f64) -> f64 {
        match c {
            Curvature::M => self.frame.m_at(s),
            Curvature::N => self.frame.n_at(s),
        }
    }

    fn curvature_jet(&self, c: Curvature, s: f64) -> Jet {
        let domain = self.frame.grid().domain();
        let f = |t: f64| self.curvature(c, t);
        [f(s), derivative_of(f, domain, s, 1, self.h), derivative_of(f, domain, s, 2, self.h)]
    }

    pub fn jets(&self, s: f64) -> (Jet, Jet) {
        (self.curvature_jet(Curvature::M, s), self.curvature_jet(Curvature::N, s))
    }

    pub fn pq_jets(&self, m: Jet, n: Jet) -> (Jet, Jet) {
        let one = [1.0, 0.0, 0.0];
        let pick = |c: Curvature| match c {
            Curvature::M => m,
            Curvature::N => n,
        };
        match self.gov.form {
            LocusForm::Reciprocal(c) => (one, pick(c)),
            LocusForm::Direct(c) => (pick(c), one),
            LocusForm::Ratio(a, b) => (pick(a), pick(b)),
        }
    }

    /// `(p, q)` at `s`.
    pub fn pq(&self, s: f64) -> (f64, f64) {
        self.gov.pq(self.frame.m_at(s), self.frame.n_at(s))
    }

    /// First derivatives `(p', q')` at `s`.
    pub fn dpq(&self, s: f64) -> (f64, f64) {
        let domain = self.frame.grid().domain();
        let p = derivative_of(|t| self.pq(t).0, domain, s, 1, self.h);
        let q = derivative_of(|t| self.pq(t).1, domain, s, 1, self.h);
        (p, q)
    }

    pub fn classify(&self, s0: f64, tol: &Tolerances) -> Result<SingularPoint> {
        let s0 = self.frame.grid().domain().check(s0)?;
        let (m, n) = self.jets(s0);
        let (p, q) = self.pq_jets(m, n);
        let Decision { mut class, u0 } = decide(self.gov.form, s0, p, q, self.cone, tol)?;
        let governing = (q[0].abs() >= tol.pole).then(|| quotient(p, q));
        let location = u0.map(|u| self.surface.point_on_ruling(s0, u));
        let normal_magnitude = match u0 {
            Some(u) => Some(self.surface.normal_magnitude(s0, u)?),
            None => None,
        };
        let named = !matches!(class, SingularClass::Regular | SingularClass::Degenerate);
        if named && normal_magnitude.is_none_or(|x| x >= tol.sing || x.is_nan()) {
            class = SingularClass::Degenerate;
        }
        Ok(SingularPoint {
            kind: self.gov.kind,
            s0,
            u0,
            class,
            diagnostics: Diagnostics { m, n, governing, normal_magnitude },
            location,
        })
    }
}

/// Classify the point of the singular locus over `s0`. Derivatives of the
/// curvature functions use 5-point stencils with one eighth of the grid
/// spacing; constancy of the governing function is judged on the grid.
pub fn classify_point(frame: &LegendreFrame, kind: SurfaceKind, s0: f64, tol: &Tolerances) -> Result<SingularPoint> {
    Context::new(frame, kind, tol)?.classify(s0, tol)
}

/// Apex of a cone surface with its certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConeApex {
    pub apex: Vec3,
    pub u0: f64,
    /// Largest distance from the apex to a ruling line over the grid.
    pub max_ruling_distance: f64,
}

/// Apex and ruling-distance certificate; the kind must classify as a cone.
pub fn cone_apex(frame: &LegendreFrame, kind: SurfaceKind, grid: &SampledGrid, tol: &Tolerances) -> Result<ConeApex> {
    let ctx = Context::new(frame, kind, tol)?;
    if !ctx.cone {
        return Err(GeomError::contract(alloc::format!("kind {kind} is not a cone: governing function varies")));
    }
    let point = ctx.classify(grid.first(), tol)?;
    let (Some(apex), Some(u0), SingularClass::Cone) = (point.location, point.u0, point.class) else {
        return Err(GeomError::contract(alloc::format!("kind {kind} is not a cone (class {})", point.class)));
    };
    let mut worst: f64 = 0.0;
    for &s in grid.nodes() {
        let b = ctx.surface.base().point(s);
        let d = ctx.surface.director().point(s);
        let r = apex - b;
        let dist = match d.normalized() {
            Some(d) => r.cross(d).norm(),
            None => r.norm(),
        };
        worst = worst.max(dist);
    }
    Ok(ConeApex { apex, u0, max_ruling_distance: worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Example};
    use crate::math::sqrt;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn quotient_rule() {
        // g = sin/cos at 0.3: g' = sec², g'' = 2 sec² tan.
        let s = 0.3f64;
        let (sn, c) = (s.sin(), s.cos());
        let g = quotient([sn, c, -sn], [c, -sn, -c]);
        assert!((g[0] - s.tan()).abs() < 1e-15);
        assert!((g[1] - 1.0 / (c * c)).abs() < 1e-14);
        assert!((g[2] - 2.0 * s.tan() / (c * c)).abs() < 1e-13);
    }

    #[test]
    fn example3_swallowtail_at_quarter_turn() {
        let f = catalog::legendre_frame(Example::Example3, 512, &tol()).unwrap();
        let p = classify_point(&f, SurfaceKind::BetaGamma, PI / 2.0, &tol()).unwrap();
        assert_eq!(p.class, SingularClass::Swallowtail);
        let r3 = sqrt(3.0);
        let d = p.diagnostics;
        assert!((d.m[0] - r3).abs() < 1e-9 && d.m[1].abs() < 1e-9 && (d.m[2] + r3).abs() < 1e-6);
        let g = d.governing.unwrap();
        assert!((g[2] - 1.0 / r3).abs() < 1e-6);
        assert!((p.u0.unwrap() + 1.0 / r3).abs() < 1e-12);
        assert!(d.normal_magnitude.unwrap() < 1e-12);
    }

    #[test]
    fn example3_crosscap_at_end() {
        let f = catalog::legendre_frame(Example::Example3, 512, &tol()).unwrap();
        let p = classify_point(&f, SurfaceKind::GammaBeta, PI, &tol()).unwrap();
        assert_eq!(p.class, SingularClass::CuspidalCrosscap);
        assert!(p.u0.unwrap().abs() < 1e-12);
        assert!((p.diagnostics.m[1] + sqrt(3.0)).abs() < 1e-6);
    }

    #[test]
    fn example3_pole_is_error() {
        let f = catalog::legendre_frame(Example::Example3, 512, &tol()).unwrap();
        assert!(matches!(classify_point(&f, SurfaceKind::BetaGamma, 0.0, &tol()), Err(GeomError::Pole { .. })));
        let r = classify_point(&f, SurfaceKind::GammaV, PI / 2.0, &tol()).unwrap();
        assert_eq!((r.class, r.u0), (SingularClass::Regular, None));
    }

    #[test]
    fn example1_cones() {
        let f = catalog::legendre_frame(Example::Example1, 512, &tol()).unwrap();
        let p = classify_point(&f, SurfaceKind::VGamma, 1.0, &tol()).unwrap();
        assert_eq!(p.class, SingularClass::Cone);
        assert!((p.u0.unwrap() - 1.0).abs() < 1e-12);
        let a = cone_apex(&f, SurfaceKind::VGamma, f.grid(), &tol()).unwrap();
        assert!(a.apex.distance(Vec3::new(0.0, 0.0, sqrt(2.0))) < 1e-12);
        assert!(a.max_ruling_distance < 1e-8);
        let gb = cone_apex(&f, SurfaceKind::GammaBeta, f.grid(), &tol()).unwrap();
        let r = 1.0 / sqrt(2.0);
        assert!(gb.apex.distance(Vec3::new(-r, 0.0, r)) < 1e-10, "{:?}", gb.apex);
        assert!(gb.max_ruling_distance < 1e-8);
    }

    #[test]
    fn cone_apex_outside_extent_is_still_reported() {
        let f = catalog::legendre_frame(Example::Example1, 128, &tol()).unwrap();
        let a = cone_apex(&f, SurfaceKind::BetaGamma, f.grid(), &tol()).unwrap();
        assert!((a.u0 - sqrt(2.0)).abs() < 1e-12);
        let narrow = crate::ruled::RulingExtent::new(0.0, 0.0).unwrap();
        assert!(f.surface(SurfaceKind::BetaGamma, narrow).unwrap().u_extent().is_empty());
        assert!(a.max_ruling_distance < 1e-8);
    }

    #[test]
    fn non_cone_apex_is_contract_error() {
        let f = catalog::legendre_frame(Example::Example3, 128, &tol()).unwrap();
        assert!(matches!(cone_apex(&f, SurfaceKind::BetaGamma, f.grid(), &tol()), Err(GeomError::Contract(_))));
    }

    fn jet() -> impl Strategy<Value = Jet> {
        let coord = prop_oneof![Just(0.0), Just(1e-7), -2.0f64..2.0];
        [coord.clone(), coord.clone(), coord]
    }

    proptest! {
        #[test]
        fn decision_table_is_exclusive_and_sound(p in jet(), q in jet(), cone in any::<bool>(), k in 0usize..6) {
            let kind = SurfaceKind::ALL[k];
            let form = GoverningFunction::of(kind).form;
            let one = [1.0, 0.0, 0.0];
            let (p, q) = match form {
                LocusForm::Reciprocal(_) => (one, q),
                LocusForm::Direct(_) => (p, one),
                LocusForm::Ratio(..) => (p, q),
            };
            let t = tol();
            match decide(form, 0.0, p, q, cone, &t) {
                Err(e) => {
                    let is_pole = matches!(e, GeomError::Pole { .. });
                    prop_assert!(matches!(form, LocusForm::Reciprocal(_)) && is_pole && q[0].abs() < t.pole);
                }
                Ok(d) => {
                    let g = (q[0] != 0.0).then(|| quotient(p, q));
                    match d.class {
                        SingularClass::Cone => prop_assert!(cone),
                        SingularClass::CuspidalEdge => {
                            prop_assert!(!cone && p[0].abs() > t.deriv);
                            let slope = if matches!(form, LocusForm::Reciprocal(_)) { q[1] } else { g.unwrap()[1] };
                            prop_assert!(slope.abs() > t.deriv);
                        }
                        SingularClass::Swallowtail => {
                            prop_assert!(!cone && p[0].abs() > t.deriv);
                            prop_assert!(g.unwrap()[2].abs() > t.deriv);
                        }
                        SingularClass::CuspidalCrosscap => {
                            prop_assert!(!matches!(form, LocusForm::Reciprocal(_)));
                            prop_assert!(p[0].abs() <= t.deriv && q[0].abs() > t.deriv);
                            prop_assert!(d.u0.unwrap().abs() <= t.deriv / q[0].abs());
                        }
                        SingularClass::Regular => prop_assert!(q[0].abs() < t.pole && p[0].abs() > t.deriv),
                        SingularClass::Degenerate => {}
                    }
                    if let Some(u) = d.u0 {
                        prop_assert!(u.is_finite());
                    }
                }
            }
        }
    }
}
