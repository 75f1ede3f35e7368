use std::f64::consts::PI;

use proptest::prelude::*;
use rmfgeom::catalog::{self, Example};
use rmfgeom::framing::{rm_check, rmf_propagate, OrthoFrame};
use rmfgeom::legendre::{legendre_from_rm_pair, rmf_from_legendre, LegendreFrame};
use rmfgeom::ruled::{RuledSurface, RulingExtent, SurfaceKind};
use rmfgeom::singular::{classify_point, cone_apex, scan_singularities, GoverningFunction, LocusForm, SingularClass};
use rmfgeom::geomcore::FnCurve;
use rmfgeom::{GeomError, Interval, SampledGrid, Tolerances, Vec3};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn frame(ex: Example) -> LegendreFrame {
    catalog::legendre_frame(ex, 512, &tol()).unwrap()
}

/// Argmin of |normal| over a 1e-3 sweep of the extent.
fn sweep_argmin(surface: &RuledSurface, s: f64, extent: RulingExtent) -> (f64, f64) {
    let steps = ((extent.hi - extent.lo) / 1e-3).round() as usize;
    (0..=steps)
        .map(|k| {
            let u = extent.lo + k as f64 * 1e-3;
            (u, surface.normal_magnitude(s, u).unwrap())
        })
        .fold((f64::NAN, f64::INFINITY), |best, x| if x.1 < best.1 { x } else { best })
}

#[test]
fn locus_matches_brute_force_sweep() {
    let extent = catalog::DEFAULT_U_EXTENT;
    for ex in [Example::Example1, Example::Example2, Example::Example3, Example::Helix] {
        let f = frame(ex);
        for kind in SurfaceKind::ALL {
            let surface = f.surface(kind, extent).unwrap();
            let gov = GoverningFunction::of(kind);
            let grid = SampledGrid::uniform(f.grid().domain(), 48).unwrap();
            let mut checked = 0;
            for &s in grid.nodes() {
                let Some(u) = gov.locus(f.m_at(s), f.n_at(s), &tol()) else { continue };
                // Rulings whose normal does not depend on u have no isolated locus.
                let (_, b) = surface.ruling_normal(s).unwrap();
                if !extent.contains(u) || b.norm() < 1e-6 {
                    continue;
                }
                let (u_star, _) = sweep_argmin(&surface, s, extent);
                assert!((u_star - u).abs() < 2e-3, "{ex:?} {kind} s={s}: sweep {u_star}, locus {u}");
                checked += 1;
            }
            if matches!(ex, Example::Example3) {
                assert!(checked > 0, "{kind}");
            }
        }
    }
}

#[test]
fn cone_certificates() {
    let cases = [
        (Example::Example1, SurfaceKind::VGamma),
        (Example::Example1, SurfaceKind::GammaV),
        (Example::Example1, SurfaceKind::BetaGamma),
        (Example::Example1, SurfaceKind::GammaBeta),
        (Example::Example2, SurfaceKind::GammaV),
        (Example::Example2, SurfaceKind::VBeta),
    ];
    for (ex, kind) in cases {
        let f = frame(ex);
        let p = classify_point(&f, kind, 1.0, &tol()).unwrap();
        assert_eq!(p.class, SingularClass::Cone, "{ex:?} {kind}");
        let a = cone_apex(&f, kind, f.grid(), &tol()).unwrap();
        assert!(a.max_ruling_distance < 1e-8, "{ex:?} {kind}: {}", a.max_ruling_distance);
    }
}

#[test]
fn all_kinds_of_the_helix_pair_are_cones() {
    let f = frame(Example::Example2);
    for kind in SurfaceKind::ALL {
        let r = scan_singularities(&f, kind, f.grid(), catalog::DEFAULT_U_EXTENT, &tol()).unwrap();
        assert_eq!(r.events.len(), 1);
        assert_eq!(r.events[0].class, SingularClass::Cone, "{kind}");
    }
}

#[test]
fn reported_points_are_singular() {
    for ex in [Example::Example1, Example::Example3, Example::Helix] {
        let f = frame(ex);
        for kind in SurfaceKind::ALL {
            let surface = f.surface(kind, catalog::DEFAULT_U_EXTENT).unwrap();
            let r = scan_singularities(&f, kind, f.grid(), catalog::DEFAULT_U_EXTENT, &tol()).unwrap();
            let named = r.events.iter().chain(r.edge_arcs.iter().map(|a| &a.representative));
            for p in named.filter(|p| p.class != SingularClass::Degenerate && p.class != SingularClass::Regular) {
                let u0 = p.u0.unwrap();
                assert!(surface.normal_magnitude(p.s0, u0).unwrap() < tol().sing, "{ex:?} {kind} {p:?}");
            }
        }
    }
}

#[test]
fn constant_frame_has_no_events_for_base_beta_kinds() {
    let d = Interval::new(0.0, 2.0).unwrap();
    let g = FnCurve::new(d, |_| Vec3::X).with_derivative(1, |_| Vec3::ZERO).into_ref();
    let v = FnCurve::new(d, |_| Vec3::Y).with_derivative(1, |_| Vec3::ZERO).into_ref();
    let f = catalog::frame_from_pair(g, v, d, 128, &tol()).unwrap();
    for kind in [SurfaceKind::BetaGamma, SurfaceKind::BetaV] {
        let r = scan_singularities(&f, kind, f.grid(), catalog::DEFAULT_U_EXTENT, &tol()).unwrap();
        assert!(r.events.is_empty() && r.edge_arcs.is_empty(), "{kind}");
        assert_eq!(r.poles.len(), 1);
        assert_eq!((r.poles[0].lo, r.poles[0].hi), (0.0, 2.0));
    }
    let locus = rmfgeom::singular::singular_locus(&f, SurfaceKind::GammaBeta, f.grid(), &tol());
    assert!(locus.iter().all(|l| l.u == Some(-0.0) || l.u == Some(0.0)));
}

#[test]
fn scans_are_deterministic() {
    let f = frame(Example::Example3);
    for kind in SurfaceKind::ALL {
        let a = scan_singularities(&f, kind, f.grid(), catalog::DEFAULT_U_EXTENT, &tol()).unwrap();
        let b = scan_singularities(&f, kind, f.grid(), catalog::DEFAULT_U_EXTENT, &tol()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn swap_invariance_on_example3() {
    let f = frame(Example::Example3);
    let (g, v) = (f.curve().gamma().clone(), f.curve().v().clone());
    let swapped = catalog::frame_from_pair(v, g, f.grid().domain(), 512, &tol()).unwrap();
    for kind in SurfaceKind::ALL {
        for &s0 in &[0.3, 0.9, PI / 2.0, 2.2, PI] {
            let a = classify_point(&f, kind, s0, &tol());
            let b = classify_point(&swapped, kind.swapped(), s0, &tol());
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    assert_eq!(a.class, b.class, "{kind} s0={s0}");
                    // β changes sign with η, so u₀ does for every kind using β.
                    let flip = if matches!(kind, SurfaceKind::GammaV | SurfaceKind::VGamma) { 1.0 } else { -1.0 };
                    match (a.u0, b.u0.map(|u| flip * u)) {
                        (Some(x), Some(y)) => assert!((x - y).abs() < 1e-9 * (1.0 + x.abs()), "{kind} s0={s0}: {x} {y}"),
                        (x, y) => assert_eq!(x, y),
                    }
                    if let (Some(x), Some(y)) = (a.location, b.location) {
                        let reflected = matches!(kind, SurfaceKind::BetaGamma | SurfaceKind::BetaV);
                        let y = if reflected { -y } else { y };
                        assert!(x.distance(y) < 1e-8, "{kind} s0={s0}: {x:?} {y:?}");
                    }
                }
                (Err(GeomError::Pole { .. }), Err(GeomError::Pole { .. })) => {}
                other => panic!("{kind} s0={s0}: {other:?}"),
            }
        }
    }
}

fn curvature_frame(a: [f64; 3], b: [f64; 3]) -> LegendreFrame {
    let d = Interval::new(0.0, 3.0).unwrap();
    let m = move |s: f64| a[0] + a[1] * (a[2] * s).sin();
    let n = move |s: f64| b[0] + b[1] * (b[2] * s).cos();
    let (g, v) = catalog::pair_from_curvatures(m, n, d, Vec3::X, Vec3::Z, 4097).unwrap();
    catalog::frame_from_pair(g, v, d, 256, &tol()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn translation_invariance(shift in -5.0f64..5.0, s0 in 0.05f64..3.0) {
        let f = frame(Example::Example3);
        let (g, v) = (f.curve().gamma().clone(), f.curve().v().clone());
        let d = f.grid().domain();
        let moved = catalog::frame_from_pair(
            catalog::shifted(g, shift),
            catalog::shifted(v, shift),
            Interval::new(d.lo() + shift, d.hi() + shift).unwrap(),
            512,
            &tol(),
        )
        .unwrap();
        for kind in SurfaceKind::ALL {
            let a = classify_point(&f, kind, s0, &tol());
            let b = classify_point(&moved, kind, s0 + shift, &tol());
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(a.class, b.class);
                    if let (Some(x), Some(y)) = (a.location, b.location) {
                        prop_assert!(x.distance(y) < 1e-8 * (1.0 + x.norm()));
                    }
                }
                (Err(_), Err(_)) => {}
                other => prop_assert!(false, "{kind}: {other:?}"),
            }
        }
    }

    #[test]
    fn exactly_one_class_for_random_curvatures(
        a in prop::array::uniform3(-1.5f64..1.5),
        b in prop::array::uniform3(-1.5f64..1.5),
        s0 in 0.0f64..3.0,
    ) {
        let f = curvature_frame(a, b);
        for kind in SurfaceKind::ALL {
            let gov = GoverningFunction::of(kind);
            match classify_point(&f, kind, s0, &tol()) {
                Ok(p) => {
                    prop_assert_eq!(SingularClass::ALL.iter().filter(|&&c| c == p.class).count(), 1);
                    let (pv, qv) = gov.pq(p.diagnostics.m[0], p.diagnostics.n[0]);
                    if p.class == SingularClass::CuspidalCrosscap {
                        prop_assert!(!matches!(gov.form, LocusForm::Reciprocal(_)));
                        prop_assert!(pv.abs() <= tol().deriv && qv.abs() > tol().deriv);
                    }
                    if pv.abs() <= tol().deriv && qv.abs() <= tol().deriv {
                        prop_assert_eq!(p.class, SingularClass::Degenerate);
                    }
                }
                Err(GeomError::Pole { .. }) => prop_assert!(matches!(gov.form, LocusForm::Reciprocal(_))),
                Err(e) => prop_assert!(false, "{kind}: {e}"),
            }
        }
    }

    #[test]
    fn normal_magnitude_law(a in prop::array::uniform3(-1.5f64..1.5), s in 0.0f64..3.0, u in -3.0f64..3.0) {
        let f = curvature_frame(a, [0.4, 0.3, 1.0]);
        let bg = f.surface(SurfaceKind::BetaGamma, catalog::DEFAULT_U_EXTENT).unwrap();
        let bv = f.surface(SurfaceKind::BetaV, catalog::DEFAULT_U_EXTENT).unwrap();
        let (m, n) = (f.m_at(s), f.n_at(s));
        prop_assert!((bg.normal_vector(s, u).unwrap().norm() - (1.0 + u * m).abs()).abs() < 1e-6);
        prop_assert!((bv.normal_vector(s, u).unwrap().norm() - (1.0 + u * n).abs()).abs() < 1e-6);
    }

    #[test]
    fn all_kinds_developable(a in prop::array::uniform3(-1.5f64..1.5), b in prop::array::uniform3(-1.5f64..1.5)) {
        let f = curvature_frame(a, b);
        for kind in SurfaceKind::ALL {
            let d = f.surface(kind, catalog::DEFAULT_U_EXTENT).unwrap().developability_defect(f.grid()).unwrap();
            prop_assert!(d.max < 1e-8, "{kind}: {}", d.max);
        }
    }

    #[test]
    fn striction_is_base_when_derivatives_orthogonal(w in 0.3f64..3.0, c in -2.0f64..2.0) {
        let d = Interval::new(0.0, 2.0).unwrap();
        let base = FnCurve::new(d, move |s| Vec3::new(0.0, 0.0, c * s)).into_ref();
        let dir = FnCurve::new(d, move |s| Vec3::new((w * s).cos(), (w * s).sin(), 0.0)).into_ref();
        let surface = RuledSurface::new(base.clone(), dir, catalog::DEFAULT_U_EXTENT).unwrap();
        let grid = SampledGrid::uniform(d, 32).unwrap();
        let st = surface.striction_curve(&grid, &tol()).unwrap();
        for (i, &s) in grid.nodes().iter().enumerate() {
            prop_assert!(st[i].distance(base.point(s)) < 1e-8);
        }
    }

    #[test]
    fn rmf_rotation_equivariance(phi in -PI..PI) {
        let helix = catalog::helix();
        let grid = SampledGrid::uniform(helix.domain(), 512).unwrap();
        let (t, n, _) = catalog::helix_frenet(0.0);
        let base = OrthoFrame::from_tangent_normal(t, n);
        let a = rmf_propagate(&*helix, base, &grid, &tol()).unwrap();
        let b = rmf_propagate(&*helix, base.rotated(phi), &grid, &tol()).unwrap();
        for i in 0..grid.len() {
            let r = a.frame(i).rotated(phi);
            prop_assert!(r.n1.distance(b.n1[i]) < 1e-6 && r.n2.distance(b.n2[i]) < 1e-6);
        }
    }
}

#[test]
fn rm_pair_round_trip() {
    let helix = catalog::helix();
    let grid = SampledGrid::uniform(helix.domain(), 512).unwrap();
    let (t, n, _) = catalog::helix_frenet(0.0);
    for phi in [0.0, 0.7, -2.0] {
        let rmf = rmf_propagate(&*helix, OrthoFrame::from_tangent_normal(t, n).rotated(phi), &grid, &tol()).unwrap();
        let curve = legendre_from_rm_pair(&rmf, &tol()).unwrap();
        assert!(curve.is_legendre(&tol()).passed);
        let f = rmf_from_legendre(curve, 0.0, Vec3::ZERO, 2044, &tol()).unwrap();
        let r = f.residuals();
        assert!(r.gamma < 1e-5 && r.v < 1e-5, "{r:?}");
        let beta = f.beta();
        let (g, v) = (f.curve().gamma().clone(), f.curve().v().clone());
        assert!(rm_check(&*beta, &|s| g.point(s), &grid, &tol()).unwrap().passed);
        assert!(rm_check(&*beta, &|s| v.point(s), &grid, &tol()).unwrap().passed);
    }
}
