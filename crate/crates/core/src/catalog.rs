//! Built-in curves: the circular helix and three closed-form Legendre
//! curves on UT S², each available corrected or exactly as first written.
//!
//! All closed forms are trigonometric polynomials, so derivatives of every
//! order are analytic.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::error::{GeomError, Result};
use crate::framing::{rmf_propagate, OrthoFrame};
use crate::geomcore::{CurveRef, HermiteCurve, Interval, ParamCurve, SampledGrid, Vec3};
use crate::legendre::{legendre_from_rm_pair, rmf_from_legendre, LegendreCurve, LegendreFrame};
use crate::math::{cos, powi, sqrt};
use crate::ruled::RulingExtent;
use crate::Tolerances;

/// Default ruling extent `u ∈ [-3, 3]`.
pub const DEFAULT_U_EXTENT: RulingExtent = RulingExtent { lo: -3.0, hi: 3.0 };

/// Nodes used to sample the helix RMF for [`Example::Helix`].
pub const HELIX_RMF_NODES: usize = 4097;

/// A term `a·cos(ω s + φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub amp: f64,
    pub freq: f64,
    pub phase: f64,
}

impl Wave {
    pub const fn cos(amp: f64, freq: f64) -> Self {
        Wave { amp, freq, phase: 0.0 }
    }

    pub const fn sin(amp: f64, freq: f64) -> Self {
        Wave { amp, freq, phase: -PI / 2.0 }
    }

    fn eval(&self, s: f64, order: usize) -> f64 {
        if order > 0 && self.freq == 0.0 {
            return 0.0;
        }
        self.amp * powi(self.freq, order as i32) * cos(self.freq * s + self.phase + order as f64 * PI / 2.0)
    }
}

/// One coordinate: `c + k s + Σ waves`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPoly {
    pub constant: f64,
    pub linear: f64,
    pub waves: Vec<Wave>,
}

impl TrigPoly {
    pub fn new(constant: f64, linear: f64, waves: Vec<Wave>) -> Self {
        TrigPoly { constant, linear, waves }
    }

    pub fn constant(c: f64) -> Self {
        TrigPoly { constant: c, ..Default::default() }
    }

    pub fn waves(waves: Vec<Wave>) -> Self {
        TrigPoly { waves, ..Default::default() }
    }

    fn eval(&self, s: f64, order: usize) -> f64 {
        let base = match order {
            0 => self.constant + self.linear * s,
            1 => self.linear,
            _ => 0.0,
        };
        base + self.waves.iter().map(|w| w.eval(s, order)).sum::<f64>()
    }
}

/// Space curve with trigonometric-polynomial coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCurve {
    domain: Interval,
    coords: [TrigPoly; 3],
    arc_length: bool,
}

impl TrigCurve {
    pub fn new(domain: Interval, coords: [TrigPoly; 3]) -> Self {
        TrigCurve { domain, coords, arc_length: false }
    }

    pub fn arc_length(mut self, flag: bool) -> Self {
        self.arc_length = flag;
        self
    }

    pub fn into_ref(self) -> CurveRef {
        Arc::new(self)
    }

    fn eval(&self, s: f64, order: usize) -> Vec3 {
        let [x, y, z] = &self.coords;
        Vec3::new(x.eval(s, order), y.eval(s, order), z.eval(s, order))
    }
}

impl ParamCurve for TrigCurve {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn point(&self, s: f64) -> Vec3 {
        self.eval(s, 0)
    }

    fn analytic_derivative(&self, s: f64, order: usize) -> Option<Vec3> {
        Some(self.eval(s, order))
    }

    fn is_arc_length(&self) -> bool {
        self.arc_length
    }
}

/// A curve reparametrized by `s ↦ s - shift` on the shifted domain.
#[derive(Debug)]
struct Shifted {
    inner: CurveRef,
    shift: f64,
    domain: Interval,
}

impl ParamCurve for Shifted {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn point(&self, s: f64) -> Vec3 {
        self.inner.point(s - self.shift)
    }

    fn analytic_derivative(&self, s: f64, order: usize) -> Option<Vec3> {
        self.inner.analytic_derivative(s - self.shift, order)
    }

    fn is_arc_length(&self) -> bool {
        self.inner.is_arc_length()
    }
}

/// `c(s - shift)` on `[lo + shift, hi + shift]`.
pub fn shifted(c: CurveRef, shift: f64) -> CurveRef {
    let d = c.domain();
    let domain = Interval::new(d.lo() + shift, d.hi() + shift).expect("shifted domain of a valid interval");
    Arc::new(Shifted { inner: c, shift, domain })
}

fn helix_domain() -> Interval {
    Interval::new(0.0, 2.0 * PI * SQRT_2).expect("valid domain")
}

/// Unit-speed helix `(cos(s/√2), sin(s/√2), s/√2)` over one turn,
/// with `κ = τ = 1/2`.
pub fn helix() -> CurveRef {
    let w = FRAC_1_SQRT_2;
    TrigCurve::new(
        helix_domain(),
        [
            TrigPoly::waves(vec![Wave::cos(1.0, w)]),
            TrigPoly::waves(vec![Wave::sin(1.0, w)]),
            TrigPoly::new(0.0, w, vec![]),
        ],
    )
    .arc_length(true)
    .into_ref()
}

/// Closed-form Frenet frame `(T, N, B)` of [`helix`].
pub fn helix_frenet(s: f64) -> (Vec3, Vec3, Vec3) {
    let r = FRAC_1_SQRT_2;
    let (c, sn) = (cos(s * r), crate::math::sin(s * r));
    (Vec3::new(-sn * r, c * r, r), Vec3::new(-c, -sn, 0.0), Vec3::new(sn * r, -c * r, r))
}

/// Built-in examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Example {
    /// `γ = (1/√2)(-cos s, -sin s, 1)`, `v = (1/√2)(cos s, sin s, 1)`.
    Example1,
    /// `Γ = (B, T)` of the helix.
    Example2,
    /// `γ = ¼(3cos s - cos 3s, 3sin s - sin 3s, 2√3 cos s)` with `v = η × γ`.
    Example3,
    /// `Γ = (N₁, N₂)` of the helix RMF started from the Frenet frame.
    Helix,
}

/// Which formulas to use for the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// Pair that lies on UT S².
    #[default]
    Corrected,
    /// Literal first-draft formulas; these fail validation.
    AsPrinted,
}

impl Example {
    pub const ALL: [Example; 4] = [Example::Example1, Example::Example2, Example::Example3, Example::Helix];

    pub fn name(self) -> &'static str {
        match self {
            Example::Example1 => "example1",
            Example::Example2 => "example2",
            Example::Example3 => "example3",
            Example::Helix => "helix",
        }
    }

    pub fn from_name(name: &str) -> Option<Example> {
        Example::ALL.into_iter().find(|e| e.name() == name)
    }

    pub fn default_domain(self) -> Interval {
        match self {
            Example::Example1 => Interval::new(0.0, 2.0 * PI),
            Example::Example2 | Example::Helix => Ok(helix_domain()),
            Example::Example3 => Interval::new(0.0, PI),
        }
        .expect("valid domain")
    }
}

fn example1(domain: Interval, variant: Variant) -> (CurveRef, CurveRef) {
    let r = FRAC_1_SQRT_2;
    let gamma = TrigCurve::new(
        domain,
        [TrigPoly::waves(vec![Wave::cos(-r, 1.0)]), TrigPoly::waves(vec![Wave::sin(-r, 1.0)]), TrigPoly::constant(r)],
    );
    let vz = match variant {
        Variant::Corrected => r,
        Variant::AsPrinted => 0.0,
    };
    let v = TrigCurve::new(
        domain,
        [TrigPoly::waves(vec![Wave::cos(r, 1.0)]), TrigPoly::waves(vec![Wave::sin(r, 1.0)]), TrigPoly::constant(vz)],
    );
    (gamma.into_ref(), v.into_ref())
}

fn example2(domain: Interval, variant: Variant) -> (CurveRef, CurveRef) {
    let r = FRAC_1_SQRT_2;
    let by = match variant {
        Variant::Corrected => TrigPoly::waves(vec![Wave::cos(-r, r)]),
        Variant::AsPrinted => TrigPoly::waves(vec![Wave::cos(r, r)]),
    };
    let b = TrigCurve::new(domain, [TrigPoly::waves(vec![Wave::sin(r, r)]), by, TrigPoly::constant(r)]);
    let t = TrigCurve::new(
        domain,
        [TrigPoly::waves(vec![Wave::sin(-r, r)]), TrigPoly::waves(vec![Wave::cos(r, r)]), TrigPoly::constant(r)],
    );
    (b.into_ref(), t.into_ref())
}

fn example3(domain: Interval, variant: Variant) -> (CurveRef, CurveRef) {
    let r3 = sqrt(3.0);
    let gamma = TrigCurve::new(
        domain,
        [
            TrigPoly::waves(vec![Wave::cos(0.75, 1.0), Wave::cos(-0.25, 3.0)]),
            TrigPoly::waves(vec![Wave::sin(0.75, 1.0), Wave::sin(-0.25, 3.0)]),
            TrigPoly::waves(vec![Wave::cos(r3 / 2.0, 1.0)]),
        ],
    );
    let sign = match variant {
        Variant::Corrected => 1.0,
        Variant::AsPrinted => -1.0,
    };
    let v = TrigCurve::new(
        domain,
        [
            TrigPoly::waves(vec![Wave::sin(0.75, 1.0), Wave::sin(sign * 0.25, 3.0)]),
            TrigPoly::waves(vec![Wave::cos(-0.75, 1.0), Wave::cos(-0.25, 3.0)]),
            TrigPoly::waves(vec![Wave::sin(-r3 / 2.0, 1.0)]),
        ],
    );
    (gamma.into_ref(), v.into_ref())
}

/// The helix RMF sampled on [`HELIX_RMF_NODES`] nodes, started from the
/// Frenet frame at `s = lo`, as a Legendre curve `(N₁, N₂)`.
pub fn helix_rm_pair(domain: Interval, tol: &Tolerances) -> Result<LegendreCurve> {
    let full = helix();
    let curve: CurveRef = if domain == full.domain() {
        full
    } else {
        Arc::new(Restricted { inner: full, domain })
    };
    let grid = SampledGrid::uniform(domain, HELIX_RMF_NODES)?;
    let (t, n, _) = helix_frenet(domain.lo());
    let rmf = rmf_propagate(&*curve, OrthoFrame::from_tangent_normal(t, n), &grid, tol)?;
    legendre_from_rm_pair(&rmf, tol)
}

#[derive(Debug)]
struct Restricted {
    inner: CurveRef,
    domain: Interval,
}

impl ParamCurve for Restricted {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn point(&self, s: f64) -> Vec3 {
        self.inner.point(s)
    }

    fn analytic_derivative(&self, s: f64, order: usize) -> Option<Vec3> {
        self.inner.analytic_derivative(s, order)
    }

    fn is_arc_length(&self) -> bool {
        self.inner.is_arc_length()
    }
}

/// `(γ, v, domain)` of an example. `domain_hi` overrides the upper end of
/// the default domain.
pub fn legendre_pair(example: Example, variant: Variant, domain_hi: Option<f64>) -> Result<(CurveRef, CurveRef, Interval)> {
    let d = example.default_domain();
    let domain = match domain_hi {
        Some(hi) => Interval::new(d.lo(), hi)?,
        None => d,
    };
    let (g, v) = match example {
        Example::Example1 => example1(domain, variant),
        Example::Example2 => example2(domain, variant),
        Example::Example3 => example3(domain, variant),
        Example::Helix => {
            if variant == Variant::AsPrinted {
                return Err(GeomError::contract("the helix example has no printed variant"));
            }
            let c = helix_rm_pair(domain, &Tolerances::default())?;
            (c.gamma().clone(), c.v().clone())
        }
    };
    Ok((g, v, domain))
}

/// Corrected example on its default domain: validated on `nodes` uniform
/// nodes, with `β` integrated from `β(lo) = 0` using `4(nodes - 1)` steps.
pub fn legendre_frame(example: Example, nodes: usize, tol: &Tolerances) -> Result<LegendreFrame> {
    let (g, v, domain) = legendre_pair(example, Variant::Corrected, None)?;
    frame_from_pair(g, v, domain, nodes, tol)
}

/// Validate a pair on a uniform grid and integrate its `β`.
pub fn frame_from_pair(g: CurveRef, v: CurveRef, domain: Interval, nodes: usize, tol: &Tolerances) -> Result<LegendreFrame> {
    let grid = SampledGrid::uniform(domain, nodes)?;
    let curve = LegendreCurve::new(g, v, &grid, tol)?;
    rmf_from_legendre(curve, domain.lo(), Vec3::ZERO, 4 * (nodes - 1), tol)
}

/// Legendre pair with prescribed curvature functions `m`, `n`, obtained by
/// integrating `γ' = mη`, `v' = nη`, `η' = -mγ - nv` from `(γ₀, v₀)` with
/// RK4 (four substeps per sample) and interpolating the samples by cubic
/// Hermite curves with exact tangents.
pub fn pair_from_curvatures(
    m: impl Fn(f64) -> f64,
    n: impl Fn(f64) -> f64,
    domain: Interval,
    gamma0: Vec3,
    v0: Vec3,
    samples: usize,
) -> Result<(CurveRef, CurveRef)> {
    let grid = SampledGrid::uniform(domain, samples)?;
    let rhs = |s: f64, [g, v, e]: [Vec3; 3]| {
        let (ms, ns) = (m(s), n(s));
        [e * ms, e * ns, -(g * ms) - v * ns]
    };
    let add = |a: [Vec3; 3], b: [Vec3; 3], h: f64| [a[0] + b[0] * h, a[1] + b[1] * h, a[2] + b[2] * h];
    let mut state = [gamma0, v0, gamma0.cross(v0)];
    let nodes = grid.nodes().to_vec();
    let mut gs = Vec::with_capacity(samples);
    let mut vs = Vec::with_capacity(samples);
    let mut dgs = Vec::with_capacity(samples);
    let mut dvs = Vec::with_capacity(samples);
    for (i, &s) in nodes.iter().enumerate() {
        if i > 0 {
            const SUB: usize = 4;
            let h = (s - nodes[i - 1]) / SUB as f64;
            for k in 0..SUB {
                let t = nodes[i - 1] + h * k as f64;
                let k1 = rhs(t, state);
                let k2 = rhs(t + h / 2.0, add(state, k1, h / 2.0));
                let k3 = rhs(t + h / 2.0, add(state, k2, h / 2.0));
                let k4 = rhs(t + h, add(state, k3, h));
                for j in 0..3 {
                    state[j] += (k1[j] + k2[j] * 2.0 + k3[j] * 2.0 + k4[j]) * (h / 6.0);
                }
            }
            let g = state[0].normalized().ok_or(GeomError::NonFinite { s })?;
            let v = state[1].reject(g).normalized().ok_or(GeomError::NonFinite { s })?;
            state = [g, v, g.cross(v)];
        }
        let d = rhs(s, state);
        gs.push(state[0]);
        vs.push(state[1]);
        dgs.push(d[0]);
        dvs.push(d[1]);
    }
    let gamma = HermiteCurve::new(nodes.clone(), gs, dgs)?;
    let v = HermiteCurve::new(nodes, vs, dvs)?;
    Ok((Arc::new(gamma), Arc::new(v)))
}
