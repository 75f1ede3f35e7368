/// Shared tolerance record. The CLI echoes it into every report so that tests
/// and command-line runs agree on thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    /// Unit-speed and unit-director checks.
    pub unit: f64,
    /// Rotation-minimizing defect.
    pub rm: f64,
    /// Curvature considered zero.
    pub kappa: f64,
    /// `| |γ| - 1 |` and `| |v| - 1 |`.
    pub sphere: f64,
    /// `|<γ, v>|`.
    pub ortho: f64,
    /// `max |l|`.
    pub legendre: f64,
    /// Residuals of `γ' = mη`, `v' = nη`.
    pub eq6: f64,
    /// Developability determinant.
    pub dev: f64,
    /// Surface normal magnitude treated as singular.
    pub sing: f64,
    /// Zero tests on governing functions and their derivatives.
    pub deriv: f64,
    /// Relative variation below which a governing function is constant.
    pub constant: f64,
    /// Denominator magnitude flagged as a pole.
    pub pole: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unit: 1e-6,
            rm: 1e-5,
            kappa: 1e-8,
            sphere: 1e-8,
            ortho: 1e-8,
            legendre: 1e-6,
            eq6: 1e-5,
            dev: 1e-8,
            sing: 1e-7,
            deriv: 1e-6,
            constant: 1e-9,
            pole: 1e-8,
        }
    }
}
