use alloc::string::String;

use crate::legendre::ValidationReport;

pub type Result<T, E = GeomError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    /// A precondition of the called operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parameter {s} outside domain [{lo}, {hi}]")]
    Domain { s: f64, lo: f64, hi: f64 },

    #[error("non-finite value encountered at s = {s}")]
    NonFinite { s: f64 },

    /// Curvature (or the natural-curvature norm) vanishes at a grid node.
    #[error("degenerate curvature at node {node} (s = {s})")]
    DegenerateCurvature { node: usize, s: f64 },

    #[error("no finite singular point at s = {s}: governing function has a pole")]
    Pole { s: f64 },

    /// The striction curve needs a moving ruling direction.
    #[error("cylindrical ruling at node {node} (s = {s}): director derivative vanishes")]
    CylindricalRuling { node: usize, s: f64 },

    #[error("pair is not on UT S²: {0}")]
    NotOnBundle(ValidationReport),

    #[error("curve is not Legendre: max |l| = {max_l}")]
    NotLegendre { max_l: f64 },

    #[error("frame equations violated: max residual {residual} exceeds {tolerance}")]
    FrameResidual { residual: f64, tolerance: f64 },
}

impl GeomError {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        GeomError::Contract(msg.into())
    }

    /// True for errors caused by degenerate geometry rather than bad input data.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            GeomError::DegenerateCurvature { .. }
                | GeomError::Pole { .. }
                | GeomError::CylindricalRuling { .. }
                | GeomError::NonFinite { .. }
        )
    }

    /// True for validation failures (UT S², Legendre, frame equations).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            GeomError::NotOnBundle(_) | GeomError::NotLegendre { .. } | GeomError::FrameResidual { .. }
        )
    }
}
