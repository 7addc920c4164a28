use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures reported by the analysis routines.
///
/// Variants split into two families: hypothesis failures (the requested
/// computation does not apply to the given parameters) and numerical failures
/// (it applies but did not converge). [`Error::is_numerical`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{theorem} requires {requirement}")]
    HypothesisViolation {
        theorem: &'static str,
        requirement: &'static str,
    },

    #[error("dilatation has a pole: analytic derivative vanishes at {re} + {im}i")]
    PoleAtCriticalPoint { re: f64, im: f64 },

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("x = 1 is not a root (p(1) = {0:e})")]
    NotARootAtOne(f64),

    #[error("polynomial does not have exactly one positive sign change")]
    NoSignChange,

    #[error("iteration did not converge after {0} steps")]
    NonConvergence(usize),

    #[error("q vanishes on the contour (|q| = {min_modulus:e})")]
    ZeroOnContour { min_modulus: f64 },

    #[error("contour refinement exceeded {0} samples")]
    SampleCapExceeded(usize),

    #[error("argument change {0} is not close to an integer multiple of 2π")]
    NonIntegerWinding(f64),

    #[error("Jacobian is degenerate at {re} + {im}i")]
    DegenerateJacobian { re: f64, im: f64 },

    #[error("Theorem 3.1 requires k > n (no fallback disk when k = n and |b| = 1)")]
    BoundUnavailable,

    #[error("Theorem 3.4 requires b ≠ ±1")]
    BEqualsOne,

    #[error("local univalence radius requires b ≠ 0")]
    BZero,

    #[error("Theorem 3.4 requires (c² − 1)/(b² − 1) > 0")]
    NoCriticalCircle,
}

impl Error {
    /// True for convergence / sampling failures, false for hypothesis or
    /// parameter errors.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence(_)
                | Error::ZeroOnContour { .. }
                | Error::SampleCapExceeded(_)
                | Error::NonIntegerWinding(_)
                | Error::DegenerateJacobian { .. }
        )
    }
}
