//! Error type shared across the crate.
//!
//! Errors fall into three groups that callers (in particular the CLI) treat
//! differently:
//!
//! * **validation** — the input graph or matching conditions are malformed
//!   (non-positive lengths, wrong dimensions, rank-deficient `(A|B)`,
//!   `AB† ≠ BA†`),
//! * **math contract** — the input is well formed but sits outside the
//!   domain of the requested representation (a zero mode at `k = 0`, a
//!   secular value with a non-negligible imaginary part, a divergent
//!   `ζ(−1/2)`, a root cluster whose order cannot be resolved, an
//!   evaluation point too close to a lattice pole),
//! * **numerical** — an algorithm failed to converge to tolerance.

use thiserror::Error;

/// Coarse classification used for process exit codes and error JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Validation,
    MathContract,
    Numerical,
}

impl ErrorCategory {
    /// Stable machine-readable name.
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCategory::Validation => "validation",
            ErrorCategory::MathContract => "math-contract",
            ErrorCategory::Numerical => "numerical",
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphZetaError {
    #[error("bond {bond} has non-positive length {value}")]
    InvalidLength { bond: usize, value: f64 },

    #[error("matching matrices must be {expected}×{expected}, got {rows}×{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("(A|B) has rank {rank}, needs full rank {needed}: conditions do not determine a unique operator")]
    RankDeficient { rank: usize, needed: usize },

    #[error("A·B† is not Hermitian (defect {defect:.3e} relative to scale): operator is not self-adjoint")]
    NotSelfAdjoint { defect: f64 },

    #[error("invalid vertex specification: {0}")]
    InvalidVertexSpec(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("secular function vanishes at k = 0 (zero mode); shift the spectrum or use conditions without a constant mode")]
    ZeroMode,

    #[error("secular value at t = {t} has imaginary part {imag:.3e} beyond tolerance; matching conditions do not yield a real secular function")]
    NonRealSecular { t: f64, imag: f64 },

    #[error("secular function changes sign on the positive imaginary axis near t = {t}: a negative eigenvalue is present and the representation does not apply")]
    NegativeEigenvalue { t: f64 },

    #[error("zeta function diverges at s = {s}: {reason}")]
    DivergentZeta { s: f64, reason: String },

    #[error("s = {s} outside the represented strip [{lo}, {hi})")]
    OutOfDomain { s: f64, lo: f64, hi: f64 },

    #[error("root order near k = {k} estimated at {estimate:.3} is not close to an integer; spectrum is non-generic at this cluster")]
    NonGenericRoot { k: f64, estimate: f64 },

    #[error("evaluation at k = {k} is within {distance:.3e} of the secular pole at {pole}; move the evaluation point")]
    PoleProximity { k: f64, pole: f64, distance: f64 },

    #[error("Hurwitz zeta has a pole at s = 1")]
    HurwitzPole,

    #[error("quadrature failed to reach tolerance: {0}")]
    QuadratureFailure(String),

    #[error("root refinement failed: {0}")]
    RootPolishFailure(String),
}

impl GraphZetaError {
    /// Which coarse group this error belongs to.
    pub fn category(&self) -> ErrorCategory {
        use GraphZetaError::*;
        match self {
            InvalidLength { .. }
            | DimensionMismatch { .. }
            | RankDeficient { .. }
            | NotSelfAdjoint { .. }
            | InvalidVertexSpec(_)
            | MalformedInput(_) => ErrorCategory::Validation,
            ZeroMode
            | NonRealSecular { .. }
            | NegativeEigenvalue { .. }
            | DivergentZeta { .. }
            | OutOfDomain { .. }
            | NonGenericRoot { .. }
            | PoleProximity { .. }
            | HurwitzPole => ErrorCategory::MathContract,
            QuadratureFailure(_) | RootPolishFailure(_) => ErrorCategory::Numerical,
        }
    }
}
