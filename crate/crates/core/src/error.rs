//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while building weights, recurrence tables,
/// spectral factors, or while integrating.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The adaptive integrator ran out of panels before reaching the
    /// requested tolerance. Loosen the tolerance or add breakpoints.
    #[error(
        "quadrature budget exceeded: {panels} panels, residual {residual:.3e} > tol {tol:.3e}"
    )]
    QuadratureBudget {
        panels: usize,
        residual: f64,
        tol: f64,
    },

    /// Richardson extrapolation of the excision radius did not stabilize.
    #[error("principal value did not stabilize: spread {spread:.3e} > tol {tol:.3e}")]
    PrincipalValueNonConvergence { spread: f64, tol: f64 },

    /// Trapezoid sampling on the circle kept disagreeing after doubling.
    #[error(
        "contour integral did not converge after {doublings} doublings (last delta {delta:.3e})"
    )]
    ContourNonConvergence { doublings: usize, delta: f64 },

    /// A weight that must be positive on [-1,1] is not.
    #[error("weight positivity violated: {0}")]
    PositivityViolation(String),

    /// Jacobi exponent at or below -1.
    #[error("jacobi exponent {0} is not integrable (must be > -1)")]
    NotIntegrable(f64),

    /// Tabulated weights need enough samples for barycentric interpolation.
    #[error("tabulated weight needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    /// The weight fails the Szego condition; log-integral quantities diverge.
    #[error("weight does not satisfy the szego condition (log w0 not integrable)")]
    SzegoDivergent,

    /// Stieltjes procedure produced a table whose orthonormality residual is
    /// above the certificate limit.
    #[error("orthonormality certificate failed: residual {residual:.3e} > limit {limit:.3e}")]
    LossOfOrthogonality { residual: f64, limit: f64 },

    /// Implicit-shift QL ran out of iterations.
    #[error("tridiagonal eigensolver did not converge")]
    EigenNonConvergence,

    /// Requested polynomial degree not covered by the recurrence table.
    #[error("degree {n} out of range (table holds degrees 0..={n_max})")]
    DegreeOutOfRange { n: usize, n_max: usize },

    /// The Laurent lift of S has a root within the guard band of the unit
    /// circle, i.e. S effectively vanishes somewhere on [-1,1].
    #[error("spectral factor root on the unit circle (|zeta| = {0})")]
    RootOnCircle(f64),

    /// Root classification of the Laurent lift did not split evenly.
    #[error("root pairing failed: {0}")]
    PairingFailure(String),

    /// Closed-form Bernstein machinery needs 2n > deg q.
    #[error("degree {n} at or below the closed-form threshold (need n > {threshold})")]
    DegreeBelowThreshold { n: usize, threshold: usize },

    /// Blaschke product evaluated at (or numerically on top of) a root of q.
    #[error("blaschke product evaluated at a root of q")]
    BlaschkePole,

    /// The contour-integral identity behind the exact F value failed.
    #[error("contour identity check failed: integral {0} differs from 1 beyond 1e-10")]
    ContourIdentity(f64),

    /// A density handed to mutual_entropy is not a unit measure.
    #[error("density mass {0} is off unity by more than 1e-6")]
    MassMismatch(f64),

    /// Truncation sets are only defined for M > sqrt(2).
    #[error("truncation level M = {0} must exceed sqrt(2)")]
    TruncationLevelTooSmall(f64),

    /// Malformed weight specification (bad JSON, bad field values).
    #[error("invalid weight spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
