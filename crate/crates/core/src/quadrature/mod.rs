//! One-dimensional integration: fixed Gauss rules, adaptive composite
//! panels with breakpoints, Cauchy principal values, and trapezoid contour
//! integrals on circles.
//!
//! Everything here is a pure function of its inputs; rules and results are
//! immutable after construction and safe to share across threads.

mod adaptive;
mod contour;
mod gauss;
mod principal_value;

pub use adaptive::{integrate_adaptive, IntegralResult, DEFAULT_ABS_TOL, DEFAULT_MAX_PANELS};
pub use contour::contour_integral_circle;
pub use gauss::{gauss_chebyshev_rule, gauss_legendre_rule, Domain, QuadratureRule};
pub use principal_value::principal_value;
