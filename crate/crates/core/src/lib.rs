//! Numerical machinery for the Shannon entropy of orthonormal polynomials
//! on [-1, 1]: weights and their trigonometric companions, recurrence
//! tables, Fejer-Riesz factorization for Bernstein weights, the entropy
//! functionals E_n / F_n / G_n, and Szego-asymptotic comparisons.
//!
//! The pipeline runs weight -> recurrence table -> functionals:
//!
//! ```
//! use orthent_core::entropy::entropy_en;
//! use orthent_core::orthopoly::recurrence_coefficients;
//! use orthent_core::weights::{build_weight, WeightSpec};
//!
//! // the Chebyshev weight has constant entropy log 2 - 1 for n >= 1
//! let weight = build_weight(WeightSpec::Chebyshev)?;
//! let table = recurrence_coefficients(&weight, 8)?;
//! let e5 = entropy_en(&weight, &table, 5, 1e-10, 4096)?.value;
//! assert!((e5 - (2f64.ln() - 1.0)).abs() < 1e-8);
//! # Ok::<(), orthent_core::Error>(())
//! ```
//!
//! Bernstein weights (w0 the reciprocal of a polynomial positive on the
//! interval) additionally carry exact machinery through their spectral
//! factor:
//!
//! ```
//! use orthent_core::bernstein::{exact_g, fejer_riesz};
//! use orthent_core::weights::{build_weight, WeightSpec};
//!
//! let weight = build_weight(WeightSpec::Bernstein { s: vec![5.0, -4.0] })?;
//! let factor = fejer_riesz(&[5.0, -4.0], weight.mass())?;
//! // G_n converges geometrically to -2 log q(0) = log(3/4)
//! let g12 = exact_g(&factor, 12)?;
//! assert!((g12 - 0.75f64.ln()).abs() < 1e-8);
//! # Ok::<(), orthent_core::Error>(())
//! ```

pub mod asymptotics;
pub mod bernstein;
pub mod entropy;
pub mod error;
pub mod orthopoly;
pub mod quadrature;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
