//! Orthogonal-polynomial machinery for Penner-type random matrix models.
//!
//! The crate computes partition functions and recurrence coefficients for
//! matrix models with potentials of the form `W(z) = W0(z) - sum_i mu_i log(z - q_i)`,
//! both exactly (moment determinants in rational arithmetic, closed forms in
//! terms of the Gamma and Barnes G functions) and perturbatively in the
//! continuum limit `n, N -> oo` with `x = n/N` fixed (one-cut and symmetric
//! two-cut regimes).
//!
//! Module layout:
//!
//! * [`numerics`] — scalar backends (exact rationals, arbitrary-precision
//!   floats), Gamma/Barnes-G evaluation, Bernoulli numbers, `zeta'(-1)`.
//! * [`series`] — truncated power series, log-augmented series and Laurent
//!   tails over either backend.
//! * [`model`] — potential description, presets, config file parsing.
//! * [`oracle`] — ground truth from moments: quadrature, Hankel/Chebyshev
//!   recurrences, resolvent evaluation, string/resolvent identity residuals.
//! * [`solvable`] — closed forms for the gaussian, linear Penner, symmetric
//!   gaussian Penner and double Penner models.
//! * [`walgebra`] — formal algebra of resolvent expansions over the kernel
//!   `w(z) = ((z - c)^2 - d)^{-1/2}`, shared by the continuum-limit engines.
//! * [`onecut`] — planar solve, perturbative recursion and genus expansion of
//!   the free energy in the one-cut regime.
//! * [`twocut`] — two-branch expansions for Z2-symmetric models in the
//!   two-cut regime.

pub mod error;
pub mod field;
pub mod model;
pub mod numerics;
pub mod onecut;
pub mod oracle;
pub mod series;
pub mod solvable;
pub mod twocut;
pub mod walgebra;

pub use error::{Error, Result};
pub use field::Field;
pub use numerics::{BigFloat, Complex, Rat};
