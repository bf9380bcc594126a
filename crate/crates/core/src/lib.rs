//! Exact engine for framed disc and sphere multiple-cover invariants.
//!
//! Two independent routes compute the open invariants `C(g;h|d;n|a)`:
//! closed formulas in [`open`] and torus localization in [`localization`].
//! Both sit on top of exact rational series and ψ-class polynomials in
//! [`series`] and [`psi`], with Hodge-class bookkeeping in [`hodge`].
//! [`maslov`] handles the generalized Maslov index of totally real
//! boundary conditions together with the Riemann–Roch counts built on it.
//!
//! The algebraic layer is generic over the scalar (see [`Scalar`]); every
//! invariant is computed with [`Rational`] so nothing is ever rounded.

pub mod error;
pub mod hodge;
pub mod localization;
pub mod maslov;
pub mod open;
pub mod psi;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{int, rat, Scalar};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Laurent series with exact rational coefficients.
pub type Series = series::TruncatedSeries<Rational>;

/// Floating-point Laurent series, used mostly for quick numerical checks.
pub type Series64 = series::TruncatedSeries<f64>;

/// ψ-class polynomial with rational series coefficients.
pub type PsiPoly = psi::PsiPolynomial<Rational>;

/// Double-precision boundary loop for Maslov index computations.
pub type MatrixLoop64 = maslov::MatrixLoop<f64>;

/// Single-precision boundary loop.
pub type MatrixLoop32 = maslov::MatrixLoop<f32>;
