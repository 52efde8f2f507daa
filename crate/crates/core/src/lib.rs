//! Exact LU factorization and determinant of the Cauchy-like matrix
//! `M(s, t)[i][l] = 1 / ((2l)^2 - t^2 (2i-1)^2)`.
//!
//! Everything is computed without rounding, over [`Rational`] for numeric `t`
//! or over [`RationalFunction`] for symbolic `t`:
//!
//! - [`matrix`]: construction of `M`, Doolittle LU, and two independent
//!   determinant routes (cofactor expansion, Bareiss elimination);
//! - [`closed_form`]: explicit `L[i][j]`, `U[j][l]`, the Pochhammer product
//!   identities, `det M = prod U[j][j]` and the `t = 1` expressions;
//! - [`verify`]: suites that check each identity over index ranges.
//!
//! With the default `parallel` feature the suites and matrix products run on
//! rayon; without it the same code runs sequentially.
//!
//! ```
//! use cauchy_lu::{closed_form, matrix, Rational};
//!
//! let one = Rational::one();
//! let m = matrix::build_matrix(3, &one).unwrap();
//! let d = matrix::det_elimination(&m).unwrap();
//! assert_eq!(d, closed_form::det_closed(3, &one).unwrap());
//! assert_eq!(d.to_string(), "524288/68762925");
//! ```

pub mod arith;
pub mod closed_form;
pub mod error;
pub mod matrix;
pub mod par;
pub mod verify;

pub use arith::{Field, Polynomial, Rational, RationalFunction};
pub use closed_form::{ChainValues, Fault, Formulas};
pub use error::{ArithError, Error, ParseError};
pub use matrix::{ExactMatrix, LuFactors};
pub use verify::{VerificationReport, VerifyConfig};
