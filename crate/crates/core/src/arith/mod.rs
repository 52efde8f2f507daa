//! Exact scalars: rationals, polynomials and rational functions in `t`,
//! plus the combinatorial building blocks of the closed forms.

mod combinat;
mod field;
mod poly;
mod ratfun;
mod rational;

pub use combinat::{binomial, double_factorial, factorial, reciprocal_factorial, rising_factorial};
pub use field::Field;
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use rational::Rational;
