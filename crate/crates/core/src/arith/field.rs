use std::fmt::{Debug, Display};

use num_bigint::BigInt;

use super::{RationalFunction, Rational};
use crate::error::ArithError;

/// An exact field: the scalar type for matrices and closed forms.
///
/// [`Rational`] serves numeric `t`; [`RationalFunction`] serves symbolic `t`.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn recip(&self) -> Result<Self, ArithError>;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul_ref(&rhs.recip()?))
    }

    fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul_ref(self))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self, ArithError> {
        Rational::recip(self)
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Rational::checked_div(self, rhs)
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn from_rational(r: &Rational) -> Self {
        RationalFunction::constant(r.clone())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        RationalFunction::add_ref(self, rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        RationalFunction::sub_ref(self, rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        RationalFunction::mul_ref(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        RationalFunction::neg_ref(self)
    }
    fn recip(&self) -> Result<Self, ArithError> {
        RationalFunction::recip(self)
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        RationalFunction::checked_div(self, rhs)
    }
}
