//! Rational functions in `t` over the rationals, kept in a canonical form so
//! that equality is structural.

use std::fmt;
use std::str::FromStr;

use super::{Polynomial, Rational};
use crate::error::{ArithError, ParseError};

/// `num / den` with `gcd(num, den) = 1` and `den` a primitive integer
/// polynomial with positive leading coefficient. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Ok(Self::from_coprime(num, den))
        } else {
            Ok(Self::from_coprime(num.exact_div(&g), den.exact_div(&g)))
        }
    }

    /// Scales a coprime pair into canonical form.
    fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let c = den.integer_normalizer();
        if c.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction {
                num: num.scale(&c),
                den: den.scale(&c),
            }
        }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_polynomial(Polynomial::t())
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Re-derives the canonical form from scratch; a no-op on any value
    /// produced by this module.
    pub fn normalized(&self) -> Self {
        Self::new(self.num.clone(), self.den.clone()).expect("denominator is nonzero")
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        self.add_signed(rhs, false)
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_signed(rhs, true)
    }

    // a/b ± c/d with g = gcd(b, d): the only common factor the sum can share
    // with the denominator divides g.
    fn add_signed(&self, rhs: &Self, subtract: bool) -> Self {
        let c = if subtract { -&rhs.num } else { rhs.num.clone() };
        if self.is_zero() {
            return Self::from_coprime(c, rhs.den.clone());
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_polynomial(&self.num + &c);
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&c * &self.den);
            let den = &self.den * &rhs.den;
            return Self::from_coprime(num, den);
        }
        let b_red = self.den.exact_div(&g);
        let d_red = rhs.den.exact_div(&g);
        let num = &(&self.num * &d_red) + &(&c * &b_red);
        let den = &self.den * &d_red;
        let h = num.gcd(&g);
        if h.is_one() {
            Self::from_coprime(num, den)
        } else {
            Self::from_coprime(num.exact_div(&h), den.exact_div(&h))
        }
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.exact_div(&g1), rhs.den.exact_div(&g1))
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.exact_div(&g2), self.den.exact_div(&g2))
        };
        Self::from_coprime(&a * &c, &b * &d)
    }

    pub fn neg_ref(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul_ref(&rhs.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact value at `t0`; fails when the reduced denominator vanishes there.
    pub fn eval(&self, t0: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(ArithError::PoleAtPoint(t0.clone()));
        }
        self.num.eval(t0).checked_div(&d)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_polynomial(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RationalFunction {
    /// `(num)/(den)`; a polynomial (denominator 1) prints as the bare polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl FromStr for RationalFunction {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| ParseError::InvalidRationalFunction(s.to_string(), msg.to_string());
        let trimmed = s.trim();
        if !trimmed.starts_with('(') {
            return Ok(Self::from_polynomial(trimmed.parse()?));
        }
        let close = trimmed.find(')').ok_or_else(|| err("unbalanced parenthesis"))?;
        let num: Polynomial = trimmed[1..close].parse()?;
        let rest = trimmed[close + 1..].trim();
        if rest.is_empty() {
            return Ok(Self::from_polynomial(num));
        }
        let den_text = rest
            .strip_prefix('/')
            .map(str::trim)
            .and_then(|d| d.strip_prefix('('))
            .and_then(|d| d.strip_suffix(')'))
            .ok_or_else(|| err("expected \"/(denominator)\""))?;
        let den: Polynomial = den_text.parse()?;
        Self::new(num, den).map_err(|_| err("zero denominator"))
    }
}
